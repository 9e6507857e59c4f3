//! Exact-arithmetic structure algebras of finite permutation groups.
//!
//! The crate builds the algebra `H = A ⊕ B` attached to a finite permutation
//! group (`A` spanned by conjugacy-class sums, `B` by conjugacy classes of
//! ordered involution pairs), verifies its defining tensor relations over the
//! rationals, evaluates Klein-TFT correlators on stratified surface types, and
//! cross-checks everything against brute-force enumeration of branched-cover
//! monodromy data.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. The crate is `no_std` (with `alloc`);
//! IO, text grammars and the CLI live in the companion `kleintft-cli` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod algebra;
pub mod correlator;
pub mod dihedral;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod perm;
pub mod semisimple;
pub mod surface;

pub use num_rational::BigRational;

/// Scalar type used throughout: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(n))
}

pub(crate) fn rat_usize(n: usize) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(n))
}
