//! The structure algebra `H = A ⊕ B` of a finite group: construction,
//! products, pairings, Casimir elements, the crosscap element, and the
//! verifier for the full tensor relation system.
//!
//! `A` is spanned by conjugacy-class sums `E_α` of the group algebra, `B` by
//! class sums `E_β` of matrix units indexed by conjugate ordered pairs of
//! involutions. The bilinear form comes from the trace form
//! `f(E_α) = δ_{α,1}/|G|`, `f(E_β) = tr(E_β)/|G|`. Eleven structure-constant
//! tensors determine everything; [`StructureAlgebra::verify_relations`]
//! checks the defining relation system exactly over the rationals.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::{format, vec, vec::Vec};
use core::fmt;
use num_traits::Zero;

use crate::dihedral::DihedralClassTable;
use crate::group::GroupTable;
use crate::linalg::Mat;
use crate::{rat_usize, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// The group table and dihedral table do not describe the same group.
    InconsistentTables(String),
    /// A pairing block is singular.
    SingularForm { part: Part },
    /// Operation requires a pure B element.
    NonzeroAComponent,
    /// Operation requires a pure A element.
    NonzeroBComponent,
    /// The constructed crosscap element violates one of its three defining
    /// properties.
    CrosscapInvalid { property: CrosscapProperty },
    /// Raw tensor dimensions disagree.
    DimensionMismatch(String),
    /// A pairing tensor is not symmetric.
    AsymmetricForm { part: Part },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::InconsistentTables(msg) => write!(f, "inconsistent tables: {msg}"),
            AlgebraError::SingularForm { part } => write!(f, "singular pairing on {part:?}"),
            AlgebraError::NonzeroAComponent => write!(f, "element has a nonzero A component"),
            AlgebraError::NonzeroBComponent => write!(f, "element has a nonzero B component"),
            AlgebraError::CrosscapInvalid { property } => {
                write!(f, "crosscap element fails: {property}")
            }
            AlgebraError::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            AlgebraError::AsymmetricForm { part } => write!(f, "pairing on {part:?} asymmetric"),
        }
    }
}

/// The two summands of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    A,
    B,
}

/// The three defining properties of a crosscap element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrosscapProperty {
    /// `U² = K_{A,*}`.
    SquaresToTwistedCasimir,
    /// `(U, b) = (K_{B,*}, b)` for every `b ∈ B`.
    PairsLikeTwistedBCasimir,
    /// `(aU)* = aU` for every `a ∈ A`.
    MultiplesStarInvariant,
}

impl fmt::Display for CrosscapProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrosscapProperty::SquaresToTwistedCasimir => {
                write!(f, "square differs from the twisted Casimir")
            }
            CrosscapProperty::PairsLikeTwistedBCasimir => {
                write!(f, "pairing with B differs from the twisted B Casimir")
            }
            CrosscapProperty::MultiplesStarInvariant => {
                write!(f, "some multiple is not star-invariant")
            }
        }
    }
}

/// Sparse element of `H = A ⊕ B`; no explicit zero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    a: BTreeMap<u32, Rat>,
    b: BTreeMap<u32, Rat>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis_a(idx: usize) -> Self {
        let mut e = Self::default();
        e.a.insert(idx as u32, crate::rat_int(1));
        e
    }

    pub fn basis_b(idx: usize) -> Self {
        let mut e = Self::default();
        e.b.insert(idx as u32, crate::rat_int(1));
        e
    }

    pub fn from_coeffs<I, J>(a: I, b: J) -> Self
    where
        I: IntoIterator<Item = (usize, Rat)>,
        J: IntoIterator<Item = (usize, Rat)>,
    {
        let mut e = Self::default();
        for (i, c) in a {
            e.add_a(i, c);
        }
        for (i, c) in b {
            e.add_b(i, c);
        }
        e
    }

    pub fn a_coeffs(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.a.iter().map(|(&i, c)| (i as usize, c))
    }

    pub fn b_coeffs(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.b.iter().map(|(&i, c)| (i as usize, c))
    }

    pub fn a_coeff(&self, idx: usize) -> Rat {
        self.a.get(&(idx as u32)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn b_coeff(&self, idx: usize) -> Rat {
        self.b.get(&(idx as u32)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    pub fn is_a_only(&self) -> bool {
        self.b.is_empty()
    }

    pub fn is_b_only(&self) -> bool {
        self.a.is_empty()
    }

    pub fn add_a(&mut self, idx: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.a.entry(idx as u32).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.a.remove(&(idx as u32));
        }
    }

    pub fn add_b(&mut self, idx: usize, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.b.entry(idx as u32).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.b.remove(&(idx as u32));
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (&i, c) in &other.a {
            out.add_a(i as usize, c.clone());
        }
        for (&i, c) in &other.b {
            out.add_b(i as usize, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> AlgebraElement {
        if k.is_zero() {
            return AlgebraElement::zero();
        }
        let mut out = AlgebraElement::default();
        for (&i, c) in &self.a {
            out.a.insert(i, c * k);
        }
        for (&i, c) in &self.b {
            out.b.insert(i, c * k);
        }
        out
    }

    fn b_dense(&self, dim: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (&i, c) in &self.b {
            v[i as usize] = c.clone();
        }
        v
    }
}

/// Dense symmetric 3-tensor on the A basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseT3 {
    dim: usize,
    data: Vec<Rat>,
}

impl DenseT3 {
    pub fn zeros(dim: usize) -> Self {
        DenseT3 { dim, data: vec![Rat::zero(); dim * dim * dim] }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rat) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }
}

/// Sparse 3-tensor keyed by index triples.
pub type SparseT3 = BTreeMap<(u32, u32, u32), Rat>;

pub fn t3_get(t: &SparseT3, i: usize, j: usize, k: usize) -> Rat {
    t.get(&(i as u32, j as u32, k as u32)).cloned().unwrap_or_else(Rat::zero)
}

pub fn t3_set(t: &mut SparseT3, i: usize, j: usize, k: usize, v: Rat) {
    if !v.is_zero() {
        t.insert((i as u32, j as u32, k as u32), v);
    }
}

/// The eleven structure-constant tensors of an algebra `H = A ⊕ B` in fixed
/// bases, before any derived data is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTensors {
    pub dim_a: usize,
    pub dim_b: usize,
    /// `F_{α₁,α₂} = (α₁, α₂)`
    pub f_a: Mat,
    /// `F_{β₁,β₂} = (β₁, β₂)`
    pub f_b: Mat,
    /// `R_{α,β} = (α, β)`
    pub r: Mat,
    /// `S_{α₁,α₂,α₃} = (α₁α₂, α₃)`
    pub s: DenseT3,
    /// `T_{β₁,β₂,β₃} = (β₁β₂, β₃)`
    pub t: SparseT3,
    /// `R_{α,β₁,β₂} = (αβ₁, β₂)`
    pub r3: SparseT3,
    /// `I_{α₁,α₂} = (α₁*, α₂)`
    pub i_a: Mat,
    /// `I_{β₁,β₂} = (β₁*, β₂)`
    pub i_b: Mat,
    /// `D_α = (U, α)`
    pub d: Vec<Rat>,
    /// `J_α = (1_A, α)`
    pub j_a: Vec<Rat>,
    /// `J_β = (1_B, β)`
    pub j_b: Vec<Rat>,
}

/// A structure algebra with all derived operator data precomputed.
///
/// Immutable after construction; all operations take `&self`.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    raw: RawTensors,
    f_a_inv: Mat,
    f_b_inv: Mat,
    /// Star operator on A as a matrix: column α holds the coefficients of α*.
    star_a_mat: Mat,
    star_b_mat: Mat,
    /// Star as a basis permutation, when it is one.
    star_a_perm: Option<Vec<usize>>,
    star_b_perm: Option<Vec<usize>>,
    /// `S` with the last index raised: coefficients of `α₁α₂`.
    s_up: DenseT3,
    /// Product map on B: `(β₁,β₂) ↦` coefficients of `β₁β₂`.
    prod_b: BTreeMap<(u32, u32), Vec<(u32, Rat)>>,
    /// Mixed product map: `(α,β) ↦` coefficients of `αβ = βα`.
    prod_ab: BTreeMap<(u32, u32), Vec<(u32, Rat)>>,
    /// Casimir conjugation operator on B as a matrix.
    v_kb: Mat,
    unit_a: AlgebraElement,
    unit_b: AlgebraElement,
    /// Coefficients of the crosscap element `U` (the raised `D` tensor).
    d_up: Vec<Rat>,
    /// Whether the stored crosscap element satisfies its three axioms.
    crosscap_valid: bool,
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw
    }
}

impl StructureAlgebra {
    pub fn dim_a(&self) -> usize {
        self.raw.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.raw.dim_b
    }

    pub fn raw(&self) -> &RawTensors {
        &self.raw
    }

    pub fn f_a_inv(&self) -> &Mat {
        &self.f_a_inv
    }

    pub fn f_b_inv(&self) -> &Mat {
        &self.f_b_inv
    }

    pub fn star_a_perm(&self) -> Option<&[usize]> {
        self.star_a_perm.as_deref()
    }

    pub fn star_b_perm(&self) -> Option<&[usize]> {
        self.star_b_perm.as_deref()
    }

    pub fn unit_a(&self) -> AlgebraElement {
        self.unit_a.clone()
    }

    pub fn unit_b(&self) -> AlgebraElement {
        self.unit_b.clone()
    }

    /// The crosscap element `U = D^α α`.
    pub fn u_element(&self) -> AlgebraElement {
        AlgebraElement::from_coeffs(
            self.d_up.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()),
            core::iter::empty(),
        )
    }

    /// Whether the stored crosscap element satisfies its axioms; false after
    /// the `D` tensor has been replaced with something invalid.
    pub fn crosscap_valid(&self) -> bool {
        self.crosscap_valid
    }

    /// Replaces the `D` tensor (and the induced crosscap element). Used to
    /// demonstrate that orientable evaluations never read it.
    pub fn with_d_tensor(&self, d: Vec<Rat>) -> StructureAlgebra {
        let mut out = self.clone();
        assert_eq!(d.len(), self.raw.dim_a);
        out.d_up = raise_vec(&d, &self.f_a_inv);
        out.raw.d = d;
        out.crosscap_valid = check_crosscap_axioms(&out).is_ok();
        out
    }

    /// Derives every operator from the raw tensors. Checks symmetry and
    /// invertibility of the two pairing blocks and basic dimension
    /// consistency; the full relation system is checked separately by
    /// [`Self::verify_relations`].
    pub fn from_raw(raw: RawTensors) -> Result<StructureAlgebra, AlgebraError> {
        let (da, db) = (raw.dim_a, raw.dim_b);
        let dims_ok = raw.f_a.rows() == da
            && raw.f_a.cols() == da
            && raw.f_b.rows() == db
            && raw.f_b.cols() == db
            && raw.r.rows() == da
            && raw.r.cols() == db
            && raw.i_a.rows() == da
            && raw.i_b.rows() == db
            && raw.d.len() == da
            && raw.j_a.len() == da
            && raw.j_b.len() == db;
        if !dims_ok {
            return Err(AlgebraError::DimensionMismatch(format!("dimA={da} dimB={db}")));
        }
        if !raw.f_a.is_symmetric() {
            return Err(AlgebraError::AsymmetricForm { part: Part::A });
        }
        if !raw.f_b.is_symmetric() {
            return Err(AlgebraError::AsymmetricForm { part: Part::B });
        }
        let f_a_inv = raw.f_a.inverse().ok_or(AlgebraError::SingularForm { part: Part::A })?;
        let f_b_inv = raw.f_b.inverse().ok_or(AlgebraError::SingularForm { part: Part::B })?;

        // α₁α₂ = S_{α₁,α₂}^{α} α
        let mut s_up = DenseT3::zeros(da);
        for i in 0..da {
            for j in 0..da {
                for g in 0..da {
                    let mut acc = Rat::zero();
                    for l in 0..da {
                        let s = raw.s.at(i, j, l);
                        if !s.is_zero() {
                            acc += s * f_a_inv.at(l, g);
                        }
                    }
                    s_up.set(i, j, g, acc);
                }
            }
        }

        // β₁β₂ = T_{β₁,β₂}^{β} β; assemble per (β₁,β₂) from the sparse T.
        let mut prod_b_acc: BTreeMap<(u32, u32), Vec<Rat>> = BTreeMap::new();
        for (&(b1, b2, bp), tv) in &raw.t {
            let row = prod_b_acc.entry((b1, b2)).or_insert_with(|| vec![Rat::zero(); db]);
            for g in 0..db {
                let f = f_b_inv.at(bp as usize, g);
                if !f.is_zero() {
                    row[g] += tv * f;
                }
            }
        }
        let prod_b = sparsify_rows(prod_b_acc);

        // αβ = R_{α,β}^{β'} β'
        let mut prod_ab_acc: BTreeMap<(u32, u32), Vec<Rat>> = BTreeMap::new();
        for (&(a, b1, b2), rv) in &raw.r3 {
            let row = prod_ab_acc.entry((a, b1)).or_insert_with(|| vec![Rat::zero(); db]);
            for g in 0..db {
                let f = f_b_inv.at(b2 as usize, g);
                if !f.is_zero() {
                    row[g] += rv * f;
                }
            }
        }
        let prod_ab = sparsify_rows(prod_ab_acc);

        // Star operators: α* = I_α^{α'} α' with the last index raised.
        let star_a_mat = raise_last(&raw.i_a, &f_a_inv);
        let star_b_mat = raise_last(&raw.i_b, &f_b_inv);
        let star_a_perm = as_permutation(&star_a_mat);
        let star_b_perm = as_permutation(&star_b_mat);

        let unit_a = AlgebraElement::from_coeffs(
            raise_vec(&raw.j_a, &f_a_inv).into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
            core::iter::empty(),
        );
        let unit_b = AlgebraElement::from_coeffs(
            core::iter::empty(),
            raise_vec(&raw.j_b, &f_b_inv).into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
        );
        let d_up = raise_vec(&raw.d, &f_a_inv);

        let mut alg = StructureAlgebra {
            raw,
            f_a_inv,
            f_b_inv,
            star_a_mat,
            star_b_mat,
            star_a_perm,
            star_b_perm,
            s_up,
            prod_b,
            prod_ab,
            v_kb: Mat::zeros(db, db),
            unit_a,
            unit_b,
            d_up,
            crosscap_valid: false,
        };

        // V_{K_B}(x) = F^{β',β''} β' x β'', as a matrix on B.
        let mut v_kb = Mat::zeros(db, db);
        for b_in in 0..db {
            let col = alg.v_kb_column(b_in);
            for (row, c) in col {
                v_kb.set(row, b_in, c);
            }
        }
        alg.v_kb = v_kb;
        alg.crosscap_valid = check_crosscap_axioms(&alg).is_ok();
        Ok(alg)
    }

    fn v_kb_column(&self, b_in: usize) -> Vec<(usize, Rat)> {
        let db = self.raw.dim_b;
        let mut out = vec![Rat::zero(); db];
        for bp in 0..db {
            for bpp in 0..db {
                let f = self.f_b_inv.at(bp, bpp);
                if f.is_zero() {
                    continue;
                }
                if let Some(mid) = self.prod_b.get(&(bp as u32, b_in as u32)) {
                    for (g, c) in mid {
                        if let Some(fin) = self.prod_b.get(&(*g, bpp as u32)) {
                            for (h, c2) in fin {
                                out[*h as usize] += f * c * c2;
                            }
                        }
                    }
                }
            }
        }
        out.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Bilinear product in `H`.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        // A·A
        for (i, ci) in x.a_coeffs() {
            for (j, cj) in y.a_coeffs() {
                let c = ci * cj;
                for g in 0..self.raw.dim_a {
                    let s = self.s_up.at(i, j, g);
                    if !s.is_zero() {
                        out.add_a(g, &c * s);
                    }
                }
            }
        }
        // A·B and B·A (A is central).
        let mut mixed = |ac: &BTreeMap<u32, Rat>, bc: &BTreeMap<u32, Rat>| {
            for (&i, ci) in ac {
                for (&j, cj) in bc {
                    if let Some(row) = self.prod_ab.get(&(i, j)) {
                        let c = ci * cj;
                        for (g, v) in row {
                            out.add_b(*g as usize, &c * v);
                        }
                    }
                }
            }
        };
        mixed(&x.a, &y.b);
        mixed(&y.a, &x.b);
        // B·B
        for (&i, ci) in &x.b {
            for (&j, cj) in &y.b {
                if let Some(row) = self.prod_b.get(&(i, j)) {
                    let c = ci * cj;
                    for (g, v) in row {
                        out.add_b(*g as usize, &c * v);
                    }
                }
            }
        }
        out
    }

    /// Invariant symmetric pairing `(x, y)`.
    pub fn pair(&self, x: &AlgebraElement, y: &AlgebraElement) -> Rat {
        let mut acc = Rat::zero();
        for (i, ci) in x.a_coeffs() {
            for (j, cj) in y.a_coeffs() {
                let f = self.raw.f_a.at(i, j);
                if !f.is_zero() {
                    acc += ci * cj * f;
                }
            }
            for (j, cj) in y.b_coeffs() {
                let f = self.raw.r.at(i, j);
                if !f.is_zero() {
                    acc += ci * cj * f;
                }
            }
        }
        for (i, ci) in x.b_coeffs() {
            for (j, cj) in y.a_coeffs() {
                let f = self.raw.r.at(j, i);
                if !f.is_zero() {
                    acc += ci * cj * f;
                }
            }
            for (j, cj) in y.b_coeffs() {
                let f = self.raw.f_b.at(i, j);
                if !f.is_zero() {
                    acc += ci * cj * f;
                }
            }
        }
        acc
    }

    /// Casimir element `K_X = F^{x',x''} x'x''`; the twisted variant stars
    /// the second factor.
    pub fn casimir(&self, part: Part, twisted: bool) -> AlgebraElement {
        let dim = match part {
            Part::A => self.raw.dim_a,
            Part::B => self.raw.dim_b,
        };
        let inv = match part {
            Part::A => &self.f_a_inv,
            Part::B => &self.f_b_inv,
        };
        let mut out = AlgebraElement::zero();
        for i in 0..dim {
            for j in 0..dim {
                let f = inv.at(i, j);
                if f.is_zero() {
                    continue;
                }
                let left = match part {
                    Part::A => AlgebraElement::basis_a(i),
                    Part::B => AlgebraElement::basis_b(i),
                };
                let mut right = match part {
                    Part::A => AlgebraElement::basis_a(j),
                    Part::B => AlgebraElement::basis_b(j),
                };
                if twisted {
                    right = self.star_elt(&right);
                }
                out = out.add(&self.multiply(&left, &right).scale(f));
            }
        }
        out
    }

    /// `V_{K_B}(b) = F^{β',β''} β' b β''`. Requires a pure B element.
    pub fn apply_v_kb(&self, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if !b.is_b_only() {
            return Err(AlgebraError::NonzeroAComponent);
        }
        let dense = b.b_dense(self.raw.dim_b);
        let image = self.v_kb.mul_vec(&dense);
        Ok(AlgebraElement::from_coeffs(
            core::iter::empty(),
            image.into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
        ))
    }

    /// The unique `b ∈ B` with `(b, b')_B = (a, b')` for all `b'`.
    pub fn phi(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if !a.is_a_only() {
            return Err(AlgebraError::NonzeroBComponent);
        }
        let mut rhs = vec![Rat::zero(); self.raw.dim_b];
        for (i, ci) in a.a_coeffs() {
            for (j, slot) in rhs.iter_mut().enumerate() {
                let r = self.raw.r.at(i, j);
                if !r.is_zero() {
                    *slot += ci * r;
                }
            }
        }
        let image = self.f_b_inv.mul_vec(&rhs);
        Ok(AlgebraElement::from_coeffs(
            core::iter::empty(),
            image.into_iter().enumerate().filter(|(_, c)| !c.is_zero()),
        ))
    }

    /// The involutive antiautomorphism, applied coefficient-wise.
    pub fn star_elt(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, c) in x.a_coeffs() {
            for row in 0..self.raw.dim_a {
                let m = self.star_a_mat.at(row, i);
                if !m.is_zero() {
                    out.add_a(row, c * m);
                }
            }
        }
        for (i, c) in x.b_coeffs() {
            for row in 0..self.raw.dim_b {
                let m = self.star_b_mat.at(row, i);
                if !m.is_zero() {
                    out.add_b(row, c * m);
                }
            }
        }
        out
    }

    /// Integer power of an element, `x⁰ = 1_A`.
    pub fn power(&self, x: &AlgebraElement, exp: u32) -> AlgebraElement {
        let mut acc = self.unit_a();
        for _ in 0..exp {
            acc = self.multiply(&acc, x);
        }
        acc
    }
}

fn sparsify_rows(acc: BTreeMap<(u32, u32), Vec<Rat>>) -> BTreeMap<(u32, u32), Vec<(u32, Rat)>> {
    acc.into_iter()
        .map(|(k, row)| {
            let sparse: Vec<(u32, Rat)> = row
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c))
                .collect();
            (k, sparse)
        })
        .filter(|(_, row)| !row.is_empty())
        .collect()
}

/// Raises the last index of a two-index tensor: `X_a^{b} = X_{a,c} F^{c,b}`.
/// Returned as a matrix whose column `a`, row `b` holds `X_a^{b}`.
fn raise_last(x: &Mat, f_inv: &Mat) -> Mat {
    let rows = x.rows();
    let dim = f_inv.rows();
    let mut out = Mat::zeros(dim, rows);
    for a in 0..rows {
        for b in 0..dim {
            let mut acc = Rat::zero();
            for c in 0..x.cols() {
                let v = x.at(a, c);
                if !v.is_zero() {
                    acc += v * f_inv.at(c, b);
                }
            }
            out.set(b, a, acc);
        }
    }
    out
}

fn raise_vec(x: &[Rat], f_inv: &Mat) -> Vec<Rat> {
    let dim = f_inv.rows();
    let mut out = vec![Rat::zero(); dim];
    for (b, slot) in out.iter_mut().enumerate() {
        for (a, v) in x.iter().enumerate() {
            if !v.is_zero() {
                *slot += v * f_inv.at(a, b);
            }
        }
    }
    out
}

/// Interprets a matrix as a basis permutation when every column is a single
/// `+1` entry.
fn as_permutation(m: &Mat) -> Option<Vec<usize>> {
    let one = crate::rat_int(1);
    let mut perm = Vec::with_capacity(m.cols());
    for c in 0..m.cols() {
        let mut hit = None;
        for r in 0..m.rows() {
            let v = m.at(r, c);
            if v.is_zero() {
                continue;
            }
            if *v != one || hit.is_some() {
                return None;
            }
            hit = Some(r);
        }
        perm.push(hit?);
    }
    Some(perm)
}

/// The crosscap element of a group algebra: the sum of squares `Σ_c c²`,
/// expressed in the class basis. The coefficient of `E_α` is the number of
/// square roots of any fixed member of `α`.
///
/// The covering-count module independently measures the same coefficients as
/// weighted cover counts of the projective plane with one branch point, which
/// is how this closed form is validated.
pub fn crosscap(group: &GroupTable) -> AlgebraElement {
    let mut per_element = vec![0usize; group.order()];
    for c in 0..group.order() {
        per_element[group.mul(c, c)] += 1;
    }
    let mut out = AlgebraElement::zero();
    for (ci, class) in group.classes().iter().enumerate() {
        let count = per_element[class.rep];
        if count > 0 {
            out.add_a(ci, rat_usize(count));
        }
    }
    out
}

/// Builds the structure algebra of a finite permutation group.
///
/// Every tensor is computed from first principles (class products, matrix-unit
/// products, traces); the closed forms for the pairings are asserted by the
/// test suite rather than assumed here. The crosscap element is the sum of
/// squares from [`crosscap`]; construction fails if it violates any of its
/// three defining axioms, which signals a group for which that closed form is
/// not valid.
pub fn from_group(
    group: &GroupTable,
    dihedral: &DihedralClassTable,
) -> Result<StructureAlgebra, AlgebraError> {
    let da = group.classes().len();
    let db = dihedral.len();
    let order = group.order();
    let order_rat = rat_usize(order);

    let inv_count = group.involutions().len();
    let pair_total: usize = dihedral.classes().iter().map(|c| c.size).sum();
    if pair_total != inv_count * inv_count {
        return Err(AlgebraError::InconsistentTables(format!(
            "pair classes cover {pair_total} pairs, expected {}",
            inv_count * inv_count
        )));
    }

    // Class products: counts[γ][α₁][α₂] = #{(g,h) ∈ α₁×α₂ : gh = rep_γ}.
    let mut class_prod = vec![vec![vec![0usize; da]; da]; da];
    for (gamma, class) in group.classes().iter().enumerate() {
        for g in 0..order {
            let h = group.mul(group.inv(g), class.rep);
            class_prod[gamma][group.class_of(g)][group.class_of(h)] += 1;
        }
    }

    let mut f_a = Mat::zeros(da, da);
    let id_class = group.identity_class();
    for i in 0..da {
        for j in 0..da {
            f_a.set(i, j, rat_usize(class_prod[id_class][i][j]) / &order_rat);
        }
    }

    let mut s = DenseT3::zeros(da);
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                let mut acc = Rat::zero();
                for (gamma, prod) in class_prod.iter().enumerate() {
                    if prod[i][j] != 0 {
                        acc += rat_usize(prod[i][j]) * f_a.at(gamma, k);
                    }
                }
                s.set(i, j, k, acc);
            }
        }
    }

    // F_B from traces of matrix-unit products.
    let mut f_b = Mat::zeros(db, db);
    for (b1, _) in dihedral.classes().iter().enumerate() {
        for &(s1, s2) in dihedral.members(b1) {
            if let Some(b2) = dihedral.class_of_pair(s2, s1) {
                let v = f_b.at(b1, b2).clone() + crate::rat(1, order as i64);
                f_b.set(b1, b2, v);
            }
        }
    }

    // B·B products: representative of β₁ against all members of β₂ with a
    // matching middle involution, weighted by the class-size ratio.
    let mut prod_b_counts: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for (b1, class1) in dihedral.classes().iter().enumerate() {
        let (r1, r2) = class1.rep;
        for &s4 in group.involutions() {
            let b2 = dihedral.class_of_pair(r2, s4).expect("involution pair");
            let gamma = dihedral.class_of_pair(r1, s4).expect("involution pair");
            prod_b_counts.entry((b1 as u32, b2 as u32)).or_insert_with(|| vec![0; db])[gamma] += 1;
        }
    }
    let b_prod_coeff = |b1: usize, b2: usize, gamma: usize| -> Rat {
        match prod_b_counts.get(&(b1 as u32, b2 as u32)) {
            Some(row) if row[gamma] != 0 => {
                rat_usize(row[gamma] * dihedral.classes()[b1].size)
                    / rat_usize(dihedral.classes()[gamma].size)
            }
            _ => Rat::zero(),
        }
    };

    let mut t = SparseT3::new();
    for b1 in 0..db {
        for b2 in 0..db {
            for b3 in 0..db {
                let mut acc = Rat::zero();
                for gamma in 0..db {
                    let c = b_prod_coeff(b1, b2, gamma);
                    if !c.is_zero() {
                        let f = f_b.at(gamma, b3);
                        if !f.is_zero() {
                            acc += c * f;
                        }
                    }
                }
                t3_set(&mut t, b1, b2, b3, acc);
            }
        }
    }

    // Mixed products E_α E_β via conjugation of the representative pair.
    let mut prod_ab_counts: BTreeMap<(u32, u32), Vec<usize>> = BTreeMap::new();
    for (b, class) in dihedral.classes().iter().enumerate() {
        let (r1, r2) = class.rep;
        for g in 0..order {
            let gamma = dihedral
                .class_of_pair(group.conj(g, r1), r2)
                .expect("conjugate of an involution");
            prod_ab_counts.entry((group.class_of(g) as u32, b as u32)).or_insert_with(|| vec![0; db])
                [gamma] += 1;
        }
    }
    let ab_prod_coeff = |a: usize, b: usize, gamma: usize| -> Rat {
        match prod_ab_counts.get(&(a as u32, b as u32)) {
            Some(row) if row[gamma] != 0 => {
                rat_usize(row[gamma] * dihedral.classes()[b].size)
                    / rat_usize(dihedral.classes()[gamma].size)
            }
            _ => Rat::zero(),
        }
    };

    let mut r3 = SparseT3::new();
    for a in 0..da {
        for b1 in 0..db {
            for b2 in 0..db {
                let mut acc = Rat::zero();
                for gamma in 0..db {
                    let c = ab_prod_coeff(a, b1, gamma);
                    if !c.is_zero() {
                        let f = f_b.at(gamma, b2);
                        if !f.is_zero() {
                            acc += c * f;
                        }
                    }
                }
                t3_set(&mut r3, a, b1, b2, acc);
            }
        }
    }

    // R_{α,β} = tr(V_α E_β)/|G|: one pass over G × involutions.
    let mut r_counts = vec![vec![0usize; db]; da];
    for g in 0..order {
        let a = group.class_of(g);
        for &s in group.involutions() {
            let beta = dihedral
                .class_of_pair(s, group.conj(g, s))
                .expect("conjugate of an involution");
            r_counts[a][beta] += 1;
        }
    }
    let mut r = Mat::zeros(da, db);
    for i in 0..da {
        for j in 0..db {
            r.set(i, j, rat_usize(r_counts[i][j]) / &order_rat);
        }
    }

    // Star data.
    let star_a: Vec<usize> = (0..da).map(|c| group.class_star(c)).collect();
    let star_b: Vec<usize> = (0..db).map(|c| dihedral.star(c)).collect();
    let mut i_a = Mat::zeros(da, da);
    for i in 0..da {
        for j in 0..da {
            i_a.set(i, j, f_a.at(star_a[i], j).clone());
        }
    }
    let mut i_b = Mat::zeros(db, db);
    for i in 0..db {
        for j in 0..db {
            i_b.set(i, j, f_b.at(star_b[i], j).clone());
        }
    }

    // Units and crosscap pairings.
    let j_a: Vec<Rat> = (0..da).map(|i| f_a.at(id_class, i).clone()).collect();
    let mut j_b = vec![Rat::zero(); db];
    for b in 0..db {
        if dihedral.is_trivial(b) {
            for (j, slot) in j_b.iter_mut().enumerate() {
                *slot += f_b.at(b, j);
            }
        }
    }
    let u = crosscap(group);
    let d: Vec<Rat> = (0..da)
        .map(|i| {
            let mut acc = Rat::zero();
            for (g, c) in u.a_coeffs() {
                acc += c * f_a.at(g, i);
            }
            acc
        })
        .collect();

    let raw = RawTensors {
        dim_a: da,
        dim_b: db,
        f_a,
        f_b,
        r,
        s,
        t,
        r3,
        i_a,
        i_b,
        d,
        j_a,
        j_b,
    };
    let alg = StructureAlgebra::from_raw(raw)?;
    check_crosscap_axioms(&alg)?;
    Ok(alg)
}

/// Defining properties of the crosscap element: `U² = K_{A,*}`,
/// `(U,b) = (K_{B,*},b)` for every basis `b`, and `(aU)* = aU` for every
/// basis `a`.
pub fn check_crosscap_axioms(alg: &StructureAlgebra) -> Result<(), AlgebraError> {
    let u = alg.u_element();
    let u2 = alg.multiply(&u, &u);
    if u2 != alg.casimir(Part::A, true) {
        return Err(AlgebraError::CrosscapInvalid {
            property: CrosscapProperty::SquaresToTwistedCasimir,
        });
    }
    let kbs = alg.casimir(Part::B, true);
    for b in 0..alg.dim_b() {
        let eb = AlgebraElement::basis_b(b);
        if alg.pair(&u, &eb) != alg.pair(&kbs, &eb) {
            return Err(AlgebraError::CrosscapInvalid {
                property: CrosscapProperty::PairsLikeTwistedBCasimir,
            });
        }
    }
    for a in 0..alg.dim_a() {
        let au = alg.multiply(&AlgebraElement::basis_a(a), &u);
        if alg.star_elt(&au) != au {
            return Err(AlgebraError::CrosscapInvalid {
                property: CrosscapProperty::MultiplesStarInvariant,
            });
        }
    }
    Ok(())
}

/// Outcome of one relation of the defining system.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    /// First failing index tuple, if any.
    pub witness: Option<Vec<usize>>,
}

/// Report of the full relation system.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Identifiers of the relations; the numbering of the defining system skips 13.
pub const RELATION_IDS: [u8; 15] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14, 15, 16];

impl StructureAlgebra {
    /// Evaluates the whole defining relation system exactly.
    pub fn verify_relations(&self) -> RelationReport {
        RelationReport {
            checks: RELATION_IDS.iter().map(|&id| self.verify_relation(id)).collect(),
        }
    }

    /// Evaluates a single relation of the defining system.
    pub fn verify_relation(&self, id: u8) -> RelationCheck {
        let (name, result) = match id {
            1 => ("forms symmetric and nondegenerate", self.rel_forms()),
            2 => ("S and its contraction fully symmetric", self.rel_s_symmetric()),
            3 => ("T and its contraction cyclic", self.rel_t_cyclic()),
            4 => ("mixed product factors through phi", self.rel_4()),
            5 => ("phi is an algebra homomorphism", self.rel_5()),
            6 => ("phi lands in the center of B", self.rel_6()),
            7 => ("Cardy relation", self.rel_7()),
            8 => ("star is an involution", self.rel_8()),
            9 => ("star preserves the pairing", self.rel_9()),
            10 => ("star is an antiautomorphism", self.rel_10()),
            11 => ("crosscap squares to the twisted Casimir", self.rel_11()),
            12 => ("crosscap pairs like the twisted B Casimir", self.rel_12()),
            14 => ("crosscap multiples are star-invariant", self.rel_14()),
            15 => ("A unit axioms", self.rel_15()),
            16 => ("B unit axiom", self.rel_16()),
            _ => ("unknown relation", Some(vec![])),
        };
        RelationCheck { id, name, pass: result.is_none(), witness: result }
    }

    fn rup_b(&self, a: usize, bp: usize) -> Rat {
        let mut acc = Rat::zero();
        for b in 0..self.raw.dim_b {
            let r = self.raw.r.at(a, b);
            if !r.is_zero() {
                acc += r * self.f_b_inv.at(b, bp);
            }
        }
        acc
    }

    fn rup_a(&self, b: usize, ap: usize) -> Rat {
        let mut acc = Rat::zero();
        for a in 0..self.raw.dim_a {
            let r = self.raw.r.at(a, b);
            if !r.is_zero() {
                acc += r * self.f_a_inv.at(a, ap);
            }
        }
        acc
    }

    /// `T_{β₁,β₂}^{β}` from the precomputed product map.
    fn tup(&self, b1: usize, b2: usize, b: usize) -> Rat {
        match self.prod_b.get(&(b1 as u32, b2 as u32)) {
            Some(row) => row
                .iter()
                .find(|(g, _)| *g as usize == b)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero),
            None => Rat::zero(),
        }
    }

    fn iup_a(&self, a: usize, ap: usize) -> &Rat {
        self.star_a_mat.at(ap, a)
    }

    fn iup_b(&self, b: usize, bp: usize) -> &Rat {
        self.star_b_mat.at(bp, b)
    }

    /// `I^{x',x''}`: the involution tensor with both indices raised.
    fn iupup(&self, part: Part) -> Mat {
        let (dim, i, inv) = match part {
            Part::A => (self.raw.dim_a, &self.raw.i_a, &self.f_a_inv),
            Part::B => (self.raw.dim_b, &self.raw.i_b, &self.f_b_inv),
        };
        let mut out = Mat::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                let mut acc = Rat::zero();
                for g in 0..dim {
                    for h in 0..dim {
                        let v = i.at(g, h);
                        if !v.is_zero() {
                            acc += inv.at(a, g) * v * inv.at(h, b);
                        }
                    }
                }
                out.set(a, b, acc);
            }
        }
        out
    }

    fn rel_forms(&self) -> Option<Vec<usize>> {
        if !self.raw.f_a.is_symmetric() || self.raw.f_a.inverse().is_none() {
            return Some(vec![0]);
        }
        if !self.raw.f_b.is_symmetric() || self.raw.f_b.inverse().is_none() {
            return Some(vec![1]);
        }
        None
    }

    fn rel_s_symmetric(&self) -> Option<Vec<usize>> {
        let d = self.raw.dim_a;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.raw.s.at(i, j, k);
                    if v != self.raw.s.at(j, i, k) || v != self.raw.s.at(i, k, j) {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        let s4 = |a: usize, b: usize, c: usize, e: usize| -> Rat {
            let mut acc = Rat::zero();
            for g in 0..d {
                let s = self.s_up.at(a, b, g);
                if !s.is_zero() {
                    acc += s * self.raw.s.at(g, c, e);
                }
            }
            acc
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let v = s4(i, j, k, l);
                        if v != s4(j, i, k, l) || v != s4(i, k, j, l) || v != s4(i, j, l, k) {
                            return Some(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        None
    }

    fn rel_t_cyclic(&self) -> Option<Vec<usize>> {
        let d = self.raw.dim_b;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if t3_get(&self.raw.t, i, j, k) != t3_get(&self.raw.t, j, k, i) {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        let t4 = |a: usize, b: usize, c: usize, e: usize| -> Rat {
            let mut acc = Rat::zero();
            if let Some(row) = self.prod_b.get(&(a as u32, b as u32)) {
                for (g, coeff) in row {
                    let t = t3_get(&self.raw.t, *g as usize, c, e);
                    if !t.is_zero() {
                        acc += coeff * t;
                    }
                }
            }
            acc
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        if t4(i, j, k, l) != t4(j, k, l, i) {
                            return Some(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
        None
    }

    fn rel_4(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        for a in 0..da {
            for b1 in 0..db {
                for b2 in 0..db {
                    let mut rhs = Rat::zero();
                    for bp in 0..db {
                        let ru = self.rup_b(a, bp);
                        if !ru.is_zero() {
                            rhs += ru * t3_get(&self.raw.t, bp, b1, b2);
                        }
                    }
                    if t3_get(&self.raw.r3, a, b1, b2) != rhs {
                        return Some(vec![a, b1, b2]);
                    }
                }
            }
        }
        None
    }

    fn rel_5(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        for b in 0..db {
            for a1 in 0..da {
                for a2 in 0..da {
                    let mut lhs = Rat::zero();
                    for ap in 0..da {
                        let ru = self.rup_a(b, ap);
                        if !ru.is_zero() {
                            lhs += ru * self.raw.s.at(ap, a1, a2);
                        }
                    }
                    let mut rhs = Rat::zero();
                    for bp in 0..db {
                        let r1 = self.rup_b(a1, bp);
                        if r1.is_zero() {
                            continue;
                        }
                        for bpp in 0..db {
                            let r2 = self.rup_b(a2, bpp);
                            if !r2.is_zero() {
                                let t = t3_get(&self.raw.t, bp, bpp, b);
                                if !t.is_zero() {
                                    rhs += &r1 * r2 * t;
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return Some(vec![b, a1, a2]);
                    }
                }
            }
        }
        None
    }

    fn rel_6(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        for a in 0..da {
            for b1 in 0..db {
                for b2 in 0..db {
                    if t3_get(&self.raw.r3, a, b1, b2) != t3_get(&self.raw.r3, a, b2, b1) {
                        return Some(vec![a, b1, b2]);
                    }
                }
            }
        }
        None
    }

    fn rel_7(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        for b1 in 0..db {
            for b2 in 0..db {
                let mut lhs = Rat::zero();
                for ap in 0..da {
                    let r1 = self.raw.r.at(ap, b1);
                    if r1.is_zero() {
                        continue;
                    }
                    for app in 0..da {
                        let f = self.f_a_inv.at(ap, app);
                        if !f.is_zero() {
                            let r2 = self.raw.r.at(app, b2);
                            if !r2.is_zero() {
                                lhs += r1 * f * r2;
                            }
                        }
                    }
                }
                let mut rhs = Rat::zero();
                for bp in 0..db {
                    for bpp in 0..db {
                        let t1 = self.tup(b1, bp, bpp);
                        if !t1.is_zero() {
                            let t2 = self.tup(bpp, b2, bp);
                            if !t2.is_zero() {
                                rhs += t1 * t2;
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(vec![b1, b2]);
                }
            }
        }
        None
    }

    fn rel_8(&self) -> Option<Vec<usize>> {
        for (dim, which) in [(self.raw.dim_a, Part::A), (self.raw.dim_b, Part::B)] {
            for a1 in 0..dim {
                for a2 in 0..dim {
                    let mut lhs = Rat::zero();
                    for ap in 0..dim {
                        let (iu, i_low) = match which {
                            Part::A => (self.iup_a(a1, ap), self.raw.i_a.at(ap, a2)),
                            Part::B => (self.iup_b(a1, ap), self.raw.i_b.at(ap, a2)),
                        };
                        if !iu.is_zero() && !i_low.is_zero() {
                            lhs += iu * i_low;
                        }
                    }
                    let f = match which {
                        Part::A => self.raw.f_a.at(a1, a2),
                        Part::B => self.raw.f_b.at(a1, a2),
                    };
                    if lhs != *f {
                        return Some(vec![a1, a2]);
                    }
                }
            }
        }
        None
    }

    fn rel_9(&self) -> Option<Vec<usize>> {
        if !self.raw.i_a.is_symmetric() || !self.raw.i_b.is_symmetric() {
            return Some(vec![0]);
        }
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        for a in 0..da {
            for b in 0..db {
                let mut lhs = Rat::zero();
                for ap in 0..da {
                    let iu = self.iup_a(a, ap);
                    if !iu.is_zero() {
                        lhs += iu * self.raw.r.at(ap, b);
                    }
                }
                let mut rhs = Rat::zero();
                for bp in 0..db {
                    let iu = self.iup_b(b, bp);
                    if !iu.is_zero() {
                        rhs += iu * self.raw.r.at(a, bp);
                    }
                }
                if lhs != rhs {
                    return Some(vec![a, b]);
                }
            }
        }
        None
    }

    fn rel_10(&self) -> Option<Vec<usize>> {
        let da = self.raw.dim_a;
        for a1 in 0..da {
            for a2 in 0..da {
                for a3 in 0..da {
                    let mut lhs = Rat::zero();
                    for ap in 0..da {
                        let i1 = self.iup_a(a1, ap);
                        if i1.is_zero() {
                            continue;
                        }
                        for app in 0..da {
                            let i2 = self.iup_a(a2, app);
                            if i2.is_zero() {
                                continue;
                            }
                            for appp in 0..da {
                                let i3 = self.iup_a(a3, appp);
                                if !i3.is_zero() {
                                    let s = self.raw.s.at(appp, app, ap);
                                    if !s.is_zero() {
                                        lhs += i1 * i2 * i3 * s;
                                    }
                                }
                            }
                        }
                    }
                    if lhs != *self.raw.s.at(a1, a2, a3) {
                        return Some(vec![a1, a2, a3]);
                    }
                }
            }
        }
        let db = self.raw.dim_b;
        for b1 in 0..db {
            for b2 in 0..db {
                for b3 in 0..db {
                    let mut lhs = Rat::zero();
                    for bp in 0..db {
                        let i1 = self.iup_b(b1, bp);
                        if i1.is_zero() {
                            continue;
                        }
                        for bpp in 0..db {
                            let i2 = self.iup_b(b2, bpp);
                            if i2.is_zero() {
                                continue;
                            }
                            for bppp in 0..db {
                                let i3 = self.iup_b(b3, bppp);
                                if !i3.is_zero() {
                                    let t = t3_get(&self.raw.t, bppp, bpp, bp);
                                    if !t.is_zero() {
                                        lhs += i1 * i2 * i3 * t;
                                    }
                                }
                            }
                        }
                    }
                    if lhs != t3_get(&self.raw.t, b1, b2, b3) {
                        return Some(vec![b1, b2, b3]);
                    }
                }
            }
        }
        None
    }

    fn rel_11(&self) -> Option<Vec<usize>> {
        let da = self.raw.dim_a;
        let iupup = self.iupup(Part::A);
        for a in 0..da {
            let mut lhs = Rat::zero();
            let mut rhs = Rat::zero();
            for ap in 0..da {
                for app in 0..da {
                    let s = self.raw.s.at(a, ap, app);
                    if s.is_zero() {
                        continue;
                    }
                    let dd = &self.d_up[ap] * &self.d_up[app];
                    if !dd.is_zero() {
                        lhs += s * dd;
                    }
                    let iu = iupup.at(ap, app);
                    if !iu.is_zero() {
                        rhs += s * iu;
                    }
                }
            }
            if lhs != rhs {
                return Some(vec![a]);
            }
        }
        None
    }

    fn rel_12(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        let iupup = self.iupup(Part::B);
        for b in 0..db {
            let mut lhs = Rat::zero();
            for ap in 0..da {
                if !self.d_up[ap].is_zero() {
                    lhs += &self.d_up[ap] * self.raw.r.at(ap, b);
                }
            }
            let mut rhs = Rat::zero();
            for bp in 0..db {
                for bpp in 0..db {
                    let iu = iupup.at(bp, bpp);
                    if !iu.is_zero() {
                        let t = t3_get(&self.raw.t, bp, bpp, b);
                        if !t.is_zero() {
                            rhs += iu * t;
                        }
                    }
                }
            }
            if lhs != rhs {
                return Some(vec![b]);
            }
        }
        None
    }

    fn rel_14(&self) -> Option<Vec<usize>> {
        let da = self.raw.dim_a;
        for a1 in 0..da {
            for a2 in 0..da {
                let mut lhs = Rat::zero();
                for ap in 0..da {
                    if !self.d_up[ap].is_zero() {
                        lhs += &self.d_up[ap] * self.raw.s.at(ap, a1, a2);
                    }
                }
                let mut rhs = Rat::zero();
                for ap in 0..da {
                    let iu = self.iup_a(a1, ap);
                    if iu.is_zero() {
                        continue;
                    }
                    for app in 0..da {
                        if !self.d_up[app].is_zero() {
                            let s = self.raw.s.at(ap, app, a2);
                            if !s.is_zero() {
                                rhs += iu * &self.d_up[app] * s;
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return Some(vec![a1, a2]);
                }
            }
        }
        None
    }

    fn rel_15(&self) -> Option<Vec<usize>> {
        let (da, db) = (self.raw.dim_a, self.raw.dim_b);
        let j_up = raise_vec(&self.raw.j_a, &self.f_a_inv);
        for a1 in 0..da {
            for a2 in 0..da {
                let mut lhs = Rat::zero();
                for (ap, j) in j_up.iter().enumerate() {
                    if !j.is_zero() {
                        lhs += j * self.raw.s.at(ap, a1, a2);
                    }
                }
                if lhs != *self.raw.f_a.at(a1, a2) {
                    return Some(vec![0, a1, a2]);
                }
            }
        }
        for b1 in 0..db {
            for b2 in 0..db {
                let mut lhs = Rat::zero();
                for (ap, j) in j_up.iter().enumerate() {
                    if !j.is_zero() {
                        let r = t3_get(&self.raw.r3, ap, b1, b2);
                        if !r.is_zero() {
                            lhs += j * r;
                        }
                    }
                }
                if lhs != *self.raw.f_b.at(b1, b2) {
                    return Some(vec![1, b1, b2]);
                }
            }
        }
        None
    }

    fn rel_16(&self) -> Option<Vec<usize>> {
        let db = self.raw.dim_b;
        let j_up = raise_vec(&self.raw.j_b, &self.f_b_inv);
        for b1 in 0..db {
            for b2 in 0..db {
                let mut lhs = Rat::zero();
                for (bp, j) in j_up.iter().enumerate() {
                    if !j.is_zero() {
                        let t = t3_get(&self.raw.t, bp, b1, b2);
                        if !t.is_zero() {
                            lhs += j * t;
                        }
                    }
                }
                if lhs != *self.raw.f_b.at(b1, b2) {
                    return Some(vec![b1, b2]);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Partition;
    use crate::{rat, rat_int};
    use std::sync::OnceLock;

    fn algebra(n: usize) -> &'static (GroupTable, DihedralClassTable, StructureAlgebra) {
        static CACHE: OnceLock<Vec<OnceLock<(GroupTable, DihedralClassTable, StructureAlgebra)>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| (0..6).map(|_| OnceLock::new()).collect());
        cache[n].get_or_init(|| {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            let alg = from_group(&g, &d).unwrap();
            (g, d, alg)
        })
    }

    fn class_idx(g: &GroupTable, parts: &[u32]) -> usize {
        g.class_by_cycle_type(&Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    /// Dense group-algebra arithmetic: a fully independent product oracle.
    struct GroupAlgebra<'a> {
        g: &'a GroupTable,
    }

    impl<'a> GroupAlgebra<'a> {
        fn class_sum(&self, class: usize) -> Vec<Rat> {
            let mut v = vec![Rat::zero(); self.g.order()];
            for &m in self.g.class_members(class) {
                v[m] = rat_int(1);
            }
            v
        }

        fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
            let mut out = vec![Rat::zero(); self.g.order()];
            for (i, ci) in x.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for (j, cj) in y.iter().enumerate() {
                    if !cj.is_zero() {
                        out[self.g.mul(i, j)] += ci * cj;
                    }
                }
            }
            out
        }

        /// f(x) = coefficient of the identity / |G|.
        fn f(&self, x: &[Rat]) -> Rat {
            x[0].clone() / crate::rat_usize(self.g.order())
        }
    }

    /// Dense |G|×|G| matrices: an independent oracle for the B side.
    struct MatrixOracle<'a> {
        g: &'a GroupTable,
    }

    impl<'a> MatrixOracle<'a> {
        fn zero(&self) -> Vec<Vec<Rat>> {
            vec![vec![Rat::zero(); self.g.order()]; self.g.order()]
        }

        /// E_β = Σ matrix units over the members of the pair class.
        fn e_beta(&self, d: &DihedralClassTable, beta: usize) -> Vec<Vec<Rat>> {
            let mut m = self.zero();
            for &(s1, s2) in d.members(beta) {
                m[s1][s2] += rat_int(1);
            }
            m
        }

        /// V(g) maps the basis vector x to g x g⁻¹.
        fn v_class(&self, class: usize) -> Vec<Vec<Rat>> {
            let mut m = self.zero();
            for &gg in self.g.class_members(class) {
                for x in 0..self.g.order() {
                    m[self.g.conj(gg, x)][x] += rat_int(1);
                }
            }
            m
        }

        fn mul(&self, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
            let n = self.g.order();
            let mut out = self.zero();
            for i in 0..n {
                for k in 0..n {
                    if a[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !b[k][j].is_zero() {
                            out[i][j] += &a[i][k] * &b[k][j];
                        }
                    }
                }
            }
            out
        }

        fn trace(&self, a: &[Vec<Rat>]) -> Rat {
            (0..self.g.order()).map(|i| a[i][i].clone()).sum()
        }
    }

    #[test]
    fn s1_algebra() {
        let (_, _, alg) = algebra(1);
        assert_eq!(alg.dim_a(), 1);
        assert_eq!(alg.dim_b(), 1);
        assert_eq!(*alg.raw().f_a.at(0, 0), rat_int(1));
        assert_eq!(*alg.raw().f_b.at(0, 0), rat_int(1));
    }

    #[test]
    fn s2_pairings() {
        let (g, d, alg) = algebra(2);
        assert_eq!(alg.dim_a(), 2);
        assert_eq!(alg.dim_b(), 4);
        let c2 = class_idx(g, &[2]);
        assert_eq!(*alg.raw().f_a.at(c2, c2), rat(1, 2));

        // Independent oracle: expand E_{[2]}·E_{[2]} in the group algebra.
        let ga = GroupAlgebra { g };
        let prod = ga.mul(&ga.class_sum(c2), &ga.class_sum(c2));
        assert_eq!(ga.f(&prod), rat(1, 2));

        // R[[2], class(id,id)] = tr(V_{(12)}·E_{(id,id)}) / 2 = 1/2.
        let mo = MatrixOracle { g };
        let b_idii = d.class_of_pair(0, 0).unwrap();
        let tr = mo.trace(&mo.mul(&mo.v_class(c2), &mo.e_beta(d, b_idii)));
        assert_eq!(tr.clone() / rat_int(2), rat(1, 2));
        assert_eq!(*alg.raw().r.at(c2, b_idii), rat(1, 2));
    }

    #[test]
    fn closed_form_pairings_match_centralizers() {
        for n in 1..=4 {
            let (g, d, alg) = algebra(n);
            for a1 in 0..alg.dim_a() {
                for a2 in 0..alg.dim_a() {
                    let expected = if g.class_star(a1) == a2 {
                        rat_int(1) / crate::rat_usize(g.centralizer_order(a1))
                    } else {
                        Rat::zero()
                    };
                    assert_eq!(*alg.raw().f_a.at(a1, a2), expected);
                }
            }
            for b1 in 0..alg.dim_b() {
                for b2 in 0..alg.dim_b() {
                    let expected = if d.star(b1) == b2 {
                        rat_int(1) / crate::rat_usize(d.classes()[b1].nu)
                    } else {
                        Rat::zero()
                    };
                    assert_eq!(*alg.raw().f_b.at(b1, b2), expected);
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let (g2, d2, alg2) = algebra(2);
        let c2 = class_idx(g2, &[2]);
        let c11 = class_idx(g2, &[1, 1]);
        let e2 = AlgebraElement::basis_a(c2);
        assert_eq!(alg2.multiply(&e2, &e2), AlgebraElement::basis_a(c11));

        let b_idii = d2.class_of_pair(0, 0).unwrap();
        let eb = AlgebraElement::basis_b(b_idii);
        assert_eq!(alg2.multiply(&e2, &eb), eb);

        let (_, _, alg3) = algebra(3);
        let one = alg3.unit_a();
        for a in 0..alg3.dim_a() {
            let x = AlgebraElement::basis_a(a);
            assert_eq!(alg3.multiply(&one, &x), x);
        }
        for b in 0..alg3.dim_b() {
            let x = AlgebraElement::basis_b(b);
            assert_eq!(alg3.multiply(&one, &x), x);
            assert_eq!(alg3.multiply(&alg3.unit_b(), &x), x);
            assert_eq!(alg3.multiply(&x, &alg3.unit_b()), x);
        }
    }

    #[test]
    fn b_products_match_full_double_loop() {
        // The representative-based product scheme against plain matrix
        // multiplication of the class sums, n ≤ 3.
        for n in 1..=3 {
            let (g, d, alg) = algebra(n);
            let mo = MatrixOracle { g };
            for b1 in 0..alg.dim_b() {
                for b2 in 0..alg.dim_b() {
                    let prod = mo.mul(&mo.e_beta(d, b1), &mo.e_beta(d, b2));
                    let got = alg.multiply(
                        &AlgebraElement::basis_b(b1),
                        &AlgebraElement::basis_b(b2),
                    );
                    let mut expect = AlgebraElement::zero();
                    for b3 in 0..alg.dim_b() {
                        let (r1, r2) = d.classes()[b3].rep;
                        expect.add_b(b3, prod[r1][r2].clone());
                    }
                    assert_eq!(got, expect, "S_{n}: E_{b1}·E_{b2}");
                }
            }
        }
    }

    #[test]
    fn mixed_products_match_matrix_oracle() {
        for n in 1..=3 {
            let (g, d, alg) = algebra(n);
            let mo = MatrixOracle { g };
            for a in 0..alg.dim_a() {
                for b in 0..alg.dim_b() {
                    let prod = mo.mul(&mo.v_class(a), &mo.e_beta(d, b));
                    let got =
                        alg.multiply(&AlgebraElement::basis_a(a), &AlgebraElement::basis_b(b));
                    let mut expect = AlgebraElement::zero();
                    for b3 in 0..alg.dim_b() {
                        let (r1, r2) = d.classes()[b3].rep;
                        expect.add_b(b3, prod[r1][r2].clone());
                    }
                    assert_eq!(got, expect);
                    // A is central: βα = αβ, also at the matrix level.
                    let flipped =
                        alg.multiply(&AlgebraElement::basis_b(b), &AlgebraElement::basis_a(a));
                    assert_eq!(got, flipped);
                    let prod_rev = mo.mul(&mo.e_beta(d, b), &mo.v_class(a));
                    assert_eq!(prod, prod_rev);
                }
            }
        }
    }

    #[test]
    fn pair_examples() {
        for n in 1..=5 {
            let (g, _, alg) = algebra(n);
            let mut factorial = 1usize;
            for k in 2..=n {
                factorial *= k;
            }
            assert_eq!(alg.pair(&alg.unit_a(), &alg.unit_a()), rat(1, factorial as i64));
            assert_eq!(g.order(), factorial);
        }
        let (_, d3, alg3) = algebra(3);
        for b in 0..alg3.dim_b() {
            let lhs = alg3.pair(
                &AlgebraElement::basis_b(b),
                &AlgebraElement::basis_b(d3.star(b)),
            );
            assert_eq!(lhs, rat_int(1) / crate::rat_usize(d3.classes()[b].nu));
        }
    }

    #[test]
    fn mixed_pairing_matches_trace_oracle() {
        let (g, d, alg) = algebra(3);
        let mo = MatrixOracle { g };
        for a in 0..alg.dim_a() {
            for b in 0..alg.dim_b() {
                let tr = mo.trace(&mo.mul(&mo.v_class(a), &mo.e_beta(d, b)));
                let expected = tr / crate::rat_usize(g.order());
                assert_eq!(
                    alg.pair(&AlgebraElement::basis_a(a), &AlgebraElement::basis_b(b)),
                    expected
                );
            }
        }
    }

    #[test]
    fn pairing_is_symmetric_and_invariant() {
        let (_, _, alg) = algebra(3);
        let basis: Vec<AlgebraElement> = (0..alg.dim_a())
            .map(AlgebraElement::basis_a)
            .chain((0..alg.dim_b()).map(AlgebraElement::basis_b))
            .collect();
        for x in &basis {
            for y in &basis {
                assert_eq!(alg.pair(x, y), alg.pair(y, x));
                for z in &basis {
                    let xy = alg.multiply(x, y);
                    let yz = alg.multiply(y, z);
                    assert_eq!(alg.pair(&xy, z), alg.pair(x, &yz));
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        for n in 1..=3 {
            let (_, _, alg) = algebra(n);
            let basis: Vec<AlgebraElement> = (0..alg.dim_a())
                .map(AlgebraElement::basis_a)
                .chain((0..alg.dim_b()).map(AlgebraElement::basis_b))
                .collect();
            for x in &basis {
                for y in &basis {
                    for z in &basis {
                        let left = alg.multiply(&alg.multiply(x, y), z);
                        let right = alg.multiply(x, &alg.multiply(y, z));
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_sampled_s4_s5() {
        use rand_core::RngCore;
        for (n, rounds) in [(4usize, 60usize), (5, 30)] {
            let (_, _, alg) = algebra(n);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11 + n as u64);
            let dim = alg.dim_a() + alg.dim_b();
            let mut pick = |r: &mut rand_chacha::ChaCha8Rng| {
                let i = (r.next_u64() as usize) % dim;
                if i < alg.dim_a() {
                    AlgebraElement::basis_a(i)
                } else {
                    AlgebraElement::basis_b(i - alg.dim_a())
                }
            };
            for _ in 0..rounds {
                let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                assert_eq!(
                    alg.multiply(&alg.multiply(&x, &y), &z),
                    alg.multiply(&x, &alg.multiply(&y, &z))
                );
                assert_eq!(
                    alg.pair(&alg.multiply(&x, &y), &z),
                    alg.pair(&x, &alg.multiply(&y, &z))
                );
            }
        }
    }

    use rand_core::SeedableRng;

    #[test]
    fn casimir_examples() {
        let (_, _, alg1) = algebra(1);
        assert_eq!(alg1.casimir(Part::A, false), AlgebraElement::basis_a(0));

        let (g2, _, alg2) = algebra(2);
        let c11 = class_idx(g2, &[1, 1]);
        let k_a = alg2.casimir(Part::A, false);
        assert_eq!(k_a.a_coeff(c11), rat_int(4));

        // (1_A, K_A) = number of classes = p(n).
        for (n, p) in [(1usize, 1i64), (2, 2), (3, 3), (4, 5), (5, 7)] {
            let (_, _, alg) = algebra(n);
            let k_a = alg.casimir(Part::A, false);
            assert_eq!(alg.pair(&alg.unit_a(), &k_a), rat_int(p));
            // All classes of S_n are self-inverse, so the twist is invisible.
            assert_eq!(alg.casimir(Part::A, true), k_a);
        }
    }

    #[test]
    fn v_kb_examples() {
        let (_, _, alg1) = algebra(1);
        let b = AlgebraElement::basis_b(0);
        assert_eq!(alg1.apply_v_kb(&b).unwrap(), b);

        for n in 1..=3 {
            let (_, _, alg) = algebra(n);
            let kb = alg.casimir(Part::B, false);
            assert_eq!(alg.apply_v_kb(&alg.unit_b()).unwrap(), kb);
        }

        let (_, _, alg3) = algebra(3);
        assert!(alg3.apply_v_kb(&alg3.unit_a()).is_err());
    }

    #[test]
    fn cardy_check_values() {
        // (V_{K_B}(E_{β₁}), E_{β₂}) = Σ_α ν_α R[α,β₁]·R[α*,β₂], both sides
        // computed independently, H(S₃).
        let (g, _, alg) = algebra(3);
        for b1 in 0..alg.dim_b() {
            let v = alg.apply_v_kb(&AlgebraElement::basis_b(b1)).unwrap();
            for b2 in 0..alg.dim_b() {
                let lhs = alg.pair(&v, &AlgebraElement::basis_b(b2));
                let mut rhs = Rat::zero();
                for a in 0..alg.dim_a() {
                    let nu = crate::rat_usize(g.centralizer_order(a));
                    rhs += nu
                        * alg.raw().r.at(a, b1)
                        * alg.raw().r.at(g.class_star(a), b2);
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn crosscap_examples() {
        let (_, _, _alg1) = algebra(1);
        let g1 = &algebra(1).0;
        assert_eq!(crosscap(g1), AlgebraElement::basis_a(0));

        let (g2, _, _) = algebra(2);
        let c11 = class_idx(g2, &[1, 1]);
        assert_eq!(crosscap(g2), AlgebraElement::basis_a(c11).scale(&rat_int(2)));

        let (g3, _, _) = algebra(3);
        let u3 = crosscap(g3);
        assert_eq!(u3.a_coeff(class_idx(g3, &[1, 1, 1])), rat_int(4));
        assert_eq!(u3.a_coeff(class_idx(g3, &[2, 1])), Rat::zero());
        assert_eq!(u3.a_coeff(class_idx(g3, &[3])), rat_int(1));
    }

    #[test]
    fn crosscap_axioms_hold() {
        for n in 1..=4 {
            let (_, _, alg) = algebra(n);
            check_crosscap_axioms(alg).unwrap();
            let u = alg.u_element();
            assert_eq!(alg.multiply(&u, &u), alg.casimir(Part::A, true));
        }
    }

    #[test]
    fn phi_examples() {
        let (_, _, alg2) = algebra(2);
        assert_eq!(alg2.phi(&alg2.unit_a()).unwrap(), alg2.unit_b());
        let g2 = &algebra(2).0;
        let c2 = class_idx(g2, &[2]);
        assert_eq!(alg2.phi(&AlgebraElement::basis_a(c2)).unwrap(), alg2.unit_b());

        // Homomorphism property, exhaustive on H(S₃).
        let (_, _, alg3) = algebra(3);
        for a1 in 0..alg3.dim_a() {
            for a2 in 0..alg3.dim_a() {
                let x = AlgebraElement::basis_a(a1);
                let y = AlgebraElement::basis_a(a2);
                let lhs = alg3.phi(&alg3.multiply(&x, &y)).unwrap();
                let rhs = alg3.multiply(&alg3.phi(&x).unwrap(), &alg3.phi(&y).unwrap());
                assert_eq!(lhs, rhs);
                // ab = φ(a)b for every basis b.
                for b in 0..alg3.dim_b() {
                    let eb = AlgebraElement::basis_b(b);
                    assert_eq!(
                        alg3.multiply(&x, &eb),
                        alg3.multiply(&alg3.phi(&x).unwrap(), &eb)
                    );
                }
            }
        }
    }

    #[test]
    fn star_examples() {
        let (g4, d4, alg4) = algebra(4);
        use rand_core::RngCore;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = (rng.next_u64() as usize) % alg4.dim_a();
            let b = (rng.next_u64() as usize) % alg4.dim_b();
            let x = AlgebraElement::basis_a(a).add(&AlgebraElement::basis_b(b).scale(&rat(3, 7)));
            assert_eq!(alg4.star_elt(&alg4.star_elt(&x)), x);
        }
        // Star is the identity on A for S_n.
        for a in 0..alg4.dim_a() {
            assert_eq!(g4.class_star(a), a);
            let x = AlgebraElement::basis_a(a);
            assert_eq!(alg4.star_elt(&x), x);
        }
        // Star on B matches the reversed-pair classes.
        for b in 0..alg4.dim_b() {
            assert_eq!(
                alg4.star_elt(&AlgebraElement::basis_b(b)),
                AlgebraElement::basis_b(d4.star(b))
            );
        }
        // Star preserves the form.
        let (_, _, alg3) = algebra(3);
        let basis: Vec<AlgebraElement> = (0..alg3.dim_a())
            .map(AlgebraElement::basis_a)
            .chain((0..alg3.dim_b()).map(AlgebraElement::basis_b))
            .collect();
        for x in &basis {
            for y in &basis {
                assert_eq!(
                    alg3.pair(&alg3.star_elt(x), &alg3.star_elt(y)),
                    alg3.pair(x, y)
                );
            }
        }
    }

    #[test]
    fn relations_pass_small() {
        for n in 1..=3 {
            let (_, _, alg) = algebra(n);
            let report = alg.verify_relations();
            for check in &report.checks {
                assert!(check.pass, "S_{n}: relation {} failed: {:?}", check.id, check.witness);
            }
        }
    }

    #[test]
    fn zeroed_crosscap_fails_relation_11() {
        let (_, _, alg) = algebra(2);
        let poisoned = alg.with_d_tensor(vec![Rat::zero(), Rat::zero()]);
        let check = poisoned.verify_relation(11);
        assert!(!check.pass);
        assert!(check.witness.is_some());
    }

    #[test]
    fn scalar_algebra_passes() {
        let raw = RawTensors {
            dim_a: 1,
            dim_b: 1,
            f_a: Mat::identity(1),
            f_b: Mat::identity(1),
            r: Mat::identity(1),
            s: {
                let mut s = DenseT3::zeros(1);
                s.set(0, 0, 0, rat_int(1));
                s
            },
            t: {
                let mut t = SparseT3::new();
                t3_set(&mut t, 0, 0, 0, rat_int(1));
                t
            },
            r3: {
                let mut t = SparseT3::new();
                t3_set(&mut t, 0, 0, 0, rat_int(1));
                t
            },
            i_a: Mat::identity(1),
            i_b: Mat::identity(1),
            d: vec![rat_int(1)],
            j_a: vec![rat_int(1)],
            j_b: vec![rat_int(1)],
        };
        let alg = StructureAlgebra::from_raw(raw).unwrap();
        assert!(alg.verify_relations().pass());
    }

    #[test]
    fn cyclic_group_has_nontrivial_star() {
        // C₃: classes of the two 3-cycles swap under inversion.
        let gen = crate::perm::Permutation::from_images(vec![1, 2, 0]).unwrap();
        let g = GroupTable::enumerate(3, &[gen], None).unwrap();
        let d = DihedralClassTable::build(&g);
        assert_eq!(d.len(), 1);
        let alg = from_group(&g, &d).unwrap();
        assert_eq!(alg.dim_a(), 3);
        let perm = alg.star_a_perm().unwrap().to_vec();
        assert!(perm.iter().enumerate().any(|(i, &j)| i != j));
        assert!(alg.verify_relations().pass());
    }
}
