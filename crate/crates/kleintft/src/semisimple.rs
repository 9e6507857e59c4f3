//! Semisimple block-data models: validation, crosscap enumeration, and
//! realization as explicit structure-constant tensors.
//!
//! A model describes `A = ℂe₁ ⊕ … ⊕ ℂe_m` and `B = M_{n_1} ⊕ … ⊕ M_{n_k}`
//! with pairing scales `μ_j` on the blocks and `λ_i` on the idempotents
//! without a block image. The star involution is a permutation `σ` of the
//! idempotents together with a sign `ν` per fixed block choosing between the
//! transpose and the skew twist; crosscap elements are supported on the
//! star-fixed idempotents with square `1/λ` coordinates off the blocks.

use alloc::collections::BTreeMap;
use alloc::{vec, vec::Vec};
use core::fmt;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraError, DenseT3, RawTensors, SparseT3, StructureAlgebra};
use crate::linalg::Mat;
use crate::{rat_int, Rat};

/// Block-data model of a semisimple structure algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleModel {
    /// Number of orthogonal idempotents spanning `A`.
    pub num_idempotents: usize,
    /// Number of matrix blocks of `B`; at most `num_idempotents`.
    pub num_blocks: usize,
    /// Sizes `n_j` of the matrix blocks.
    pub block_dims: Vec<usize>,
    /// Block pairing scales `μ_j`, nonzero.
    pub mu: Vec<Rat>,
    /// `λ_i` for the idempotents without a block (indices `k..m`), nonzero.
    /// A full-length vector may be given instead; its first `k` entries are
    /// then validated against the forced values `μ_j²`.
    pub lambda: Vec<Rat>,
    /// Involution of `{0,…,m−1}` induced by the star map; must preserve the
    /// block range `{0,…,k−1}`.
    pub sigma: Vec<usize>,
    /// For each star-fixed block: `+1` for the transpose involution, `−1`
    /// for the skew twist (even block size only).
    pub nu_signs: BTreeMap<usize, i8>,
    /// Chosen square-root signs for the crosscap coordinates on the
    /// star-fixed non-block idempotents.
    pub crosscap_signs: BTreeMap<usize, i8>,
}

/// A single violated model condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    FieldLength { field: &'static str, expected: usize, got: usize },
    TooManyBlocks,
    ZeroBlockDim { block: usize },
    ZeroMu { block: usize },
    ZeroLambda { index: usize },
    /// An explicitly supplied `λ_j` for a block index differs from `μ_j²`.
    CardyViolated { block: usize },
    SigmaNotInvolution,
    SigmaMixesBlockRange,
    SwappedBlockMismatch { index: usize },
    SwappedLambdaMismatch { index: usize },
    NuSignInvalid { block: usize },
    NuSignOnOddBlock { block: usize },
    NuSignKeySetWrong,
    CrosscapSignInvalid { index: usize },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::FieldLength { field, expected, got } => {
                write!(f, "{field} has length {got}, expected {expected}")
            }
            ModelViolation::TooManyBlocks => write!(f, "more blocks than idempotents"),
            ModelViolation::ZeroBlockDim { block } => write!(f, "block {block} has size 0"),
            ModelViolation::ZeroMu { block } => write!(f, "mu[{block}] is zero"),
            ModelViolation::ZeroLambda { index } => write!(f, "lambda[{index}] is zero"),
            ModelViolation::CardyViolated { block } => {
                write!(f, "lambda[{block}] differs from mu[{block}]^2")
            }
            ModelViolation::SigmaNotInvolution => write!(f, "sigma is not an involution"),
            ModelViolation::SigmaMixesBlockRange => {
                write!(f, "sigma does not preserve the block range")
            }
            ModelViolation::SwappedBlockMismatch { index } => {
                write!(f, "swapped blocks {index} and its image differ in size or mu")
            }
            ModelViolation::SwappedLambdaMismatch { index } => {
                write!(f, "swapped idempotents {index} and its image differ in lambda")
            }
            ModelViolation::NuSignInvalid { block } => {
                write!(f, "nu sign for block {block} must be +1 or -1")
            }
            ModelViolation::NuSignOnOddBlock { block } => {
                write!(f, "nu = -1 requires an even block size (block {block})")
            }
            ModelViolation::NuSignKeySetWrong => {
                write!(f, "nu signs must be given exactly for the star-fixed blocks")
            }
            ModelViolation::CrosscapSignInvalid { index } => {
                write!(f, "crosscap sign at {index} is not +1/-1 on a star-fixed non-block index")
            }
        }
    }
}

/// Validation outcome; an empty violation list means the model is valid.
#[derive(Clone, Debug, Default)]
pub struct ModelReport {
    pub violations: Vec<ModelViolation>,
}

impl ModelReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemisimpleError {
    InvalidModel(Vec<ModelViolation>),
    /// `1/λ` has no rational square root: the crosscap exists only over a
    /// field extension.
    IrrationalRoot { index: usize },
    /// Missing or inconsistent sign selection.
    SignSelection { index: usize },
    /// The supplied crosscap vector is not one of the admissible ones.
    CrosscapVectorInvalid,
    Algebra(AlgebraError),
}

impl fmt::Display for SemisimpleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemisimpleError::InvalidModel(v) => write!(f, "invalid model ({} violations)", v.len()),
            SemisimpleError::IrrationalRoot { index } => {
                write!(f, "1/lambda[{index}] is not a rational square; field obstruction")
            }
            SemisimpleError::SignSelection { index } => {
                write!(f, "no crosscap sign selected for index {index}")
            }
            SemisimpleError::CrosscapVectorInvalid => write!(f, "crosscap vector not admissible"),
            SemisimpleError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<AlgebraError> for SemisimpleError {
    fn from(e: AlgebraError) -> Self {
        SemisimpleError::Algebra(e)
    }
}

impl SemisimpleModel {
    pub fn m(&self) -> usize {
        self.num_idempotents
    }

    pub fn k(&self) -> usize {
        self.num_blocks
    }

    /// `λ_i`, with the block entries forced to `μ_i²`.
    pub fn lambda_of(&self, i: usize) -> Rat {
        if i < self.num_blocks {
            &self.mu[i] * &self.mu[i]
        } else {
            self.lambda[self.lambda_offset() + i - self.num_blocks].clone()
        }
    }

    fn lambda_offset(&self) -> usize {
        // `lambda` may carry explicit block entries (full length m).
        if self.lambda.len() == self.num_idempotents {
            self.num_blocks
        } else {
            0
        }
    }

    /// Star-fixed indices `P`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.num_idempotents).filter(|&i| self.sigma[i] == i).collect()
    }

    /// Star-fixed non-block indices `P \ P₀`, ascending.
    pub fn free_crosscap_indices(&self) -> Vec<usize> {
        (self.num_blocks..self.num_idempotents).filter(|&i| self.sigma[i] == i).collect()
    }

    /// Checks every structural condition of the classification.
    pub fn validate(&self) -> ModelReport {
        let mut v = Vec::new();
        let (m, k) = (self.num_idempotents, self.num_blocks);
        if k > m {
            v.push(ModelViolation::TooManyBlocks);
        }
        if self.block_dims.len() != k {
            v.push(ModelViolation::FieldLength {
                field: "block_dims",
                expected: k,
                got: self.block_dims.len(),
            });
        }
        if self.mu.len() != k {
            v.push(ModelViolation::FieldLength { field: "mu", expected: k, got: self.mu.len() });
        }
        if self.lambda.len() != m.saturating_sub(k) && self.lambda.len() != m {
            v.push(ModelViolation::FieldLength {
                field: "lambda",
                expected: m.saturating_sub(k),
                got: self.lambda.len(),
            });
        }
        if self.sigma.len() != m {
            v.push(ModelViolation::FieldLength {
                field: "sigma",
                expected: m,
                got: self.sigma.len(),
            });
        }
        if !v.is_empty() {
            return ModelReport { violations: v };
        }

        for (j, &n) in self.block_dims.iter().enumerate() {
            if n == 0 {
                v.push(ModelViolation::ZeroBlockDim { block: j });
            }
        }
        for (j, mu) in self.mu.iter().enumerate() {
            if mu.is_zero() {
                v.push(ModelViolation::ZeroMu { block: j });
            }
        }
        if self.lambda.len() == m {
            // Explicit block lambdas: must satisfy the Cardy condition.
            for j in 0..k {
                if self.lambda[j] != &self.mu[j] * &self.mu[j] {
                    v.push(ModelViolation::CardyViolated { block: j });
                }
            }
            for (idx, l) in self.lambda.iter().enumerate().skip(k) {
                if l.is_zero() {
                    v.push(ModelViolation::ZeroLambda { index: idx });
                }
            }
        } else {
            for (off, l) in self.lambda.iter().enumerate() {
                if l.is_zero() {
                    v.push(ModelViolation::ZeroLambda { index: k + off });
                }
            }
        }

        let sigma_ok = self.sigma.iter().all(|&j| j < m)
            && (0..m).all(|i| self.sigma[self.sigma[i]] == i);
        if !sigma_ok {
            v.push(ModelViolation::SigmaNotInvolution);
            return ModelReport { violations: v };
        }
        if (0..k).any(|i| self.sigma[i] >= k) {
            v.push(ModelViolation::SigmaMixesBlockRange);
            return ModelReport { violations: v };
        }
        for i in 0..k {
            let j = self.sigma[i];
            if j != i && (self.block_dims[i] != self.block_dims[j] || self.mu[i] != self.mu[j]) {
                v.push(ModelViolation::SwappedBlockMismatch { index: i });
            }
        }
        for i in k..m {
            let j = self.sigma[i];
            if j != i && self.lambda_of(i) != self.lambda_of(j) {
                v.push(ModelViolation::SwappedLambdaMismatch { index: i });
            }
        }

        let p0: Vec<usize> = (0..k).filter(|&i| self.sigma[i] == i).collect();
        if self.nu_signs.keys().copied().collect::<Vec<_>>() != p0 {
            v.push(ModelViolation::NuSignKeySetWrong);
        }
        for (&i, &sign) in &self.nu_signs {
            if sign != 1 && sign != -1 {
                v.push(ModelViolation::NuSignInvalid { block: i });
            } else if sign == -1 && i < self.block_dims.len() && self.block_dims[i] % 2 != 0 {
                v.push(ModelViolation::NuSignOnOddBlock { block: i });
            }
        }
        let free = self.free_crosscap_indices();
        for (&i, &sign) in &self.crosscap_signs {
            if !free.contains(&i) || (sign != 1 && sign != -1) {
                v.push(ModelViolation::CrosscapSignInvalid { index: i });
            }
        }
        ModelReport { violations: v }
    }

    /// Crosscap coordinate forced on a star-fixed block: `ν_i / μ_i`.
    fn block_coordinate(&self, i: usize) -> Rat {
        let sign = rat_int(self.nu_signs[&i] as i64);
        sign / self.mu[i].clone()
    }

    /// Positive square root of `1/λ_j`, when it is rational.
    fn root_coordinate(&self, j: usize) -> Result<Rat, SemisimpleError> {
        let lambda = self.lambda_of(j);
        if !lambda.is_positive() {
            return Err(SemisimpleError::IrrationalRoot { index: j });
        }
        let inv = rat_int(1) / lambda;
        let num = sqrt_exact(inv.numer()).ok_or(SemisimpleError::IrrationalRoot { index: j })?;
        let den = sqrt_exact(inv.denom()).ok_or(SemisimpleError::IrrationalRoot { index: j })?;
        Ok(Rat::new(num, den))
    }

    /// All crosscap elements admitted by the model: exactly `2^p` coordinate
    /// vectors on the idempotent basis, `p` the number of star-fixed
    /// non-block idempotents.
    pub fn enumerate_crosscaps(&self) -> Result<Vec<Vec<Rat>>, SemisimpleError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(SemisimpleError::InvalidModel(report.violations));
        }
        let m = self.num_idempotents;
        let free = self.free_crosscap_indices();
        let roots: Vec<Rat> =
            free.iter().map(|&j| self.root_coordinate(j)).collect::<Result<_, _>>()?;
        let mut base = vec![Rat::zero(); m];
        for i in 0..self.num_blocks {
            if self.sigma[i] == i {
                base[i] = self.block_coordinate(i);
            }
        }
        let mut out = Vec::with_capacity(1 << free.len());
        for mask in 0u64..(1u64 << free.len()) {
            let mut u = base.clone();
            for (bit, (&j, root)) in free.iter().zip(&roots).enumerate() {
                u[j] = if mask >> bit & 1 == 0 { root.clone() } else { -root.clone() };
            }
            out.push(u);
        }
        Ok(out)
    }

    /// The crosscap selected by `crosscap_signs` (which must cover every
    /// star-fixed non-block index).
    pub fn selected_crosscap(&self) -> Result<Vec<Rat>, SemisimpleError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(SemisimpleError::InvalidModel(report.violations));
        }
        let mut u = vec![Rat::zero(); self.num_idempotents];
        for i in 0..self.num_blocks {
            if self.sigma[i] == i {
                u[i] = self.block_coordinate(i);
            }
        }
        for &j in &self.free_crosscap_indices() {
            let sign = *self
                .crosscap_signs
                .get(&j)
                .ok_or(SemisimpleError::SignSelection { index: j })?;
            let root = self.root_coordinate(j)?;
            u[j] = if sign >= 0 { root } else { -root };
        }
        Ok(u)
    }

    /// Realizes the model with the given crosscap as explicit tensors.
    ///
    /// Basis order: `e_0,…,e_{m−1}` on A; blocks in order on B, each block
    /// row-major over its matrix units.
    pub fn realize(&self, crosscap: &[Rat]) -> Result<StructureAlgebra, SemisimpleError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(SemisimpleError::InvalidModel(report.violations));
        }
        if crosscap.len() != self.num_idempotents || !self.crosscap_admissible(crosscap) {
            return Err(SemisimpleError::CrosscapVectorInvalid);
        }
        let (m, k) = (self.num_idempotents, self.num_blocks);

        // Block layout of the B basis.
        let mut offset = vec![0usize; k + 1];
        for j in 0..k {
            offset[j + 1] = offset[j] + self.block_dims[j] * self.block_dims[j];
        }
        let dim_b = offset[k];
        let bidx = |s: usize, i: usize, j: usize| offset[s] + i * self.block_dims[s] + j;

        let mut f_a = Mat::zeros(m, m);
        for i in 0..m {
            f_a.set(i, i, self.lambda_of(i));
        }
        let mut s_t = DenseT3::zeros(m);
        for i in 0..m {
            s_t.set(i, i, i, self.lambda_of(i));
        }

        let mut f_b = Mat::zeros(dim_b, dim_b);
        let mut t = SparseT3::new();
        let mut r3 = SparseT3::new();
        let mut r = Mat::zeros(m, dim_b);
        let mut j_b = vec![Rat::zero(); dim_b];
        for s in 0..k {
            let n = self.block_dims[s];
            let mu = &self.mu[s];
            for i in 0..n {
                for j in 0..n {
                    f_b.set(bidx(s, i, j), bidx(s, j, i), mu.clone());
                    if i == j {
                        r.set(s, bidx(s, i, j), mu.clone());
                        j_b[bidx(s, i, j)] = mu.clone();
                    }
                    for l in 0..n {
                        // (E_{i,j}E_{j,l}, E_{l,i}) = μ.
                        crate::algebra::t3_set(
                            &mut t,
                            bidx(s, i, j),
                            bidx(s, j, l),
                            bidx(s, l, i),
                            mu.clone(),
                        );
                    }
                    // (e_s E_{i,j}, E_{j,i}) = μ.
                    crate::algebra::t3_set(&mut r3, s, bidx(s, i, j), bidx(s, j, i), mu.clone());
                }
            }
        }

        // Star involution: I_{x,y} = (x*, y).
        let mut i_a = Mat::zeros(m, m);
        for i in 0..m {
            i_a.set(i, self.sigma[i], self.lambda_of(i));
        }
        let mut i_b = Mat::zeros(dim_b, dim_b);
        for s in 0..k {
            let n = self.block_dims[s];
            for i in 0..n {
                for j in 0..n {
                    let ((s2, i2, j2), sign) = self.star_image(s, i, j);
                    // (± E_{s2,i2,j2}, E_{s2,j2,i2}) = ± μ_{s2}.
                    let v = if sign >= 0 { self.mu[s2].clone() } else { -self.mu[s2].clone() };
                    i_b.set(bidx(s, i, j), bidx(s2, j2, i2), v);
                }
            }
        }

        let d: Vec<Rat> = (0..m).map(|i| &crosscap[i] * self.lambda_of(i)).collect();
        let j_a: Vec<Rat> = (0..m).map(|i| self.lambda_of(i)).collect();

        let raw = RawTensors {
            dim_a: m,
            dim_b,
            f_a,
            f_b,
            r,
            s: s_t,
            t,
            r3,
            i_a,
            i_b,
            d,
            j_a,
            j_b,
        };
        Ok(StructureAlgebra::from_raw(raw)?)
    }

    /// Star image of a matrix unit: block, indices, and sign.
    fn star_image(&self, s: usize, i: usize, j: usize) -> ((usize, usize, usize), i8) {
        let s2 = self.sigma[s];
        if s2 != s {
            return ((s2, j, i), 1);
        }
        match self.nu_signs[&s] {
            1 => ((s, j, i), 1),
            _ => {
                let n = self.block_dims[s];
                let r = n / 2;
                let eps = |x: usize| (x >= r) as u32;
                let tau = |x: usize| (x + r) % n;
                let sign = if (eps(i) + eps(j)) % 2 == 0 { 1 } else { -1 };
                ((s, tau(j), tau(i)), sign)
            }
        }
    }

    fn crosscap_admissible(&self, u: &[Rat]) -> bool {
        for i in 0..self.num_idempotents {
            if self.sigma[i] != i {
                if !u[i].is_zero() {
                    return false;
                }
            } else if i < self.num_blocks {
                if u[i] != self.block_coordinate(i) {
                    return false;
                }
            } else if &u[i] * &u[i] != rat_int(1) / self.lambda_of(i) {
                return false;
            }
        }
        true
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
fn sqrt_exact(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// Counts the `(star, crosscap)` pairs extending a bare block model (no star,
/// no crosscap data) to the full structure: over the complex numbers every
/// star-fixed non-block idempotent contributes two crosscap choices and every
/// star-fixed even block two involution flavors.
pub fn count_open_closed_extensions(
    m: usize,
    k: usize,
    block_dims: &[usize],
    mu: &[Rat],
    lambda_tail: &[Rat],
) -> u128 {
    fn go(
        next: usize,
        m: usize,
        k: usize,
        block_dims: &[usize],
        mu: &[Rat],
        lambda_of: &dyn Fn(usize) -> Rat,
        sigma: &mut Vec<usize>,
    ) -> u128 {
        let i = match (next..m).find(|&i| sigma[i] == usize::MAX) {
            Some(i) => i,
            None => {
                let mut count: u128 = 1;
                for s in 0..m {
                    if sigma[s] != s {
                        continue;
                    }
                    if s < k {
                        count *= if block_dims[s] % 2 == 0 { 2 } else { 1 };
                    } else {
                        count *= 2;
                    }
                }
                return count;
            }
        };
        let mut total = 0u128;
        sigma[i] = i;
        total += go(i + 1, m, k, block_dims, mu, lambda_of, sigma);
        sigma[i] = usize::MAX;
        // Swap i with a later compatible partner in the same range.
        let hi = if i < k { k } else { m };
        for j in (i + 1)..hi {
            if sigma[j] != usize::MAX {
                continue;
            }
            let compatible = if i < k {
                block_dims[i] == block_dims[j] && mu[i] == mu[j]
            } else {
                lambda_of(i) == lambda_of(j)
            };
            if compatible {
                sigma[i] = j;
                sigma[j] = i;
                total += go(i + 1, m, k, block_dims, mu, lambda_of, sigma);
                sigma[i] = usize::MAX;
                sigma[j] = usize::MAX;
            }
        }
        total
    }
    let lambda_of = move |i: usize| -> Rat {
        if i < k {
            &mu[i] * &mu[i]
        } else {
            lambda_tail[i - k].clone()
        }
    };
    let mut sigma = vec![usize::MAX; m];
    go(0, m, k, block_dims, mu, &lambda_of, &mut sigma)
}
