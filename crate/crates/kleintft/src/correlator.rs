//! Correlator evaluation on stratified surface types and the verification
//! suite for the gluing relations correlators must satisfy.
//!
//! A correlator takes interior fields (elements of `A`) and cyclic blocks of
//! boundary fields (elements of `B`, one block per boundary contour). The
//! value is computed by the closed form: multiply all interior fields, the
//! first block's product, and the Casimir-conjugated products of the
//! remaining blocks, then pair against `K_A^g` (orientable) or `U^{2g}`
//! (nonorientable). Genus is tracked doubled throughout so nothing fractional
//! ever appears in an exponent.

use alloc::string::String;
use alloc::{format, vec, vec::Vec};
use core::fmt;
use num_traits::Zero;
use rand_core::{RngCore, SeedableRng};

use crate::algebra::{AlgebraElement, AlgebraError, Part, StructureAlgebra};
use crate::surface::{SurfaceError, SurfaceType};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorrelatorError {
    Surface(SurfaceError),
    /// Argument counts do not match the surface type.
    ArgumentCount { expected: usize, got: usize, what: &'static str },
    /// An interior argument has a B component.
    InteriorNotInA,
    /// A boundary argument has an A component.
    BoundaryNotInB,
    /// The algebra carries no valid crosscap element, so nonorientable
    /// correlators are undefined.
    MissingCrosscap,
    Algebra(AlgebraError),
}

impl fmt::Display for CorrelatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrelatorError::Surface(e) => write!(f, "{e}"),
            CorrelatorError::ArgumentCount { expected, got, what } => {
                write!(f, "{what}: expected {expected} arguments, got {got}")
            }
            CorrelatorError::InteriorNotInA => write!(f, "interior field has a B component"),
            CorrelatorError::BoundaryNotInB => write!(f, "boundary field has an A component"),
            CorrelatorError::MissingCrosscap => {
                write!(f, "nonorientable correlator requires a valid crosscap element")
            }
            CorrelatorError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<SurfaceError> for CorrelatorError {
    fn from(e: SurfaceError) -> Self {
        CorrelatorError::Surface(e)
    }
}

impl From<AlgebraError> for CorrelatorError {
    fn from(e: AlgebraError) -> Self {
        CorrelatorError::Algebra(e)
    }
}

/// A correlator query: a surface type plus matching field arguments. Blocks
/// are listed in the surface's boundary order (ascending point counts).
#[derive(Clone, Debug)]
pub struct CorrelatorQuery {
    pub surface: SurfaceType,
    pub interior: Vec<AlgebraElement>,
    pub blocks: Vec<Vec<AlgebraElement>>,
}

impl CorrelatorQuery {
    pub fn validate(&self) -> Result<(), CorrelatorError> {
        if self.interior.len() != self.surface.interior_points() {
            return Err(CorrelatorError::ArgumentCount {
                expected: self.surface.interior_points(),
                got: self.interior.len(),
                what: "interior fields",
            });
        }
        if self.blocks.len() != self.surface.boundary().len() {
            return Err(CorrelatorError::ArgumentCount {
                expected: self.surface.boundary().len(),
                got: self.blocks.len(),
                what: "boundary blocks",
            });
        }
        for (block, &points) in self.blocks.iter().zip(self.surface.boundary()) {
            if block.len() != points {
                return Err(CorrelatorError::ArgumentCount {
                    expected: points,
                    got: block.len(),
                    what: "block fields",
                });
            }
        }
        if self.interior.iter().any(|x| !x.is_a_only()) {
            return Err(CorrelatorError::InteriorNotInA);
        }
        if self.blocks.iter().flatten().any(|y| !y.is_b_only()) {
            return Err(CorrelatorError::BoundaryNotInB);
        }
        Ok(())
    }
}

/// Evaluates a correlator by the closed form. Empty products are units; the
/// first boundary block is not wrapped in the Casimir conjugation, blocks
/// 2…s are.
pub fn correlator(alg: &StructureAlgebra, q: &CorrelatorQuery) -> Result<Rat, CorrelatorError> {
    q.validate()?;
    if !q.surface.orientable() && !alg.crosscap_valid() {
        return Err(CorrelatorError::MissingCrosscap);
    }

    let mut h = alg.unit_a();
    for x in &q.interior {
        h = alg.multiply(&h, x);
    }
    for (j, block) in q.blocks.iter().enumerate() {
        let mut prod = alg.unit_b();
        for y in block {
            prod = alg.multiply(&prod, y);
        }
        let factor = if j == 0 { prod } else { alg.apply_v_kb(&prod)? };
        h = alg.multiply(&h, &factor);
    }

    let weight = if q.surface.orientable() {
        alg.power(&alg.casimir(Part::A, false), q.surface.doubled_genus() / 2)
    } else {
        alg.power(&alg.u_element(), q.surface.doubled_genus())
    };
    Ok(alg.pair(&h, &weight))
}

/// Correlator of a disjoint union: the product of the component correlators.
pub fn correlator_disjoint(
    alg: &StructureAlgebra,
    queries: &[CorrelatorQuery],
) -> Result<Rat, CorrelatorError> {
    let mut acc = crate::rat_int(1);
    for q in queries {
        acc *= correlator(alg, q)?;
    }
    Ok(acc)
}

/// The thirteen trivial surfaces (connected, `μ ≤ 0`). Each carries 0, 1 or 2
/// field arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialSurface {
    Sphere,
    ProjectivePlane,
    Disc,
    SphereOnePoint,
    DiscOneBoundaryPoint,
    SphereTwoPoints,
    ProjectivePlaneOnePoint,
    Torus,
    KleinBottle,
    DiscOneInteriorPoint,
    DiscTwoBoundaryPoints,
    MoebiusBand,
    Cylinder,
}

impl TrivialSurface {
    pub const ALL: [TrivialSurface; 13] = [
        TrivialSurface::Sphere,
        TrivialSurface::ProjectivePlane,
        TrivialSurface::Disc,
        TrivialSurface::SphereOnePoint,
        TrivialSurface::DiscOneBoundaryPoint,
        TrivialSurface::SphereTwoPoints,
        TrivialSurface::ProjectivePlaneOnePoint,
        TrivialSurface::Torus,
        TrivialSurface::KleinBottle,
        TrivialSurface::DiscOneInteriorPoint,
        TrivialSurface::DiscTwoBoundaryPoints,
        TrivialSurface::MoebiusBand,
        TrivialSurface::Cylinder,
    ];

    /// `(number of A arguments, number of B arguments)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            TrivialSurface::Sphere
            | TrivialSurface::ProjectivePlane
            | TrivialSurface::Disc
            | TrivialSurface::Torus
            | TrivialSurface::KleinBottle
            | TrivialSurface::MoebiusBand
            | TrivialSurface::Cylinder => (0, 0),
            TrivialSurface::SphereOnePoint
            | TrivialSurface::ProjectivePlaneOnePoint
            | TrivialSurface::DiscOneInteriorPoint => (1, 0),
            TrivialSurface::DiscOneBoundaryPoint => (0, 1),
            TrivialSurface::SphereTwoPoints => (2, 0),
            TrivialSurface::DiscTwoBoundaryPoints => (0, 2),
        }
    }
}

/// Value of a trivial surface, computed by the listed closed form as a
/// literal contraction of the raw tensors. This path is independent of the
/// product machinery used by [`correlator`], which makes the two
/// cross-checkable.
pub fn trivial_surface_value(
    alg: &StructureAlgebra,
    kind: TrivialSurface,
    args: &[AlgebraElement],
) -> Result<Rat, CorrelatorError> {
    let (na, nb) = kind.arity();
    if args.len() != na + nb {
        return Err(CorrelatorError::ArgumentCount {
            expected: na + nb,
            got: args.len(),
            what: "trivial surface fields",
        });
    }
    for x in &args[..na] {
        if !x.is_a_only() {
            return Err(CorrelatorError::InteriorNotInA);
        }
    }
    for y in &args[na..] {
        if !y.is_b_only() {
            return Err(CorrelatorError::BoundaryNotInB);
        }
    }

    let raw = alg.raw();
    let (da, db) = (alg.dim_a(), alg.dim_b());
    let j_a_up = |i: usize| -> Rat {
        let mut acc = Rat::zero();
        for k in 0..da {
            if !raw.j_a[k].is_zero() {
                acc += &raw.j_a[k] * alg.f_a_inv().at(k, i);
            }
        }
        acc
    };
    let j_b_up = |i: usize| -> Rat {
        let mut acc = Rat::zero();
        for k in 0..db {
            if !raw.j_b[k].is_zero() {
                acc += &raw.j_b[k] * alg.f_b_inv().at(k, i);
            }
        }
        acc
    };
    let d_up = |i: usize| -> Rat {
        let mut acc = Rat::zero();
        for k in 0..da {
            if !raw.d[k].is_zero() {
                acc += &raw.d[k] * alg.f_a_inv().at(k, i);
            }
        }
        acc
    };

    let value = match kind {
        TrivialSurface::Sphere => (0..da).map(|i| j_a_up(i) * &raw.j_a[i]).sum(),
        TrivialSurface::ProjectivePlane => (0..da).map(|i| d_up(i) * &raw.j_a[i]).sum(),
        TrivialSurface::Disc => (0..db).map(|i| j_b_up(i) * &raw.j_b[i]).sum(),
        TrivialSurface::SphereOnePoint => {
            args[0].a_coeffs().map(|(i, c)| c * &raw.j_a[i]).sum()
        }
        TrivialSurface::DiscOneBoundaryPoint => {
            args[0].b_coeffs().map(|(i, c)| c * &raw.j_b[i]).sum()
        }
        TrivialSurface::SphereTwoPoints => {
            let mut acc = Rat::zero();
            for (i, ci) in args[0].a_coeffs() {
                for (j, cj) in args[1].a_coeffs() {
                    acc += ci * cj * raw.f_a.at(i, j);
                }
            }
            acc
        }
        TrivialSurface::ProjectivePlaneOnePoint => {
            args[0].a_coeffs().map(|(i, c)| c * &raw.d[i]).sum()
        }
        TrivialSurface::Torus => {
            let mut acc = Rat::zero();
            for i in 0..da {
                for j in 0..da {
                    let f = raw.f_a.at(i, j);
                    if !f.is_zero() {
                        acc += f * alg.f_a_inv().at(i, j);
                    }
                }
            }
            acc
        }
        TrivialSurface::KleinBottle => {
            let mut acc = Rat::zero();
            for i in 0..da {
                for j in 0..da {
                    let v = raw.i_a.at(i, j);
                    if !v.is_zero() {
                        acc += v * alg.f_a_inv().at(i, j);
                    }
                }
            }
            acc
        }
        TrivialSurface::DiscOneInteriorPoint => {
            let mut acc = Rat::zero();
            for (i, ci) in args[0].a_coeffs() {
                for j in 0..db {
                    let r = raw.r.at(i, j);
                    if !r.is_zero() {
                        acc += ci * j_b_up(j) * r;
                    }
                }
            }
            acc
        }
        TrivialSurface::DiscTwoBoundaryPoints => {
            let mut acc = Rat::zero();
            for (i, ci) in args[0].b_coeffs() {
                for (j, cj) in args[1].b_coeffs() {
                    acc += ci * cj * raw.f_b.at(i, j);
                }
            }
            acc
        }
        TrivialSurface::MoebiusBand => {
            let mut acc = Rat::zero();
            for i in 0..da {
                let d = d_up(i);
                if d.is_zero() {
                    continue;
                }
                for j in 0..db {
                    let r = raw.r.at(i, j);
                    if !r.is_zero() {
                        acc += &d * j_b_up(j) * r;
                    }
                }
            }
            acc
        }
        TrivialSurface::Cylinder => {
            // Contract (1_B, α')F^{α',α''}(1_B, α'').
            let pair_with_unit = |i: usize| -> Rat {
                let mut acc = Rat::zero();
                for j in 0..db {
                    let r = raw.r.at(i, j);
                    if !r.is_zero() {
                        acc += j_b_up(j) * r;
                    }
                }
                acc
            };
            let v: Vec<Rat> = (0..da).map(pair_with_unit).collect();
            let mut acc = Rat::zero();
            for i in 0..da {
                if v[i].is_zero() {
                    continue;
                }
                for j in 0..da {
                    let f = alg.f_a_inv().at(i, j);
                    if !f.is_zero() {
                        acc += &v[i] * f * &v[j];
                    }
                }
            }
            acc
        }
    };
    Ok(value)
}

/// The gluing relations and unit/crosscap insertion identities checked by
/// [`verify_cut_relations`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutRelationId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    UnitInterior,
    UnitBoundary,
    CrosscapInsertion,
}

impl CutRelationId {
    pub const ALL: [CutRelationId; 12] = [
        CutRelationId::R1,
        CutRelationId::R2,
        CutRelationId::R3,
        CutRelationId::R4,
        CutRelationId::R5,
        CutRelationId::R6,
        CutRelationId::R7,
        CutRelationId::R8,
        CutRelationId::R9,
        CutRelationId::UnitInterior,
        CutRelationId::UnitBoundary,
        CutRelationId::CrosscapInsertion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CutRelationId::R1 => "interior separating contour",
            CutRelationId::R2 => "handle cut",
            CutRelationId::R3 => "Klein-neck cut",
            CutRelationId::R4 => "crosscap cut",
            CutRelationId::R5 => "cut between two holes",
            CutRelationId::R6 => "separating segment",
            CutRelationId::R7 => "handle cut through a hole",
            CutRelationId::R8 => "Klein-neck cut through a hole",
            CutRelationId::R9 => "cut across a crosscap through a hole",
            CutRelationId::UnitInterior => "trivial interior field insertion",
            CutRelationId::UnitBoundary => "trivial boundary field insertion",
            CutRelationId::CrosscapInsertion => "crosscap field insertion",
        }
    }
}

/// One failed instance, with both sides when they evaluated.
#[derive(Clone, Debug)]
pub struct CutRelationFailure {
    pub family: String,
    pub indices: Vec<usize>,
    pub lhs: Option<Rat>,
    pub rhs: Option<Rat>,
}

/// Outcome for one relation.
#[derive(Clone, Debug)]
pub struct CutRelationCheck {
    pub relation: CutRelationId,
    pub instances: usize,
    pub exhaustive: bool,
    pub degenerate_instances: usize,
    pub failures: Vec<CutRelationFailure>,
}

impl CutRelationCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CutRelationReport {
    pub checks: Vec<CutRelationCheck>,
}

impl CutRelationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(CutRelationCheck::pass)
    }
}

/// Domain of one free index in an instance family.
#[derive(Clone, Copy)]
enum Dom {
    A,
    B,
}

/// One instantiation family of a relation: a fixed argument shape and genus
/// data with free basis indices.
struct Family {
    label: String,
    domains: Vec<Dom>,
    degenerate: bool,
    eval: alloc::boxed::Box<
        dyn Fn(&StructureAlgebra, &[usize]) -> (Result<Rat, CorrelatorError>, Result<Rat, CorrelatorError>),
    >,
}

fn eval_corr(
    alg: &StructureAlgebra,
    g2: u32,
    orientable: bool,
    interior: Vec<AlgebraElement>,
    blocks: Vec<Vec<AlgebraElement>>,
) -> Result<Rat, CorrelatorError> {
    let boundary: Vec<usize> = blocks.iter().map(Vec::len).collect();
    let surface = SurfaceType::new(g2, orientable, interior.len(), boundary.clone())?;
    // SurfaceType sorts its boundary; keep blocks aligned with it.
    let mut blocks_sorted = blocks;
    blocks_sorted.sort_by_key(Vec::len);
    let q = CorrelatorQuery { surface, interior, blocks: blocks_sorted };
    correlator(alg, &q)
}

fn basis_a(i: usize) -> AlgebraElement {
    AlgebraElement::basis_a(i)
}

fn basis_b(i: usize) -> AlgebraElement {
    AlgebraElement::basis_b(i)
}

/// Checks one relation, exhaustively when each family's index space is at
/// most `exhaustive_cap`, otherwise on `samples` seeded-random tuples per
/// family.
pub fn verify_cut_relation(
    alg: &StructureAlgebra,
    relation: CutRelationId,
    exhaustive_cap: usize,
    samples: usize,
) -> CutRelationCheck {
    let families = build_families(relation);
    let (da, db) = (alg.dim_a(), alg.dim_b());
    let mut instances = 0usize;
    let mut degenerate_instances = 0usize;
    let mut failures = Vec::new();
    for (fi, fam) in families.iter().enumerate() {
        let sizes: Vec<usize> =
            fam.domains.iter().map(|d| match d { Dom::A => da, Dom::B => db }).collect();
        let space: usize = sizes.iter().product();
        let run_instance =
            |idx: &[usize], failures: &mut Vec<CutRelationFailure>| {
                let (lhs, rhs) = (fam.eval)(alg, idx);
                let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
                if !ok {
                    failures.push(CutRelationFailure {
                        family: fam.label.clone(),
                        indices: idx.to_vec(),
                        lhs: lhs.ok(),
                        rhs: rhs.ok(),
                    });
                }
            };
        if space <= exhaustive_cap {
            let mut idx = vec![0usize; sizes.len()];
            loop {
                run_instance(&idx, &mut failures);
                instances += 1;
                if fam.degenerate {
                    degenerate_instances += 1;
                }
                // Odometer.
                let mut pos = 0;
                loop {
                    if pos == sizes.len() {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < sizes[pos] {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == sizes.len() {
                    break;
                }
            }
        } else {
            let seed = 0x6b6c65696e_u64 ^ ((relation as u64) << 8) ^ fi as u64;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let idx: Vec<usize> =
                    sizes.iter().map(|&s| (rng.next_u64() as usize) % s).collect();
                run_instance(&idx, &mut failures);
                instances += 1;
                if fam.degenerate {
                    degenerate_instances += 1;
                }
            }
        }
    }
    CutRelationCheck {
        relation,
        instances,
        exhaustive: {
            let (da, db) = (alg.dim_a(), alg.dim_b());
            families.iter().all(|fam| {
                fam.domains
                    .iter()
                    .map(|d| match d { Dom::A => da, Dom::B => db })
                    .product::<usize>()
                    <= exhaustive_cap
            })
        },
        degenerate_instances,
        failures,
    }
}

/// Runs the whole suite: the nine gluing relations plus the unit and
/// crosscap insertion identities.
pub fn verify_cut_relations(
    alg: &StructureAlgebra,
    exhaustive_cap: usize,
    samples: usize,
) -> CutRelationReport {
    CutRelationReport {
        checks: CutRelationId::ALL
            .iter()
            .map(|&id| verify_cut_relation(alg, id, exhaustive_cap, samples))
            .collect(),
    }
}

fn fam(
    label: String,
    domains: Vec<Dom>,
    degenerate: bool,
    eval: impl Fn(&StructureAlgebra, &[usize]) -> (Result<Rat, CorrelatorError>, Result<Rat, CorrelatorError>)
        + 'static,
) -> Family {
    Family { label, domains, degenerate, eval: alloc::boxed::Box::new(eval) }
}

/// Contraction over the inverse A form: Σ_{α',α''} F^{α',α''}·term(α',α'').
fn sum_f_a_inv(
    alg: &StructureAlgebra,
    mut term: impl FnMut(usize, usize) -> Result<Rat, CorrelatorError>,
) -> Result<Rat, CorrelatorError> {
    let mut acc = Rat::zero();
    for i in 0..alg.dim_a() {
        for j in 0..alg.dim_a() {
            let f = alg.f_a_inv().at(i, j);
            if !f.is_zero() {
                acc += f * term(i, j)?;
            }
        }
    }
    Ok(acc)
}

fn sum_f_b_inv(
    alg: &StructureAlgebra,
    mut term: impl FnMut(usize, usize) -> Result<Rat, CorrelatorError>,
) -> Result<Rat, CorrelatorError> {
    let mut acc = Rat::zero();
    for i in 0..alg.dim_b() {
        for j in 0..alg.dim_b() {
            let f = alg.f_b_inv().at(i, j);
            if !f.is_zero() {
                acc += f * term(i, j)?;
            }
        }
    }
    Ok(acc)
}

/// Σ_{α'} D^{α'}·term(α').
fn sum_d_up(
    alg: &StructureAlgebra,
    mut term: impl FnMut(usize) -> Result<Rat, CorrelatorError>,
) -> Result<Rat, CorrelatorError> {
    let u = alg.u_element();
    let mut acc = Rat::zero();
    for (i, c) in u.a_coeffs() {
        acc += c * term(i)?;
    }
    Ok(acc)
}

/// Genus pairs for separating relations: (piece 1, piece 2), orientable flag
/// true meaning ε = 1.
const GLUE_PAIRS: [((u32, bool), (u32, bool)); 4] =
    [((0, true), (0, true)), ((0, true), (2, true)), ((0, true), (1, false)), ((1, false), (1, false))];

fn combine(a: (u32, bool), b: (u32, bool)) -> (u32, bool) {
    (a.0 + b.0, a.1 && b.1)
}

fn build_families(relation: CutRelationId) -> Vec<Family> {
    let mut fams = Vec::new();
    match relation {
        CutRelationId::R1 => {
            for &(t1, t2) in &GLUE_PAIRS {
                let tot = combine(t1, t2);
                fams.push(fam(
                    format!("<a1 | a2> at {t1:?}+{t2:?}"),
                    vec![Dom::A, Dom::A],
                    false,
                    move |alg, idx| {
                        let (i, j) = (idx[0], idx[1]);
                        let lhs =
                            eval_corr(alg, tot.0, tot.1, vec![basis_a(i), basis_a(j)], vec![]);
                        let rhs = sum_f_a_inv(alg, |ap, app| {
                            let l = eval_corr(alg, t1.0, t1.1, vec![basis_a(i), basis_a(ap)], vec![])?;
                            let r =
                                eval_corr(alg, t2.0, t2.1, vec![basis_a(app), basis_a(j)], vec![])?;
                            Ok(l * r)
                        });
                        (lhs, rhs)
                    },
                ));
            }
            for &(t1, t2) in &[((0, true), (0, true)), ((1, false), (0, true))] {
                let tot = combine(t1, t2);
                fams.push(fam(
                    format!("<a1 | (b1)> at {t1:?}+{t2:?}"),
                    vec![Dom::A, Dom::B],
                    false,
                    move |alg, idx| {
                        let (i, j) = (idx[0], idx[1]);
                        let lhs = eval_corr(
                            alg,
                            tot.0,
                            tot.1,
                            vec![basis_a(i)],
                            vec![vec![basis_b(j)]],
                        );
                        let rhs = sum_f_a_inv(alg, |ap, app| {
                            let l = eval_corr(alg, t1.0, t1.1, vec![basis_a(i), basis_a(ap)], vec![])?;
                            let r = eval_corr(
                                alg,
                                t2.0,
                                t2.1,
                                vec![basis_a(app)],
                                vec![vec![basis_b(j)]],
                            )?;
                            Ok(l * r)
                        });
                        (lhs, rhs)
                    },
                ));
            }
            // Degenerate: one side carries no fields at all.
            fams.push(fam(
                String::from("<() | a1> at (0,true)+(0,true)"),
                vec![Dom::A],
                true,
                move |alg, idx| {
                    let i = idx[0];
                    let lhs = eval_corr(alg, 0, true, vec![basis_a(i)], vec![]);
                    let rhs = sum_f_a_inv(alg, |ap, app| {
                        let l = eval_corr(alg, 0, true, vec![basis_a(ap)], vec![])?;
                        let r = eval_corr(alg, 0, true, vec![basis_a(app), basis_a(i)], vec![])?;
                        Ok(l * r)
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R2 => {
            for &(g2, or) in &[(0, true), (1, false), (2, true)] {
                fams.push(fam(
                    format!("<a1> handle at ({g2},{or})"),
                    vec![Dom::A],
                    false,
                    move |alg, idx| {
                        let i = idx[0];
                        let lhs = eval_corr(alg, g2 + 2, or, vec![basis_a(i)], vec![]);
                        let rhs = sum_f_a_inv(alg, |ap, app| {
                            eval_corr(alg, g2, or, vec![basis_a(i), basis_a(ap), basis_a(app)], vec![])
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<a1,(b1)> handle at (0,true)"),
                vec![Dom::A, Dom::B],
                false,
                move |alg, idx| {
                    let (i, j) = (idx[0], idx[1]);
                    let lhs =
                        eval_corr(alg, 2, true, vec![basis_a(i)], vec![vec![basis_b(j)]]);
                    let rhs = sum_f_a_inv(alg, |ap, app| {
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![basis_a(i), basis_a(ap), basis_a(app)],
                            vec![vec![basis_b(j)]],
                        )
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R3 => {
            for &g2 in &[0u32, 2] {
                fams.push(fam(
                    format!("<a1> Klein neck over genus2={g2}"),
                    vec![Dom::A],
                    false,
                    move |alg, idx| {
                        let i = idx[0];
                        let lhs = eval_corr(alg, g2 + 2, false, vec![basis_a(i)], vec![]);
                        let rhs = sum_f_a_inv(alg, |ap, app| {
                            let starred = alg.star_elt(&basis_a(app));
                            eval_corr(alg, g2, true, vec![basis_a(i), basis_a(ap), starred], vec![])
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<(b1)> Klein neck over genus2=0"),
                vec![Dom::B],
                false,
                move |alg, idx| {
                    let j = idx[0];
                    let lhs = eval_corr(alg, 2, false, vec![], vec![vec![basis_b(j)]]);
                    let rhs = sum_f_a_inv(alg, |ap, app| {
                        let starred = alg.star_elt(&basis_a(app));
                        eval_corr(alg, 0, true, vec![basis_a(ap), starred], vec![vec![basis_b(j)]])
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R4 => {
            for &(g2, or) in &[(0u32, true), (1, false), (2, true)] {
                fams.push(fam(
                    format!("<a1> crosscap over ({g2},{or})"),
                    vec![Dom::A],
                    false,
                    move |alg, idx| {
                        let i = idx[0];
                        let lhs = eval_corr(alg, g2 + 1, false, vec![basis_a(i)], vec![]);
                        let rhs = sum_d_up(alg, |ap| {
                            eval_corr(alg, g2, or, vec![basis_a(i), basis_a(ap)], vec![])
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<(b1)> crosscap over (0,true)"),
                vec![Dom::B],
                false,
                move |alg, idx| {
                    let j = idx[0];
                    let lhs = eval_corr(alg, 1, false, vec![], vec![vec![basis_b(j)]]);
                    let rhs = sum_d_up(alg, |ap| {
                        eval_corr(alg, 0, true, vec![basis_a(ap)], vec![vec![basis_b(j)]])
                    });
                    (lhs, rhs)
                },
            ));
            fams.push(fam(
                String::from("<> crosscap over (0,true)"),
                vec![],
                true,
                move |alg, _| {
                    let lhs = eval_corr(alg, 1, false, vec![], vec![]);
                    let rhs = sum_d_up(alg, |ap| eval_corr(alg, 0, true, vec![basis_a(ap)], vec![]));
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R5 => {
            for &(g2, or) in &[(0u32, true), (1, false)] {
                fams.push(fam(
                    format!("<(b1),(b2)> hole merge at ({g2},{or})"),
                    vec![Dom::B, Dom::B],
                    false,
                    move |alg, idx| {
                        let (i, j) = (idx[0], idx[1]);
                        let lhs = eval_corr(
                            alg,
                            g2,
                            or,
                            vec![],
                            vec![vec![basis_b(i)], vec![basis_b(j)]],
                        );
                        let rhs = sum_f_b_inv(alg, |bp, bpp| {
                            eval_corr(
                                alg,
                                g2,
                                or,
                                vec![],
                                vec![vec![basis_b(i), basis_b(bp), basis_b(j), basis_b(bpp)]],
                            )
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<a1,(b1),(b2)> hole merge at (0,true)"),
                vec![Dom::A, Dom::B, Dom::B],
                false,
                move |alg, idx| {
                    let (a, i, j) = (idx[0], idx[1], idx[2]);
                    let lhs = eval_corr(
                        alg,
                        0,
                        true,
                        vec![basis_a(a)],
                        vec![vec![basis_b(i)], vec![basis_b(j)]],
                    );
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![basis_a(a)],
                            vec![vec![basis_b(i), basis_b(bp), basis_b(j), basis_b(bpp)]],
                        )
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R6 => {
            for &(t1, t2) in &[((0u32, true), (0u32, true)), ((1, false), (0, true))] {
                let tot = combine(t1, t2);
                fams.push(fam(
                    format!("<a1,(b1 ∪ b2)> separating segment at {t1:?}+{t2:?}"),
                    vec![Dom::A, Dom::B, Dom::B],
                    false,
                    move |alg, idx| {
                        let (a, i, j) = (idx[0], idx[1], idx[2]);
                        let lhs = eval_corr(
                            alg,
                            tot.0,
                            tot.1,
                            vec![basis_a(a)],
                            vec![vec![basis_b(i), basis_b(j)]],
                        );
                        let rhs = sum_f_b_inv(alg, |bp, bpp| {
                            let l = eval_corr(
                                alg,
                                t1.0,
                                t1.1,
                                vec![basis_a(a)],
                                vec![vec![basis_b(i), basis_b(bp)]],
                            )?;
                            let r = eval_corr(
                                alg,
                                t2.0,
                                t2.1,
                                vec![],
                                vec![vec![basis_b(j), basis_b(bpp)]],
                            )?;
                            Ok(l * r)
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<(b1 ∪ b2)> separating segment, no interior"),
                vec![Dom::B, Dom::B],
                true,
                move |alg, idx| {
                    let (i, j) = (idx[0], idx[1]);
                    let lhs =
                        eval_corr(alg, 0, true, vec![], vec![vec![basis_b(i), basis_b(j)]]);
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        let l =
                            eval_corr(alg, 0, true, vec![], vec![vec![basis_b(i), basis_b(bp)]])?;
                        let r =
                            eval_corr(alg, 0, true, vec![], vec![vec![basis_b(j), basis_b(bpp)]])?;
                        Ok(l * r)
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R7 => {
            for &(g2, or) in &[(0u32, true), (1, false)] {
                fams.push(fam(
                    format!("<(b1,b2)> handle through hole at ({g2},{or})"),
                    vec![Dom::B, Dom::B],
                    false,
                    move |alg, idx| {
                        let (i, j) = (idx[0], idx[1]);
                        let lhs = eval_corr(
                            alg,
                            g2 + 2,
                            or,
                            vec![],
                            vec![vec![basis_b(i), basis_b(j)]],
                        );
                        let rhs = sum_f_b_inv(alg, |bp, bpp| {
                            eval_corr(
                                alg,
                                g2,
                                or,
                                vec![],
                                vec![vec![basis_b(i), basis_b(bp)], vec![basis_b(j), basis_b(bpp)]],
                            )
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<a1,(b1,b2)> handle through hole at (0,true)"),
                vec![Dom::A, Dom::B, Dom::B],
                false,
                move |alg, idx| {
                    let (a, i, j) = (idx[0], idx[1], idx[2]);
                    let lhs = eval_corr(
                        alg,
                        2,
                        true,
                        vec![basis_a(a)],
                        vec![vec![basis_b(i), basis_b(j)]],
                    );
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![basis_a(a)],
                            vec![vec![basis_b(i), basis_b(bp)], vec![basis_b(j), basis_b(bpp)]],
                        )
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R8 => {
            fams.push(fam(
                String::from("<(b1,b2)> Klein neck through hole"),
                vec![Dom::B, Dom::B],
                false,
                move |alg, idx| {
                    let (i, j) = (idx[0], idx[1]);
                    let lhs =
                        eval_corr(alg, 2, false, vec![], vec![vec![basis_b(i), basis_b(j)]]);
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        let second = vec![
                            alg.star_elt(&basis_b(j)),
                            alg.star_elt(&basis_b(bpp)),
                        ];
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![],
                            vec![vec![basis_b(i), basis_b(bp)], second],
                        )
                    });
                    (lhs, rhs)
                },
            ));
            fams.push(fam(
                String::from("<(b1,b2,b3)> Klein neck through hole, longer block"),
                vec![Dom::B, Dom::B, Dom::B],
                false,
                move |alg, idx| {
                    let (i, j, k) = (idx[0], idx[1], idx[2]);
                    let lhs = eval_corr(
                        alg,
                        2,
                        false,
                        vec![],
                        vec![vec![basis_b(i), basis_b(j), basis_b(k)]],
                    );
                    // Y₂ = (b2,b3); the reversed starred block is (b3*, b2*).
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        let second = vec![
                            alg.star_elt(&basis_b(k)),
                            alg.star_elt(&basis_b(j)),
                            alg.star_elt(&basis_b(bpp)),
                        ];
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![],
                            vec![vec![basis_b(i), basis_b(bp)], second],
                        )
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::R9 => {
            for &(g2, or) in &[(0u32, true), (1, false)] {
                fams.push(fam(
                    format!("<(b1,b2)> crosscap through hole at ({g2},{or})"),
                    vec![Dom::B, Dom::B],
                    false,
                    move |alg, idx| {
                        let (i, j) = (idx[0], idx[1]);
                        let lhs = eval_corr(
                            alg,
                            g2 + 1,
                            false,
                            vec![],
                            vec![vec![basis_b(i), basis_b(j)]],
                        );
                        let rhs = sum_f_b_inv(alg, |bp, bpp| {
                            eval_corr(
                                alg,
                                g2,
                                or,
                                vec![],
                                vec![vec![
                                    basis_b(i),
                                    basis_b(bp),
                                    alg.star_elt(&basis_b(j)),
                                    alg.star_elt(&basis_b(bpp)),
                                ]],
                            )
                        });
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<(b1,b2,b3)> crosscap through hole, longer block"),
                vec![Dom::B, Dom::B, Dom::B],
                false,
                move |alg, idx| {
                    let (i, j, k) = (idx[0], idx[1], idx[2]);
                    let lhs = eval_corr(
                        alg,
                        1,
                        false,
                        vec![],
                        vec![vec![basis_b(i), basis_b(j), basis_b(k)]],
                    );
                    let rhs = sum_f_b_inv(alg, |bp, bpp| {
                        eval_corr(
                            alg,
                            0,
                            true,
                            vec![],
                            vec![vec![
                                basis_b(i),
                                basis_b(bp),
                                alg.star_elt(&basis_b(k)),
                                alg.star_elt(&basis_b(j)),
                                alg.star_elt(&basis_b(bpp)),
                            ]],
                        )
                    });
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::UnitInterior => {
            for &(g2, or) in &[(0u32, true), (2, true), (1, false)] {
                fams.push(fam(
                    format!("<1_A, a1> at ({g2},{or})"),
                    vec![Dom::A],
                    false,
                    move |alg, idx| {
                        let i = idx[0];
                        let lhs = eval_corr(
                            alg,
                            g2,
                            or,
                            vec![alg.unit_a(), basis_a(i)],
                            vec![],
                        );
                        let rhs = eval_corr(alg, g2, or, vec![basis_a(i)], vec![]);
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<1_A, (b1)> at (0,true)"),
                vec![Dom::B],
                false,
                move |alg, idx| {
                    let j = idx[0];
                    let lhs =
                        eval_corr(alg, 0, true, vec![alg.unit_a()], vec![vec![basis_b(j)]]);
                    let rhs = eval_corr(alg, 0, true, vec![], vec![vec![basis_b(j)]]);
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::UnitBoundary => {
            for &(g2, or) in &[(0u32, true), (1, false)] {
                fams.push(fam(
                    format!("<(1_B, b1)> at ({g2},{or})"),
                    vec![Dom::B],
                    false,
                    move |alg, idx| {
                        let j = idx[0];
                        let lhs = eval_corr(
                            alg,
                            g2,
                            or,
                            vec![],
                            vec![vec![alg.unit_b(), basis_b(j)]],
                        );
                        let rhs = eval_corr(alg, g2, or, vec![], vec![vec![basis_b(j)]]);
                        (lhs, rhs)
                    },
                ));
            }
            fams.push(fam(
                String::from("<a1,(1_B, b1)> at (0,true)"),
                vec![Dom::A, Dom::B],
                false,
                move |alg, idx| {
                    let (a, j) = (idx[0], idx[1]);
                    let lhs = eval_corr(
                        alg,
                        0,
                        true,
                        vec![basis_a(a)],
                        vec![vec![alg.unit_b(), basis_b(j)]],
                    );
                    let rhs = eval_corr(alg, 0, true, vec![basis_a(a)], vec![vec![basis_b(j)]]);
                    (lhs, rhs)
                },
            ));
        }
        CutRelationId::CrosscapInsertion => {
            for &(g2, or) in &[(0u32, true), (2, true), (1, false)] {
                fams.push(fam(
                    format!("<U, a1> at ({g2},{or})"),
                    vec![Dom::A],
                    false,
                    move |alg, idx| {
                        let i = idx[0];
                        let lhs = eval_corr(
                            alg,
                            g2,
                            or,
                            vec![alg.u_element(), basis_a(i)],
                            vec![],
                        );
                        let rhs = eval_corr(alg, g2 + 1, false, vec![basis_a(i)], vec![]);
                        (lhs, rhs)
                    },
                ));
            }
        }
    }
    fams
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::from_group;
    use crate::dihedral::DihedralClassTable;
    use crate::group::GroupTable;
    use crate::perm::Partition;
    use crate::{rat, rat_int};
    use std::sync::OnceLock;

    fn algebra(n: usize) -> &'static (GroupTable, DihedralClassTable, StructureAlgebra) {
        static CACHE: OnceLock<Vec<OnceLock<(GroupTable, DihedralClassTable, StructureAlgebra)>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| (0..5).map(|_| OnceLock::new()).collect());
        cache[n].get_or_init(|| {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            let alg = from_group(&g, &d).unwrap();
            (g, d, alg)
        })
    }

    fn closed_query(g2: u32, orientable: bool, interior: Vec<AlgebraElement>) -> CorrelatorQuery {
        let surface = SurfaceType::new(g2, orientable, interior.len(), vec![]).unwrap();
        CorrelatorQuery { surface, interior, blocks: vec![] }
    }

    #[test]
    fn genus_zero_two_points_is_the_pairing() {
        let (_, _, alg) = algebra(3);
        for i in 0..alg.dim_a() {
            for j in 0..alg.dim_a() {
                let q = closed_query(
                    0,
                    true,
                    vec![AlgebraElement::basis_a(i), AlgebraElement::basis_a(j)],
                );
                assert_eq!(correlator(alg, &q).unwrap(), *alg.raw().f_a.at(i, j));
            }
        }
    }

    #[test]
    fn torus_partition_function_counts_classes() {
        for n in 1..=4 {
            let (_, _, alg) = algebra(n);
            let q = closed_query(2, true, vec![]);
            assert_eq!(
                correlator(alg, &q).unwrap(),
                crate::rat_usize(Partition::all(n as u32).len())
            );
        }
    }

    #[test]
    fn klein_bottle_partition_function_s2() {
        let (g, _, alg) = algebra(2);
        // Independent oracle: #{(z₁,z₂) : z₁²z₂² = 1} / |G|.
        let mut homs = 0usize;
        for z1 in 0..g.order() {
            for z2 in 0..g.order() {
                let w = g.mul(g.mul(z1, z1), g.mul(z2, z2));
                if w == 0 {
                    homs += 1;
                }
            }
        }
        assert_eq!(homs, 4);
        let q = closed_query(2, false, vec![]);
        assert_eq!(correlator(alg, &q).unwrap(), rat(homs as i64, g.order() as i64));
        assert_eq!(correlator(alg, &q).unwrap(), rat_int(2));
    }

    #[test]
    fn sphere_partition_function() {
        for n in 1..=4usize {
            let (g, _, alg) = algebra(n);
            let q = closed_query(0, true, vec![]);
            assert_eq!(correlator(alg, &q).unwrap(), rat(1, g.order() as i64));
        }
    }

    #[test]
    fn trivial_surfaces_match_correlators() {
        // Every closed form from the trivial-surface list against the
        // correlator route (with unit fields standing in for absent points).
        for n in 1..=3usize {
            let (_, _, alg) = algebra(n);
            let unit_b = alg.unit_b();
            let ba = |i| AlgebraElement::basis_a(i);
            let bb = |i| AlgebraElement::basis_b(i);
            for kind in TrivialSurface::ALL {
                let (na, nb) = kind.arity();
                let arg_sets: Vec<Vec<AlgebraElement>> = match (na, nb) {
                    (0, 0) => vec![vec![]],
                    (1, 0) => (0..alg.dim_a()).map(|i| vec![ba(i)]).collect(),
                    (0, 1) => (0..alg.dim_b()).map(|i| vec![bb(i)]).collect(),
                    (2, 0) => (0..alg.dim_a())
                        .flat_map(|i| (0..alg.dim_a()).map(move |j| (i, j)))
                        .map(|(i, j)| vec![ba(i), ba(j)])
                        .collect(),
                    (0, 2) => (0..alg.dim_b())
                        .flat_map(|i| (0..alg.dim_b()).map(move |j| (i, j)))
                        .map(|(i, j)| vec![bb(i), bb(j)])
                        .collect(),
                    _ => unreachable!(),
                };
                for args in arg_sets {
                    let direct = trivial_surface_value(alg, kind, &args).unwrap();
                    let via_correlator = match kind {
                        TrivialSurface::Sphere => {
                            correlator(alg, &closed_query(0, true, vec![])).unwrap()
                        }
                        TrivialSurface::ProjectivePlane => {
                            correlator(alg, &closed_query(1, false, vec![])).unwrap()
                        }
                        TrivialSurface::Disc => {
                            let surface = SurfaceType::new(0, true, 0, vec![1]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: vec![],
                                blocks: vec![vec![unit_b.clone()]],
                            };
                            correlator(alg, &q).unwrap()
                        }
                        TrivialSurface::SphereOnePoint => {
                            correlator(alg, &closed_query(0, true, args.clone())).unwrap()
                        }
                        TrivialSurface::DiscOneBoundaryPoint => {
                            let surface = SurfaceType::new(0, true, 0, vec![1]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: vec![],
                                blocks: vec![args.clone()],
                            };
                            correlator(alg, &q).unwrap()
                        }
                        TrivialSurface::SphereTwoPoints => {
                            correlator(alg, &closed_query(0, true, args.clone())).unwrap()
                        }
                        TrivialSurface::ProjectivePlaneOnePoint => {
                            correlator(alg, &closed_query(1, false, args.clone())).unwrap()
                        }
                        TrivialSurface::Torus => {
                            correlator(alg, &closed_query(2, true, vec![])).unwrap()
                        }
                        TrivialSurface::KleinBottle => {
                            correlator(alg, &closed_query(2, false, vec![])).unwrap()
                        }
                        TrivialSurface::DiscOneInteriorPoint => {
                            let surface = SurfaceType::new(0, true, 1, vec![1]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: args.clone(),
                                blocks: vec![vec![unit_b.clone()]],
                            };
                            correlator(alg, &q).unwrap()
                        }
                        TrivialSurface::DiscTwoBoundaryPoints => {
                            let surface = SurfaceType::new(0, true, 0, vec![2]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: vec![],
                                blocks: vec![args.clone()],
                            };
                            correlator(alg, &q).unwrap()
                        }
                        TrivialSurface::MoebiusBand => {
                            let surface = SurfaceType::new(1, false, 0, vec![1]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: vec![],
                                blocks: vec![vec![unit_b.clone()]],
                            };
                            correlator(alg, &q).unwrap()
                        }
                        TrivialSurface::Cylinder => {
                            let surface = SurfaceType::new(0, true, 0, vec![1, 1]).unwrap();
                            let q = CorrelatorQuery {
                                surface,
                                interior: vec![],
                                blocks: vec![vec![unit_b.clone()], vec![unit_b.clone()]],
                            };
                            correlator(alg, &q).unwrap()
                        }
                    };
                    assert_eq!(direct, via_correlator, "S_{n}: {kind:?}");
                }
            }
        }
    }

    #[test]
    fn landmark_trivial_values() {
        for n in 1..=4usize {
            let (g, _, alg) = algebra(n);
            assert_eq!(
                trivial_surface_value(alg, TrivialSurface::Sphere, &[]).unwrap(),
                rat(1, g.order() as i64)
            );
            let p = crate::rat_usize(Partition::all(n as u32).len());
            assert_eq!(trivial_surface_value(alg, TrivialSurface::Torus, &[]).unwrap(), p);
            assert_eq!(
                trivial_surface_value(alg, TrivialSurface::KleinBottle, &[]).unwrap(),
                p
            );
        }
    }

    #[test]
    fn interior_symmetry_exhaustive_s2() {
        let (_, _, alg) = algebra(2);
        for i in 0..alg.dim_a() {
            for j in 0..alg.dim_a() {
                for &(g2, or) in &[(0u32, true), (2, true), (1, false), (2, false)] {
                    let a = correlator(
                        alg,
                        &closed_query(g2, or, vec![AlgebraElement::basis_a(i), AlgebraElement::basis_a(j)]),
                    )
                    .unwrap();
                    let b = correlator(
                        alg,
                        &closed_query(g2, or, vec![AlgebraElement::basis_a(j), AlgebraElement::basis_a(i)]),
                    )
                    .unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn block_rotation_and_swap_symmetry() {
        use rand_core::{RngCore, SeedableRng};
        for n in [2usize, 3, 4] {
            let (_, _, alg) = algebra(n);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
            let samples = match n {
                2 => 40,
                3 => 25,
                _ => 10,
            };
            for _ in 0..samples {
                let b = |r: &mut rand_chacha::ChaCha8Rng| {
                    AlgebraElement::basis_b((r.next_u64() as usize) % alg.dim_b())
                };
                let (y1, y2, y3) = (b(&mut rng), b(&mut rng), b(&mut rng));
                let (z1, z2, z3) = (b(&mut rng), b(&mut rng), b(&mut rng));
                let surface = SurfaceType::new(0, true, 0, vec![3, 3]).unwrap();
                let base = CorrelatorQuery {
                    surface: surface.clone(),
                    interior: vec![],
                    blocks: vec![
                        vec![y1.clone(), y2.clone(), y3.clone()],
                        vec![z1.clone(), z2.clone(), z3.clone()],
                    ],
                };
                let rotated = CorrelatorQuery {
                    surface: surface.clone(),
                    interior: vec![],
                    blocks: vec![
                        vec![y2.clone(), y3.clone(), y1.clone()],
                        vec![z1.clone(), z2.clone(), z3.clone()],
                    ],
                };
                let swapped = CorrelatorQuery {
                    surface,
                    interior: vec![],
                    blocks: vec![
                        vec![z1.clone(), z2.clone(), z3.clone()],
                        vec![y1.clone(), y2.clone(), y3.clone()],
                    ],
                };
                let v = correlator(alg, &base).unwrap();
                assert_eq!(v, correlator(alg, &rotated).unwrap());
                assert_eq!(v, correlator(alg, &swapped).unwrap());
            }
        }
    }

    #[test]
    fn star_covariance() {
        use rand_core::{RngCore, SeedableRng};
        let (_, _, alg) = algebra(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..25 {
            let a = AlgebraElement::basis_a((rng.next_u64() as usize) % alg.dim_a());
            let y1 = AlgebraElement::basis_b((rng.next_u64() as usize) % alg.dim_b());
            let y2 = AlgebraElement::basis_b((rng.next_u64() as usize) % alg.dim_b());

            // ε = 1: star everything and reverse every block.
            let surface = SurfaceType::new(2, true, 1, vec![2]).unwrap();
            let q = CorrelatorQuery {
                surface: surface.clone(),
                interior: vec![a.clone()],
                blocks: vec![vec![y1.clone(), y2.clone()]],
            };
            let q_star = CorrelatorQuery {
                surface,
                interior: vec![alg.star_elt(&a)],
                blocks: vec![vec![alg.star_elt(&y2), alg.star_elt(&y1)]],
            };
            assert_eq!(correlator(alg, &q).unwrap(), correlator(alg, &q_star).unwrap());

            // ε = 0: starring a single interior argument is invisible, as is
            // reversing-and-starring a single block.
            let surface = SurfaceType::new(1, false, 1, vec![2]).unwrap();
            let q = CorrelatorQuery {
                surface: surface.clone(),
                interior: vec![a.clone()],
                blocks: vec![vec![y1.clone(), y2.clone()]],
            };
            let q_int = CorrelatorQuery {
                surface: surface.clone(),
                interior: vec![alg.star_elt(&a)],
                blocks: vec![vec![y1.clone(), y2.clone()]],
            };
            let q_blk = CorrelatorQuery {
                surface,
                interior: vec![a.clone()],
                blocks: vec![vec![alg.star_elt(&y2), alg.star_elt(&y1)]],
            };
            let v = correlator(alg, &q).unwrap();
            assert_eq!(v, correlator(alg, &q_int).unwrap());
            assert_eq!(v, correlator(alg, &q_blk).unwrap());
        }
    }

    #[test]
    fn orientable_results_ignore_the_crosscap_tensor() {
        let (_, _, alg) = algebra(3);
        let poisoned = alg.with_d_tensor(vec![rat(7, 3); alg.dim_a()]);
        for i in 0..alg.dim_a() {
            for &g2 in &[0u32, 2] {
                let q = closed_query(g2, true, vec![AlgebraElement::basis_a(i)]);
                assert_eq!(correlator(alg, &q).unwrap(), correlator(&poisoned, &q).unwrap());
            }
        }
        let surface = SurfaceType::new(0, true, 0, vec![1, 2]).unwrap();
        let q = CorrelatorQuery {
            surface,
            interior: vec![],
            blocks: vec![
                vec![AlgebraElement::basis_b(0)],
                vec![AlgebraElement::basis_b(1), AlgebraElement::basis_b(2)],
            ],
        };
        assert_eq!(correlator(alg, &q).unwrap(), correlator(&poisoned, &q).unwrap());
    }

    #[test]
    fn multiplicativity_over_disjoint_unions() {
        let (_, _, alg) = algebra(2);
        let q1 = closed_query(2, true, vec![]);
        let q2 = closed_query(0, true, vec![AlgebraElement::basis_a(0)]);
        let product = correlator_disjoint(alg, &[q1.clone(), q2.clone()]).unwrap();
        assert_eq!(
            product,
            correlator(alg, &q1).unwrap() * correlator(alg, &q2).unwrap()
        );
    }

    #[test]
    fn cut_relations_hold_small() {
        for n in 1..=3usize {
            let (_, _, alg) = algebra(n);
            let report = verify_cut_relations(alg, usize::MAX, 0);
            for check in &report.checks {
                assert!(
                    check.pass(),
                    "S_{n}: {} failed: {:?}",
                    check.relation.name(),
                    check.failures.first()
                );
                assert!(check.exhaustive);
                assert!(check.instances > 0);
            }
        }
    }

    #[test]
    fn cut_relations_hold_with_nontrivial_a_star() {
        // Cyclic groups have classes that are not self-inverse, so the
        // starred argument placements in the Klein-neck and crosscap
        // relations act nontrivially on the A side.
        for degree in [3usize, 4, 5] {
            let cycle: Vec<u16> = (1..degree as u16).chain(core::iter::once(0)).collect();
            let gen = crate::perm::Permutation::from_images(cycle).unwrap();
            let g = GroupTable::enumerate(degree, &[gen], None).unwrap();
            let d = DihedralClassTable::build(&g);
            let alg = from_group(&g, &d).unwrap();
            assert!(alg.star_a_perm().unwrap().iter().enumerate().any(|(i, &j)| i != j));
            let report = verify_cut_relations(&alg, usize::MAX, 0);
            for check in &report.checks {
                assert!(
                    check.pass(),
                    "C_{degree}: {} failed: {:?}",
                    check.relation.name(),
                    check.failures.first()
                );
            }
        }
    }

    #[test]
    fn zeroed_crosscap_breaks_the_crosscap_cut() {
        let (_, _, alg) = algebra(2);
        let poisoned = alg.with_d_tensor(vec![Rat::zero(); alg.dim_a()]);
        let check = verify_cut_relation(&poisoned, CutRelationId::R4, usize::MAX, 0);
        assert!(!check.pass());
    }

    #[test]
    fn query_validation_rejects_wrong_components() {
        let (_, _, alg) = algebra(2);
        let q = closed_query(0, true, vec![AlgebraElement::basis_b(0)]);
        assert_eq!(correlator(alg, &q), Err(CorrelatorError::InteriorNotInA));

        let surface = SurfaceType::new(0, true, 0, vec![1]).unwrap();
        let q = CorrelatorQuery {
            surface,
            interior: vec![],
            blocks: vec![vec![AlgebraElement::basis_a(0)]],
        };
        assert_eq!(correlator(alg, &q), Err(CorrelatorError::BoundaryNotInB));

        let surface = SurfaceType::new(0, true, 2, vec![]).unwrap();
        let q = CorrelatorQuery { surface, interior: vec![], blocks: vec![] };
        assert!(matches!(correlator(alg, &q), Err(CorrelatorError::ArgumentCount { .. })));
    }

    #[test]
    fn missing_crosscap_is_an_error_nonorientable() {
        let (_, _, alg) = algebra(2);
        let poisoned = alg.with_d_tensor(vec![Rat::zero(); alg.dim_a()]);
        let q = closed_query(1, false, vec![]);
        assert_eq!(correlator(&poisoned, &q), Err(CorrelatorError::MissingCrosscap));
    }
}
