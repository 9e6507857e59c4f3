//! Brute-force enumeration of covering monodromy data.
//!
//! Weighted cover counts `Σ 1/|Aut π|` are computed as homomorphism counts
//! divided by the group order: tuples of group elements satisfying the
//! surface relator with prescribed branch classes for closed surfaces,
//! cyclic involution tuples for polygons, and `(a, s)` pairs for the disc
//! with one interior and one boundary point. These counts are the ground
//! truth against which the algebraic tensors are validated.

use alloc::collections::BTreeMap;
use alloc::{vec, vec::Vec};
use core::fmt;
use core::ops::Range;

use crate::algebra::StructureAlgebra;
use crate::dihedral::DihedralClassTable;
use crate::group::GroupTable;
use crate::{rat_usize, Rat};

/// Default cap on the estimated tuple count.
pub const DEFAULT_LOOP_CAP: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// Estimated loop count exceeds the cap; the instance is beyond desk scale.
    InfeasibleSize { estimate: u128, cap: u128 },
    /// Orientable surfaces have even doubled genus.
    OddOrientableGenus,
    /// A nonorientable surface needs at least one crosscap.
    MissingCrosscaps,
    /// A class label is out of range.
    InvalidClass { index: usize },
    /// A polygon needs at least one corner.
    EmptyPolygon,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::InfeasibleSize { estimate, cap } => {
                write!(f, "estimated {estimate} tuples exceeds the cap of {cap}")
            }
            OracleError::OddOrientableGenus => {
                write!(f, "orientable covers need even doubled genus")
            }
            OracleError::MissingCrosscaps => {
                write!(f, "nonorientable covers need doubled genus >= 1")
            }
            OracleError::InvalidClass { index } => write!(f, "class index {index} out of range"),
            OracleError::EmptyPolygon => write!(f, "polygon needs at least one corner"),
        }
    }
}

enum Slot {
    /// Fixed element (the pinned first branch point).
    Fixed(usize),
    /// A branch point ranging over a conjugacy class.
    Branch(Vec<usize>),
    /// A handle pair contributing the commutator `x y x⁻¹ y⁻¹`.
    HandlePair,
    /// A crosscap generator contributing `z²`.
    Crosscap,
}

impl Slot {
    fn size(&self, order: usize) -> u128 {
        match self {
            Slot::Fixed(_) => 1,
            Slot::Branch(members) => members.len() as u128,
            Slot::HandlePair => (order as u128) * (order as u128),
            Slot::Crosscap => order as u128,
        }
    }
}

/// A closed-surface count: relator `a₁…a_m · Π[xⱼ,yⱼ]` (orientable) or
/// `a₁…a_m · Πz_k²` (nonorientable) equal to the identity.
pub struct ClosedCountSpec<'a> {
    group: &'a GroupTable,
    slots: Vec<Slot>,
    /// Class size of the pinned first branch point (1 when nothing is pinned).
    pin_multiplier: usize,
}

impl<'a> ClosedCountSpec<'a> {
    /// Builds the spec. With `pin_first` (and at least one branch class) the
    /// first branch point is frozen to its class representative and the count
    /// is scaled by the class size; conjugation-invariance of the solution
    /// set makes this exact, and the plain mode is kept for cross-checking.
    pub fn new(
        group: &'a GroupTable,
        doubled_genus: u32,
        orientable: bool,
        classes: &[usize],
        pin_first: bool,
    ) -> Result<Self, OracleError> {
        if orientable && doubled_genus % 2 != 0 {
            return Err(OracleError::OddOrientableGenus);
        }
        if !orientable && doubled_genus == 0 {
            return Err(OracleError::MissingCrosscaps);
        }
        for &c in classes {
            if c >= group.classes().len() {
                return Err(OracleError::InvalidClass { index: c });
            }
        }
        let mut slots = Vec::new();
        let mut pin_multiplier = 1;
        for (i, &c) in classes.iter().enumerate() {
            if i == 0 && pin_first {
                slots.push(Slot::Fixed(group.classes()[c].rep));
                pin_multiplier = group.classes()[c].size;
            } else {
                slots.push(Slot::Branch(group.class_members(c).to_vec()));
            }
        }
        if orientable {
            for _ in 0..doubled_genus / 2 {
                slots.push(Slot::HandlePair);
            }
        } else {
            for _ in 0..doubled_genus {
                slots.push(Slot::Crosscap);
            }
        }
        Ok(ClosedCountSpec { group, slots, pin_multiplier })
    }

    /// Estimated number of tuples visited.
    pub fn estimate(&self) -> u128 {
        self.slots.iter().map(|s| s.size(self.group.order())).product()
    }

    /// Size of the outermost coordinate, for splitting work across threads.
    pub fn outer_size(&self) -> usize {
        match self.slots.first() {
            None => 1,
            Some(Slot::Fixed(_)) => 1,
            Some(Slot::Branch(members)) => members.len(),
            Some(Slot::HandlePair) | Some(Slot::Crosscap) => self.group.order(),
        }
    }

    /// Homomorphism count restricted to an outer-coordinate range. Each
    /// worker owns a private accumulator; the full count is the sum over a
    /// partition of `0..outer_size()`.
    pub fn count_homs_in(&self, outer: Range<usize>) -> u64 {
        let g = self.group;
        let mut count = 0u64;
        let mut walk = |acc: usize, slots: &[Slot]| {
            count += count_rec(g, acc, slots);
        };
        match self.slots.first() {
            None => {
                if outer.contains(&0) {
                    walk(0, &[]);
                }
            }
            Some(Slot::Fixed(rep)) => {
                if outer.contains(&0) {
                    walk(*rep, &self.slots[1..]);
                }
            }
            Some(Slot::Branch(members)) => {
                for i in outer {
                    walk(members[i], &self.slots[1..]);
                }
            }
            Some(Slot::HandlePair) => {
                for x in outer {
                    let xi = g.inv(x);
                    for y in 0..g.order() {
                        let comm = g.mul(g.mul(x, y), g.mul(xi, g.inv(y)));
                        walk(comm, &self.slots[1..]);
                    }
                }
            }
            Some(Slot::Crosscap) => {
                for z in outer {
                    walk(g.mul(z, z), &self.slots[1..]);
                }
            }
        }
        count
    }

    /// Applies the pinning multiplier and the `1/|G|` weight to a summed
    /// inner homomorphism count.
    pub fn finish(&self, inner_homs: u64) -> (Rat, u64) {
        let homs = inner_homs * self.pin_multiplier as u64;
        (rat_usize(homs as usize) / rat_usize(self.group.order()), homs)
    }

    /// Weighted count `Σ 1/|Aut π|` and the underlying homomorphism count.
    pub fn count(&self) -> (Rat, u64) {
        self.finish(self.count_homs_in(0..self.outer_size()))
    }
}

fn count_rec(g: &GroupTable, acc: usize, slots: &[Slot]) -> u64 {
    match slots.split_first() {
        None => u64::from(acc == 0),
        Some((Slot::Fixed(rep), rest)) => count_rec(g, g.mul(acc, *rep), rest),
        Some((Slot::Branch(members), rest)) => {
            members.iter().map(|&m| count_rec(g, g.mul(acc, m), rest)).sum()
        }
        Some((Slot::HandlePair, rest)) => {
            let mut total = 0;
            for x in 0..g.order() {
                let xi = g.inv(x);
                for y in 0..g.order() {
                    let comm = g.mul(g.mul(x, y), g.mul(xi, g.inv(y)));
                    total += count_rec(g, g.mul(acc, comm), rest);
                }
            }
            total
        }
        Some((Slot::Crosscap, rest)) => {
            (0..g.order()).map(|z| count_rec(g, g.mul(acc, g.mul(z, z)), rest)).sum()
        }
    }
}

/// Weighted count of covers of a closed surface with the given branch
/// classes. Pins the first branch point to its representative when possible.
pub fn count_closed(
    group: &GroupTable,
    doubled_genus: u32,
    orientable: bool,
    classes: &[usize],
    cap: Option<u128>,
) -> Result<(Rat, u64), OracleError> {
    count_closed_with_mode(group, doubled_genus, orientable, classes, !classes.is_empty(), cap)
}

/// As [`count_closed`], with the first-branch pinning chosen explicitly.
pub fn count_closed_with_mode(
    group: &GroupTable,
    doubled_genus: u32,
    orientable: bool,
    classes: &[usize],
    pin_first: bool,
    cap: Option<u128>,
) -> Result<(Rat, u64), OracleError> {
    let spec = ClosedCountSpec::new(group, doubled_genus, orientable, classes, pin_first)?;
    let cap = cap.unwrap_or(DEFAULT_LOOP_CAP);
    let estimate = spec.estimate();
    if estimate > cap {
        return Err(OracleError::InfeasibleSize { estimate, cap });
    }
    Ok(spec.count())
}

/// A polygon count: involutions `s₁,…,s_b` on the arcs of a disc whose
/// boundary carries `b` corners, corner `i` reading the pair class of
/// `(s_{i−1}, s_i)` with indices mod `b`.
pub struct PolygonCountSpec<'a> {
    group: &'a GroupTable,
    dihedral: &'a DihedralClassTable,
    corners: Vec<usize>,
    /// `(first arc, class) → compatible second arcs`.
    successors: BTreeMap<(usize, usize), Vec<usize>>,
}

impl<'a> PolygonCountSpec<'a> {
    pub fn new(
        group: &'a GroupTable,
        dihedral: &'a DihedralClassTable,
        corners: &[usize],
    ) -> Result<Self, OracleError> {
        if corners.is_empty() {
            return Err(OracleError::EmptyPolygon);
        }
        for &c in corners {
            if c >= dihedral.len() {
                return Err(OracleError::InvalidClass { index: c });
            }
        }
        let mut successors: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &s in group.involutions() {
            for &t in group.involutions() {
                let cls = dihedral.class_of_pair(s, t).expect("involutions");
                successors.entry((s, cls)).or_default().push(t);
            }
        }
        Ok(PolygonCountSpec { group, dihedral, corners: corners.to_vec(), successors })
    }

    pub fn estimate(&self) -> u128 {
        let inv = self.group.involutions().len() as u128;
        // Pruned search visits far fewer tuples; this bounds the worst case.
        self.corners.iter().fold(1u128, |acc, _| acc.saturating_mul(inv))
    }

    pub fn outer_size(&self) -> usize {
        self.group.involutions().len()
    }

    pub fn count_homs_in(&self, outer: Range<usize>) -> u64 {
        let invs = self.group.involutions();
        let b = self.corners.len();
        let mut count = 0u64;
        for i in outer {
            let s1 = invs[i];
            if b == 1 {
                if self.dihedral.class_of_pair(s1, s1) == Some(self.corners[0]) {
                    count += 1;
                }
                continue;
            }
            count += self.extend(s1, s1, 1);
        }
        count
    }

    /// Extends `(…, prev)` by arcs `depth+1..b`, closing up against `first`.
    fn extend(&self, first: usize, prev: usize, depth: usize) -> u64 {
        let b = self.corners.len();
        // Corner `depth+1` (1-based) constrains (s_depth, s_{depth+1}).
        let class = self.corners[depth];
        let empty = Vec::new();
        let nexts = self.successors.get(&(prev, class)).unwrap_or(&empty);
        if depth + 1 == b {
            // Last arc also closes corner 1: (s_b, s_1) must match corners[0].
            return nexts
                .iter()
                .filter(|&&last| self.dihedral.class_of_pair(last, first) == Some(self.corners[0]))
                .count() as u64;
        }
        nexts.iter().map(|&next| self.extend(first, next, depth + 1)).sum()
    }

    pub fn count(&self) -> (Rat, u64) {
        let homs = self.count_homs_in(0..self.outer_size());
        (rat_usize(homs as usize) / rat_usize(self.group.order()), homs)
    }
}

/// Weighted count of covers of a disc with `b` boundary corners carrying the
/// given pair classes.
pub fn count_polygon(
    group: &GroupTable,
    dihedral: &DihedralClassTable,
    corners: &[usize],
    cap: Option<u128>,
) -> Result<(Rat, u64), OracleError> {
    let spec = PolygonCountSpec::new(group, dihedral, corners)?;
    let cap = cap.unwrap_or(DEFAULT_LOOP_CAP);
    let estimate = spec.estimate();
    if estimate > cap {
        return Err(OracleError::InfeasibleSize { estimate, cap });
    }
    Ok(spec.count())
}

/// Weighted count of covers of a disc with one interior point of class
/// `alpha` and one boundary point of pair class `beta`: pairs `(a, s)` with
/// `a ∈ α`, `s² = 1`, and `(s, a s a⁻¹)` in `β`.
pub fn count_disc_mixed(
    group: &GroupTable,
    dihedral: &DihedralClassTable,
    alpha: usize,
    beta: usize,
) -> Result<(Rat, u64), OracleError> {
    if alpha >= group.classes().len() {
        return Err(OracleError::InvalidClass { index: alpha });
    }
    if beta >= dihedral.len() {
        return Err(OracleError::InvalidClass { index: beta });
    }
    let mut homs = 0u64;
    for &a in group.class_members(alpha) {
        for &s in group.involutions() {
            if dihedral.class_of_pair(s, group.conj(a, s)) == Some(beta) {
                homs += 1;
            }
        }
    }
    Ok((rat_usize(homs as usize) / rat_usize(group.order()), homs))
}

/// Sphere triple counts for all class triples in one pass over `G²`:
/// `table[α₁][α₂][α₃] = #{(a₁,a₂,a₃) : aᵢ ∈ αᵢ, a₁a₂a₃ = 1} / |G|`.
pub fn sphere_triple_table(group: &GroupTable) -> Vec<Vec<Vec<Rat>>> {
    let da = group.classes().len();
    let mut bins = vec![vec![vec![0usize; da]; da]; da];
    for g in 0..group.order() {
        for h in 0..group.order() {
            let third = group.inv(group.mul(g, h));
            bins[group.class_of(g)][group.class_of(h)][group.class_of(third)] += 1;
        }
    }
    let order = rat_usize(group.order());
    bins.into_iter()
        .map(|m| {
            m.into_iter()
                .map(|row| row.into_iter().map(|c| rat_usize(c) / &order).collect())
                .collect()
        })
        .collect()
}

/// Triangle counts for all corner triples in one pass over involution
/// triples: `table[β₁][β₂][β₃] = #{(x,y,z) : (x,y)∈β₁, (y,z)∈β₂, (z,x)∈β₃}/|G|`.
pub fn triangle_table(group: &GroupTable, dihedral: &DihedralClassTable) -> Vec<Vec<Vec<Rat>>> {
    let db = dihedral.len();
    let mut bins = vec![vec![vec![0usize; db]; db]; db];
    for &x in group.involutions() {
        for &y in group.involutions() {
            let c1 = dihedral.class_of_pair(x, y).expect("involutions");
            for &z in group.involutions() {
                let c2 = dihedral.class_of_pair(y, z).expect("involutions");
                let c3 = dihedral.class_of_pair(z, x).expect("involutions");
                bins[c1][c2][c3] += 1;
            }
        }
    }
    let order = rat_usize(group.order());
    bins.into_iter()
        .map(|m| {
            m.into_iter()
                .map(|row| row.into_iter().map(|c| rat_usize(c) / &order).collect())
                .collect()
        })
        .collect()
}

/// Mixed-disc counts for all `(class, pair class)` labels in one pass.
pub fn mixed_disc_table(group: &GroupTable, dihedral: &DihedralClassTable) -> Vec<Vec<Rat>> {
    let (da, db) = (group.classes().len(), dihedral.len());
    let mut bins = vec![vec![0usize; db]; da];
    for a in 0..group.order() {
        for &s in group.involutions() {
            let beta = dihedral.class_of_pair(s, group.conj(a, s)).expect("involutions");
            bins[group.class_of(a)][beta] += 1;
        }
    }
    let order = rat_usize(group.order());
    bins.into_iter()
        .map(|row| row.into_iter().map(|c| rat_usize(c) / &order).collect())
        .collect()
}

/// One failed tensor-versus-count comparison.
#[derive(Clone, Debug)]
pub struct EquivalenceFailure {
    pub tensor: &'static str,
    pub indices: Vec<usize>,
    pub algebra: Rat,
    pub oracle: Rat,
}

/// Result of the tensor-versus-oracle comparison: the three structure-constant
/// tensors against their covering counts, and the crosscap pairing against
/// projective-plane counts.
#[derive(Clone, Debug)]
pub struct OracleEquivalenceReport {
    pub entries_checked: usize,
    pub failures: Vec<EquivalenceFailure>,
}

impl OracleEquivalenceReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `S`, `T`, `R` and `D` of the algebra against the covering counts,
/// exactly and exhaustively over all labels.
pub fn verify_oracle_equivalence(
    group: &GroupTable,
    dihedral: &DihedralClassTable,
    alg: &StructureAlgebra,
) -> Result<OracleEquivalenceReport, OracleError> {
    let (da, db) = (alg.dim_a(), alg.dim_b());
    let mut failures = Vec::new();
    let mut entries = 0usize;

    let s_table = sphere_triple_table(group);
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                entries += 1;
                if *alg.raw().s.at(i, j, k) != s_table[i][j][k] {
                    failures.push(EquivalenceFailure {
                        tensor: "S",
                        indices: vec![i, j, k],
                        algebra: alg.raw().s.at(i, j, k).clone(),
                        oracle: s_table[i][j][k].clone(),
                    });
                }
            }
        }
    }

    let t_table = triangle_table(group, dihedral);
    for i in 0..db {
        for j in 0..db {
            for k in 0..db {
                entries += 1;
                let lhs = crate::algebra::t3_get(&alg.raw().t, i, j, k);
                if lhs != t_table[i][j][k] {
                    failures.push(EquivalenceFailure {
                        tensor: "T",
                        indices: vec![i, j, k],
                        algebra: lhs,
                        oracle: t_table[i][j][k].clone(),
                    });
                }
            }
        }
    }

    let r_table = mixed_disc_table(group, dihedral);
    for i in 0..da {
        for j in 0..db {
            entries += 1;
            if *alg.raw().r.at(i, j) != r_table[i][j] {
                failures.push(EquivalenceFailure {
                    tensor: "R",
                    indices: vec![i, j],
                    algebra: alg.raw().r.at(i, j).clone(),
                    oracle: r_table[i][j].clone(),
                });
            }
        }
    }

    for i in 0..da {
        entries += 1;
        let (oracle, _) = count_closed(group, 1, false, &[i], None)?;
        if alg.raw().d[i] != oracle {
            failures.push(EquivalenceFailure {
                tensor: "D",
                indices: vec![i],
                algebra: alg.raw().d[i].clone(),
                oracle,
            });
        }
    }

    Ok(OracleEquivalenceReport { entries_checked: entries, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::from_group;
    use crate::perm::Partition;
    use crate::rat;
    use std::sync::OnceLock;

    fn tables(n: usize) -> &'static (GroupTable, DihedralClassTable) {
        static CACHE: OnceLock<Vec<OnceLock<(GroupTable, DihedralClassTable)>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| (0..5).map(|_| OnceLock::new()).collect());
        cache[n].get_or_init(|| {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            (g, d)
        })
    }

    fn class_idx(g: &GroupTable, parts: &[u32]) -> usize {
        g.class_by_cycle_type(&Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn closed_examples_s2() {
        let (g, _) = tables(2);
        let c2 = class_idx(g, &[2]);
        let (sphere, homs) = count_closed(g, 0, true, &[c2, c2], None).unwrap();
        assert_eq!(sphere, rat(1, 2));
        assert_eq!(homs, 1);

        let (torus, homs) = count_closed(g, 2, true, &[], None).unwrap();
        assert_eq!(torus, rat(2, 1));
        assert_eq!(homs, 4);

        let (projective, homs) = count_closed(g, 1, false, &[c2], None).unwrap();
        assert_eq!(projective, rat(0, 1));
        assert_eq!(homs, 0);
    }

    #[test]
    fn polygon_examples() {
        let (g1, d1) = tables(1);
        let triv = d1.class_of_pair(0, 0).unwrap();
        assert_eq!(count_polygon(g1, d1, &[triv], None).unwrap().0, rat(1, 1));

        let (g2, d2) = tables(2);
        let t = g2.involutions()[1];
        let tt = d2.class_of_pair(t, t).unwrap();
        assert_eq!(count_polygon(g2, d2, &[tt, tt, tt], None).unwrap().0, rat(1, 2));

        let id_t = d2.class_of_pair(0, t).unwrap();
        let t_id = d2.class_of_pair(t, 0).unwrap();
        let (v, homs) = count_polygon(g2, d2, &[id_t, t_id], None).unwrap();
        assert_eq!(v, rat(1, 2));
        assert_eq!(homs, 1);
        // Dual pairing check: δ_{β₁,β₂*} / ν.
        assert_eq!(d2.star(t_id), id_t);
        assert_eq!(d2.classes()[id_t].nu, 2);
    }

    #[test]
    fn disc_examples() {
        let (g1, d1) = tables(1);
        assert_eq!(count_disc_mixed(g1, d1, 0, 0).unwrap().0, rat(1, 1));

        let (g2, d2) = tables(2);
        let c2 = class_idx(g2, &[2]);
        let t = g2.involutions()[1];
        let tt = d2.class_of_pair(t, t).unwrap();
        let id_t = d2.class_of_pair(0, t).unwrap();
        assert_eq!(count_disc_mixed(g2, d2, c2, tt).unwrap().0, rat(1, 2));
        assert_eq!(count_disc_mixed(g2, d2, c2, id_t).unwrap().0, rat(0, 1));
    }

    #[test]
    fn tensors_match_counts_small() {
        for n in 1..=3 {
            let (g, d) = tables(n);
            let alg = from_group(g, d).unwrap();
            let report = verify_oracle_equivalence(g, d, &alg).unwrap();
            assert!(report.pass(), "S_{n}: {:?}", report.failures.first());
            assert!(report.entries_checked > 0);
        }
    }

    #[test]
    fn tables_agree_with_direct_counts() {
        let (g, d) = tables(3);
        let s_table = sphere_triple_table(g);
        for i in 0..g.classes().len() {
            for j in 0..g.classes().len() {
                for k in 0..g.classes().len() {
                    let (v, _) = count_closed(g, 0, true, &[i, j, k], None).unwrap();
                    assert_eq!(v, s_table[i][j][k]);
                }
            }
        }
        let t_table = triangle_table(g, d);
        for i in 0..d.len() {
            for j in 0..d.len() {
                for k in 0..d.len() {
                    // Corner order: corner 1 reads (s₃,s₁), corner 2 (s₁,s₂),
                    // corner 3 (s₂,s₃). The triangle table bins (s₁,s₂) first,
                    // so the polygon with corners [c₁,c₂,c₃] counts tuples
                    // binned at [c₂,c₃,c₁].
                    let (v, _) = count_polygon(g, d, &[k, i, j], None).unwrap();
                    assert_eq!(v, t_table[i][j][k], "corner labels {i},{j},{k}");
                }
            }
        }
        let r_table = mixed_disc_table(g, d);
        for i in 0..g.classes().len() {
            for j in 0..d.len() {
                let (v, _) = count_disc_mixed(g, d, i, j).unwrap();
                assert_eq!(v, r_table[i][j]);
            }
        }
    }

    #[test]
    fn pinned_and_plain_modes_agree() {
        for n in 2..=3 {
            let (g, _) = tables(n);
            let da = g.classes().len();
            for dg in [0u32, 2] {
                for c1 in 0..da {
                    for c2 in 0..da {
                        let a = count_closed_with_mode(g, dg, true, &[c1, c2], true, None)
                            .unwrap();
                        let b = count_closed_with_mode(g, dg, true, &[c1, c2], false, None)
                            .unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
            for dg in [1u32, 2] {
                for c1 in 0..da {
                    let a = count_closed_with_mode(g, dg, false, &[c1], true, None).unwrap();
                    let b = count_closed_with_mode(g, dg, false, &[c1], false, None).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn counts_are_nonnegative_with_bounded_denominator() {
        use num_traits::Signed;
        let (g, d) = tables(3);
        for dg in [0u32, 1, 2] {
            for or in [true, false] {
                if or && dg % 2 != 0 || !or && dg == 0 {
                    continue;
                }
                for c in 0..g.classes().len() {
                    let (v, _) = count_closed(g, dg, or, &[c], None).unwrap();
                    assert!(!v.is_negative());
                    assert_eq!(g.order() % usize::try_from(v.denom()).unwrap_or(1), 0);
                }
            }
        }
        for b in 0..d.len() {
            let (v, _) = count_polygon(g, d, &[b, b], None).unwrap();
            assert!(!v.is_negative());
        }
    }

    #[test]
    fn infeasible_size_detected() {
        let (g, _) = tables(3);
        let err = count_closed(g, 8, true, &[], Some(1000)).unwrap_err();
        assert!(matches!(err, OracleError::InfeasibleSize { .. }));
    }

    #[test]
    fn chunked_counts_sum_to_total() {
        let (g, _) = tables(3);
        let c3 = class_idx(g, &[3]);
        let spec = ClosedCountSpec::new(g, 2, true, &[c3], false).unwrap();
        let total = spec.count_homs_in(0..spec.outer_size());
        let mid = spec.outer_size() / 2;
        let split = spec.count_homs_in(0..mid) + spec.count_homs_in(mid..spec.outer_size());
        assert_eq!(total, split);
    }
}
