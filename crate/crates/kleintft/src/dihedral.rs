//! Conjugacy classes of ordered pairs of involutions and their dihedral
//! Young diagrams.
//!
//! A pair `(s₁, s₂)` of involutions generates a dihedral action on the points;
//! each orbit is classified by its fixed-point pattern into one of four types
//! and the multiset of orbit sizes per type is the pair's dihedral diagram.
//! For the natural action of `S_n` the diagram determines the simultaneous
//! conjugation class of the pair; for other permutation groups several classes
//! may share a diagram, so the class table is keyed by representatives and the
//! diagram is metadata.

use alloc::collections::BTreeMap;
use alloc::{vec, vec::Vec};
use core::fmt;

use crate::group::GroupTable;
use crate::perm::{Partition, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DihedralError {
    /// An input permutation is not an involution.
    NotInvolution,
    /// The two involutions act on different point sets.
    DegreeMismatch,
    /// Orbit sizes violate a parity constraint of their type.
    ParityViolation { diagram_type: u8, size: u32 },
    /// No class of the group carries the requested diagram.
    UnknownDiagram,
    /// More than one class of this (non-symmetric) group carries the diagram.
    AmbiguousDiagram,
}

impl fmt::Display for DihedralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralError::NotInvolution => write!(f, "input is not an involution"),
            DihedralError::DegreeMismatch => write!(f, "involutions have different degrees"),
            DihedralError::ParityViolation { diagram_type, size } => {
                write!(f, "orbit size {size} has wrong parity for type {diagram_type}")
            }
            DihedralError::UnknownDiagram => write!(f, "no pair class carries this diagram"),
            DihedralError::AmbiguousDiagram => {
                write!(f, "diagram does not determine a unique pair class in this group")
            }
        }
    }
}

/// Dihedral Young diagram: orbit sizes of the pair action, split by
/// fixed-point type. Types 1, 3, 4 hold even sizes ≥ 2; type 2 holds odd
/// sizes ≥ 1. Each multiset is stored sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DihedralDiagram {
    type1: Vec<u32>,
    type2: Vec<u32>,
    type3: Vec<u32>,
    type4: Vec<u32>,
}

impl DihedralDiagram {
    pub fn new(
        mut type1: Vec<u32>,
        mut type2: Vec<u32>,
        mut type3: Vec<u32>,
        mut type4: Vec<u32>,
    ) -> Result<Self, DihedralError> {
        for (ty, list) in [(1u8, &type1), (3, &type3), (4, &type4)] {
            if let Some(&bad) = list.iter().find(|&&s| s % 2 != 0 || s < 2) {
                return Err(DihedralError::ParityViolation { diagram_type: ty, size: bad });
            }
        }
        if let Some(&bad) = type2.iter().find(|&&s| s % 2 == 0) {
            return Err(DihedralError::ParityViolation { diagram_type: 2, size: bad });
        }
        for list in [&mut type1, &mut type2, &mut type3, &mut type4] {
            list.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(DihedralDiagram { type1, type2, type3, type4 })
    }

    pub fn types(&self) -> [&[u32]; 4] {
        [&self.type1, &self.type2, &self.type3, &self.type4]
    }

    pub fn n(&self) -> u32 {
        self.types().iter().flat_map(|t| t.iter()).sum()
    }

    /// Diagram of the reversed pair `(s₂, s₁)`: types 3 and 4 swap.
    pub fn star(&self) -> DihedralDiagram {
        DihedralDiagram {
            type1: self.type1.clone(),
            type2: self.type2.clone(),
            type3: self.type4.clone(),
            type4: self.type3.clone(),
        }
    }

    /// Cycle types of `s₁` and `s₂` for any pair carrying this diagram.
    ///
    /// `s₁` has `|type2| + 2·|type3|` fixed points, `s₂` has
    /// `|type2| + 2·|type4|`; everything else pairs into transpositions.
    pub fn boundary_types(&self) -> (Partition, Partition) {
        let n = self.n();
        let fixed1 = self.type2.len() as u32 + 2 * self.type3.len() as u32;
        let fixed2 = self.type2.len() as u32 + 2 * self.type4.len() as u32;
        let involution_type = |fixed: u32| {
            let mut parts = vec![2u32; ((n - fixed) / 2) as usize];
            parts.extend(core::iter::repeat(1).take(fixed as usize));
            Partition::new(parts).expect("positive parts")
        };
        (involution_type(fixed1), involution_type(fixed2))
    }

    /// Decomposes the point set into orbits of the group generated by the two
    /// involutions and classifies each orbit by its fixed-point pattern.
    pub fn from_pair(s1: &Permutation, s2: &Permutation) -> Result<Self, DihedralError> {
        if s1.degree() != s2.degree() {
            return Err(DihedralError::DegreeMismatch);
        }
        if !s1.is_involution() || !s2.is_involution() {
            return Err(DihedralError::NotInvolution);
        }
        let n = s1.degree();
        let mut seen = vec![false; n];
        let mut t = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
        for start in 0..n as u16 {
            if seen[start as usize] {
                continue;
            }
            // Orbit by alternated applications of s1 and s2.
            let mut orbit = Vec::new();
            let mut frontier = vec![start];
            seen[start as usize] = true;
            while let Some(x) = frontier.pop() {
                orbit.push(x);
                for s in [s1, s2] {
                    let y = s.apply(x);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        frontier.push(y);
                    }
                }
            }
            let fixed = |s: &Permutation| orbit.iter().filter(|&&x| s.apply(x) == x).count();
            let (f1, f2) = (fixed(s1), fixed(s2));
            let size = orbit.len() as u32;
            match (f1, f2) {
                (0, 0) => t[0].push(size),
                (1, 1) => t[1].push(size),
                (2, 0) => t[2].push(size),
                (0, 2) => t[3].push(size),
                _ => unreachable!("dihedral orbit has at most two fixed points per involution"),
            }
        }
        let [t1, t2, t3, t4] = t;
        DihedralDiagram::new(t1, t2, t3, t4)
    }
}

/// One conjugation orbit of ordered involution pairs.
#[derive(Clone, Debug)]
pub struct PairClass {
    pub diagram: DihedralDiagram,
    /// Lexicographically least member, as element indices.
    pub rep: (usize, usize),
    pub size: usize,
    /// Stabilizer order under simultaneous conjugation, `|G| / size`.
    pub nu: usize,
}

/// All conjugation orbits of ordered involution pairs of a group: the basis
/// of the `B` summand of the structure algebra.
#[derive(Clone, Debug)]
pub struct DihedralClassTable {
    classes: Vec<PairClass>,
    members: Vec<Vec<(usize, usize)>>,
    pair_class_of: BTreeMap<(usize, usize), usize>,
    star: Vec<usize>,
}

impl DihedralClassTable {
    /// Orbit partition of all involution pairs under simultaneous
    /// conjugation, with brute-force stabilizer counts.
    pub fn build(group: &GroupTable) -> DihedralClassTable {
        let invs = group.involutions();
        let mut pair_class_of = BTreeMap::new();
        let mut classes = Vec::new();
        let mut members_by_class = Vec::new();
        for &s1 in invs {
            for &s2 in invs {
                if pair_class_of.contains_key(&(s1, s2)) {
                    continue;
                }
                let cls = classes.len();
                let mut members = Vec::new();
                for g in 0..group.order() {
                    let pair = (group.conj(g, s1), group.conj(g, s2));
                    if !pair_class_of.contains_key(&pair) {
                        pair_class_of.insert(pair, cls);
                        members.push(pair);
                    }
                }
                members.sort_unstable();
                let stabilizer = (0..group.order())
                    .filter(|&g| group.conj(g, s1) == s1 && group.conj(g, s2) == s2)
                    .count();
                debug_assert_eq!(stabilizer * members.len(), group.order());
                classes.push(PairClass {
                    diagram: DihedralDiagram::from_pair(
                        group.element(s1),
                        group.element(s2),
                    )
                    .expect("involution indexes"),
                    rep: (s1, s2),
                    size: members.len(),
                    nu: stabilizer,
                });
                members_by_class.push(members);
            }
        }
        let star = classes
            .iter()
            .map(|c| pair_class_of[&(c.rep.1, c.rep.0)])
            .collect();
        DihedralClassTable { classes, members: members_by_class, pair_class_of, star }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[PairClass] {
        &self.classes
    }

    pub fn members(&self, class: usize) -> &[(usize, usize)] {
        &self.members[class]
    }

    pub fn class_of_pair(&self, s1: usize, s2: usize) -> Option<usize> {
        self.pair_class_of.get(&(s1, s2)).copied()
    }

    /// Class of the reversed pairs.
    pub fn star(&self, class: usize) -> usize {
        self.star[class]
    }

    /// Whether the class consists of pairs `(s, s)`.
    pub fn is_trivial(&self, class: usize) -> bool {
        self.classes[class].rep.0 == self.classes[class].rep.1
    }

    /// Resolves a diagram to its class. Errors when the diagram is unknown,
    /// or ambiguous (possible for groups other than `S_n`).
    pub fn class_by_diagram(&self, d: &DihedralDiagram) -> Result<usize, DihedralError> {
        let mut found = None;
        for (i, c) in self.classes.iter().enumerate() {
            if &c.diagram == d {
                if found.is_some() {
                    return Err(DihedralError::AmbiguousDiagram);
                }
                found = Some(i);
            }
        }
        found.ok_or(DihedralError::UnknownDiagram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn diagram(t1: &[u32], t2: &[u32], t3: &[u32], t4: &[u32]) -> DihedralDiagram {
        DihedralDiagram::new(t1.to_vec(), t2.to_vec(), t3.to_vec(), t4.to_vec()).unwrap()
    }

    #[test]
    fn pair_diagrams_degree_two() {
        let id = Permutation::identity(2);
        let t = perm(&[1, 0]);
        assert_eq!(DihedralDiagram::from_pair(&id, &id).unwrap(), diagram(&[], &[1, 1], &[], &[]));
        assert_eq!(DihedralDiagram::from_pair(&t, &t).unwrap(), diagram(&[2], &[], &[], &[]));
        assert_eq!(DihedralDiagram::from_pair(&t, &id).unwrap(), diagram(&[], &[], &[], &[2]));
        assert_eq!(DihedralDiagram::from_pair(&id, &t).unwrap(), diagram(&[], &[], &[2], &[]));
    }

    #[test]
    fn from_pair_rejects_non_involution() {
        let c = perm(&[1, 2, 0]);
        let id = Permutation::identity(3);
        assert_eq!(DihedralDiagram::from_pair(&c, &id), Err(DihedralError::NotInvolution));
    }

    #[test]
    fn star_swaps_types() {
        let d = diagram(&[], &[], &[], &[2]);
        assert_eq!(d.star(), diagram(&[], &[], &[2], &[]));
        let trivial = diagram(&[2, 2], &[1], &[], &[]);
        assert_eq!(trivial.star(), trivial);
    }

    #[test]
    fn star_is_involution_on_s4_classes() {
        let g = GroupTable::symmetric(4, None).unwrap();
        let d = DihedralClassTable::build(&g);
        for c in d.classes() {
            assert_eq!(c.diagram.star().star(), c.diagram);
        }
        for i in 0..d.len() {
            assert_eq!(d.star(d.star(i)), i);
            assert_eq!(d.classes()[d.star(i)].nu, d.classes()[i].nu);
        }
    }

    #[test]
    fn class_counts_small() {
        for (n, expected) in [(1usize, 1usize), (2, 4), (3, 5)] {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            assert_eq!(d.len(), expected, "S_{n}");
        }
    }

    #[test]
    fn class_count_matches_naive_orbit_partition() {
        // Independent oracle: naive orbit partition over all pairs.
        let g = GroupTable::symmetric(3, None).unwrap();
        let invs = g.involutions();
        let mut assigned: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut orbits = 0;
        for &a in invs {
            for &b in invs {
                if assigned.contains_key(&(a, b)) {
                    continue;
                }
                for gg in 0..g.order() {
                    assigned.insert((g.conj(gg, a), g.conj(gg, b)), orbits);
                }
                orbits += 1;
            }
        }
        assert_eq!(DihedralClassTable::build(&g).len(), orbits);
    }

    #[test]
    fn sizes_and_stabilizers() {
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            let total: usize = d.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.involutions().len() * g.involutions().len());
            for c in d.classes() {
                assert_eq!(c.nu * c.size, g.order());
            }
        }
    }

    #[test]
    fn diagram_classifies_orbits_exhaustively() {
        // Two pairs are conjugate iff their diagrams agree (S_n, n ≤ 5).
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            let invs = g.involutions();
            for &a in invs {
                for &b in invs {
                    let cls = d.class_of_pair(a, b).unwrap();
                    let diag =
                        DihedralDiagram::from_pair(g.element(a), g.element(b)).unwrap();
                    assert_eq!(diag, d.classes()[cls].diagram);
                    assert_eq!(d.class_by_diagram(&diag).unwrap(), cls);
                }
            }
        }
    }

    #[test]
    fn diagram_invariant_under_conjugation() {
        let g = GroupTable::symmetric(4, None).unwrap();
        let invs = g.involutions();
        for &a in invs.iter().step_by(2) {
            for &b in invs.iter().step_by(3) {
                let d0 = DihedralDiagram::from_pair(g.element(a), g.element(b)).unwrap();
                for gg in (0..g.order()).step_by(5) {
                    let d1 = DihedralDiagram::from_pair(
                        g.element(g.conj(gg, a)),
                        g.element(g.conj(gg, b)),
                    )
                    .unwrap();
                    assert_eq!(d0, d1);
                }
            }
        }
    }

    #[test]
    fn boundary_projections() {
        let d = diagram(&[], &[1, 1], &[], &[]);
        let (p1, p2) = d.boundary_types();
        assert_eq!(p1.parts(), &[1, 1]);
        assert_eq!(p2.parts(), &[1, 1]);

        let d = diagram(&[], &[], &[], &[2]);
        let (p1, p2) = d.boundary_types();
        assert_eq!(p1.parts(), &[2]);
        assert_eq!(p2.parts(), &[1, 1]);
    }

    #[test]
    fn boundary_projection_identities() {
        // ι₁(β*) = ι₂(β) and boundary types match the actual representatives.
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            let d = DihedralClassTable::build(&g);
            for (i, c) in d.classes().iter().enumerate() {
                let (i1, i2) = c.diagram.boundary_types();
                assert_eq!(g.element(c.rep.0).cycle_type(), i1);
                assert_eq!(g.element(c.rep.1).cycle_type(), i2);
                let (s1, s2) = d.classes()[d.star(i)].diagram.boundary_types();
                assert_eq!(s1, i2);
                assert_eq!(s2, i1);
                if c.rep.0 == c.rep.1 {
                    assert_eq!(i1, i2);
                }
            }
        }
    }
}
