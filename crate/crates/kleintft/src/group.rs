//! Finite permutation groups enumerated from generators: full element list,
//! conjugacy classes, centralizer orders and the involution inventory.

use alloc::collections::BTreeMap;
use alloc::{vec, vec::Vec};
use core::fmt;

use crate::perm::{Partition, PermError, Permutation};

/// Default cap on the group order accepted by the enumerators.
pub const DEFAULT_ORDER_CAP: usize = 10_080;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    /// Closure exceeded the configured order cap.
    OrderCapExceeded { cap: usize },
    /// A generator acts on the wrong number of points.
    GeneratorDegreeMismatch { expected: usize, got: usize },
    /// Degree must be at least 1.
    EmptyDomain,
    Perm(PermError),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::OrderCapExceeded { cap } => {
                write!(f, "group order exceeds the cap of {cap}")
            }
            GroupError::GeneratorDegreeMismatch { expected, got } => {
                write!(f, "generator degree {got} does not match {expected}")
            }
            GroupError::EmptyDomain => write!(f, "degree must be at least 1"),
            GroupError::Perm(e) => write!(f, "{e}"),
        }
    }
}

impl From<PermError> for GroupError {
    fn from(e: PermError) -> Self {
        GroupError::Perm(e)
    }
}

/// One conjugacy class: cycle-type label, lexicographically least
/// representative, and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub label: Partition,
    pub rep: usize,
    pub size: usize,
}

/// A fully enumerated finite permutation group.
///
/// Elements are canonically ordered lexicographically on their image arrays,
/// so the identity is always element 0. Classes are ordered by their least
/// representative, so for `S_n` the class of the identity is class 0.
#[derive(Clone, Debug)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
    index: BTreeMap<Vec<u16>, usize>,
    inverse: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    class_members: Vec<Vec<usize>>,
    involutions: Vec<usize>,
}

impl GroupTable {
    /// Enumerates the group generated by `generators` acting on
    /// `{0,…,degree−1}` by breadth-first closure.
    pub fn enumerate(
        degree: usize,
        generators: &[Permutation],
        order_cap: Option<usize>,
    ) -> Result<GroupTable, GroupError> {
        if degree == 0 {
            return Err(GroupError::EmptyDomain);
        }
        let cap = order_cap.unwrap_or(DEFAULT_ORDER_CAP);
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::GeneratorDegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }

        let mut seen: BTreeMap<Vec<u16>, ()> = BTreeMap::new();
        let identity = Permutation::identity(degree);
        seen.insert(identity.images().to_vec(), ());
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = g.compose(&x)?;
                if !seen.contains_key(y.images()) {
                    if seen.len() >= cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    seen.insert(y.images().to_vec(), ());
                    frontier.push(y);
                }
            }
        }

        let elements: Vec<Permutation> = seen
            .into_keys()
            .map(|imgs| Permutation::from_images(imgs).expect("closed set of permutations"))
            .collect();
        Ok(Self::from_elements(degree, elements))
    }

    /// The full symmetric group `S_n`.
    pub fn symmetric(n: usize, order_cap: Option<usize>) -> Result<GroupTable, GroupError> {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut imgs: Vec<u16> = (0..n as u16).collect();
            imgs.swap(0, 1);
            gens.push(Permutation::from_images(imgs).unwrap());
            let cycle: Vec<u16> = (1..n as u16).chain(core::iter::once(0)).collect();
            gens.push(Permutation::from_images(cycle).unwrap());
        }
        Self::enumerate(n, &gens, order_cap)
    }

    fn from_elements(degree: usize, elements: Vec<Permutation>) -> GroupTable {
        let order = elements.len();
        let index: BTreeMap<Vec<u16>, usize> =
            elements.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i)).collect();
        let lookup = |p: &Permutation| -> usize { index[p.images()] };

        let inverse: Vec<usize> = elements.iter().map(|p| lookup(&p.inverse())).collect();

        // Conjugacy classes by orbit partition; scanning elements in canonical
        // order makes the first member of each orbit its representative.
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        let mut class_members = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cls = classes.len();
            let mut members = Vec::new();
            for g in &elements {
                let conj = g
                    .compose(&elements[start])
                    .unwrap()
                    .compose(&g.inverse())
                    .unwrap();
                let idx = lookup(&conj);
                if class_of[idx] == usize::MAX {
                    class_of[idx] = cls;
                    members.push(idx);
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                label: elements[start].cycle_type(),
                rep: start,
                size: members.len(),
            });
            class_members.push(members);
        }

        let involutions: Vec<usize> = (0..order)
            .filter(|&i| elements[i].is_involution())
            .collect();

        GroupTable {
            degree,
            elements,
            index,
            inverse,
            classes,
            class_of,
            class_members,
            involutions,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, elem: usize) -> usize {
        self.class_of[elem]
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.class_members[class]
    }

    /// Element indices of all involutions, identity included, ascending.
    pub fn involutions(&self) -> &[usize] {
        &self.involutions
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p.images()).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]).unwrap();
        self.index[p.images()]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g a g⁻¹` on element indices.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inverse[g])
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[0]
    }

    /// `ν_α = |G| / |α|`, the centralizer order of any member of the class.
    pub fn centralizer_order(&self, class: usize) -> usize {
        self.order() / self.classes[class].size
    }

    /// Class of the inverses of a class.
    pub fn class_star(&self, class: usize) -> usize {
        self.class_of[self.inverse[self.classes[class].rep]]
    }

    /// Looks up the class with the given cycle type; unique for `S_n`.
    pub fn class_by_cycle_type(&self, label: &Partition) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.classes.iter().enumerate() {
            if &c.label == label {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    /// Independent full enumeration of S_n by Heap's algorithm.
    fn all_permutations(n: usize) -> Vec<Vec<u16>> {
        let mut a: Vec<u16> = (0..n as u16).collect();
        let mut out = vec![a.clone()];
        let mut c = vec![0usize; n];
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    a.swap(0, i);
                } else {
                    a.swap(c[i], i);
                }
                out.push(a.clone());
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        out
    }

    #[test]
    fn s3_from_generators() {
        let gens = [perm(&[1, 0, 2]), perm(&[1, 2, 0])];
        let g = GroupTable::enumerate(3, &gens, None).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.classes().len(), 3);
        let mut expected = all_permutations(3);
        expected.sort();
        let got: Vec<Vec<u16>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn trivial_group() {
        let g = GroupTable::enumerate(4, &[], None).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn s2_involutions() {
        let g = GroupTable::enumerate(2, &[perm(&[1, 0])], None).unwrap();
        assert_eq!(g.involutions(), &[0, 1]);
    }

    #[test]
    fn symmetric_group_classes_match_partitions() {
        // Independent oracle: recursive partition enumeration.
        fn count_partitions(n: u32, max: u32) -> usize {
            if n == 0 {
                return 1;
            }
            (1..=n.min(max)).map(|p| count_partitions(n - p, p)).sum()
        }
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            assert_eq!(g.classes().len(), count_partitions(n as u32, n as u32));
        }
        assert_eq!(GroupTable::symmetric(4, None).unwrap().classes().len(), 5);
    }

    #[test]
    fn s1_is_trivial() {
        let g = GroupTable::symmetric(1, None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().len(), 1);
    }

    #[test]
    fn involution_count_recurrence() {
        // I(n) = I(n−1) + (n−1)·I(n−2).
        fn inv_count(n: usize) -> usize {
            match n {
                0 | 1 => 1,
                _ => inv_count(n - 1) + (n - 1) * inv_count(n - 2),
            }
        }
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            assert_eq!(g.involutions().len(), inv_count(n));
        }
        assert_eq!(GroupTable::symmetric(5, None).unwrap().involutions().len(), 26);
    }

    #[test]
    fn centralizer_orders_s3() {
        let g = GroupTable::symmetric(3, None).unwrap();
        // Independent oracle: brute-force count of commuting elements.
        for (ci, class) in g.classes().iter().enumerate() {
            let rep = class.rep;
            let commuting = (0..g.order())
                .filter(|&x| g.mul(x, rep) == g.mul(rep, x))
                .count();
            assert_eq!(g.centralizer_order(ci), commuting);
        }
        let c21 = g.class_by_cycle_type(&Partition::new(vec![2, 1]).unwrap()).unwrap();
        let c3 = g.class_by_cycle_type(&Partition::new(vec![3]).unwrap()).unwrap();
        assert_eq!(g.centralizer_order(c21), 2);
        assert_eq!(g.centralizer_order(c3), 3);
        let id = g.class_by_cycle_type(&Partition::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(g.centralizer_order(id), 6);
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for n in 1..=5 {
            let g = GroupTable::symmetric(n, None).unwrap();
            let total: usize = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            for (ci, c) in g.classes().iter().enumerate() {
                assert_eq!(g.centralizer_order(ci) * c.size, g.order());
            }
        }
    }

    #[test]
    fn closure_contains_inverses_and_products() {
        let gens = [perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])];
        let g = GroupTable::enumerate(4, &gens, None).unwrap();
        for i in (0..g.order()).step_by(3) {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            for j in (0..g.order()).step_by(5) {
                let p = g.element(i).compose(g.element(j)).unwrap();
                assert!(g.index_of(&p).is_some());
            }
        }
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(
            GroupTable::symmetric(8, None),
            Err(GroupError::OrderCapExceeded { .. })
        ));
        assert!(GroupTable::symmetric(8, Some(50_000)).is_ok());
    }
}
