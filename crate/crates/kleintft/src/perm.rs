//! Permutations of `{0, …, N−1}` and integer partitions.

use alloc::{vec, vec::Vec};
use core::fmt;

/// Error raised by permutation constructors and composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermError {
    /// The image array is not a bijection on `{0,…,N−1}`.
    NotBijective,
    /// Two permutations of different degree were combined.
    DegreeMismatch { left: usize, right: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotBijective => write!(f, "image array is not a bijection"),
            PermError::DegreeMismatch { left, right } => {
                write!(f, "degree mismatch: {left} vs {right}")
            }
        }
    }
}

/// A permutation of the points `{0, …, N−1}`, stored as its image array.
///
/// Composition convention: `(p ∘ q)(x) = p(q(x))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(PermError::NotBijective);
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Self, PermError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                if (pt as usize) >= degree || moved[pt as usize] {
                    return Err(PermError::NotBijective);
                }
                moved[pt as usize] = true;
                images[pt as usize] = next;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        let images = other.images.iter().map(|&x| self.images[x as usize]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u16 == y)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| self.images[y as usize] == x as u16)
    }

    /// Multiset of cycle lengths, fixed points included as parts of size 1.
    pub fn cycle_type(&self) -> Partition {
        let mut parts = Vec::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start as u16;
            loop {
                seen[x as usize] = true;
                len += 1;
                x = self.images[x as usize];
                if x as usize == start {
                    break;
                }
            }
            parts.push(len);
        }
        Partition::new(parts).expect("cycle lengths are positive")
    }

    /// Cycles of length ≥ 2, each rotated to start at its least point,
    /// sorted by that point. Used by the text printers.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<u16>> {
        let mut cycles = Vec::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u16;
            loop {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
                if x as usize == start {
                    break;
                }
            }
            if cycle.len() >= 2 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

/// Error raised by [`Partition::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionError {
    /// Parts must be ≥ 1.
    NonPositivePart,
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::NonPositivePart => write!(f, "partition parts must be positive"),
        }
    }
}

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Canonicalizes the given parts (sorts descending). Rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// All partitions of `n`, in a deterministic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn go(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            let mut part = remaining.min(max_part);
            while part >= 1 {
                prefix.push(part);
                go(remaining - part, part, prefix, out);
                prefix.pop();
                part -= 1;
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_identity() {
        let t = p(&[1, 0, 2]);
        let id = Permutation::identity(3);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert_eq!(id.compose(&t).unwrap(), t);
    }

    #[test]
    fn compose_involution() {
        let t = p(&[1, 0, 2]);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_convention() {
        // (1 2) ∘ (2 3) sends 1→2, 2→3, 3→1 (1-based), i.e. the 3-cycle (1 2 3).
        let t12 = p(&[1, 0, 2]);
        let t23 = p(&[0, 2, 1]);
        assert_eq!(t12.compose(&t23).unwrap(), p(&[1, 2, 0]));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = p(&[1, 0]);
        let b = p(&[0, 1, 2]);
        assert!(matches!(a.compose(&b), Err(PermError::DegreeMismatch { .. })));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type().parts(), &[1, 1, 1]);
        assert_eq!(p(&[1, 0, 2]).cycle_type().parts(), &[2, 1]);
        assert_eq!(p(&[1, 2, 0]).cycle_type().parts(), &[3]);
    }

    #[test]
    fn cycle_type_is_class_function() {
        // cycle_type(g h g⁻¹) = cycle_type(h) over all of S₃.
        let all: Vec<Permutation> = crate::group::GroupTable::symmetric(3, None)
            .unwrap()
            .elements()
            .to_vec();
        for g in &all {
            for h in &all {
                let conj = g.compose(h).unwrap().compose(&g.inverse()).unwrap();
                assert_eq!(conj.cycle_type(), h.cycle_type());
            }
        }
    }

    #[test]
    fn partition_canonicalization() {
        assert_eq!(Partition::new(vec![2, 3]).unwrap().parts(), &[3, 2]);
        assert!(Partition::new(vec![0, 1]).is_err());
    }

    #[test]
    fn partition_count_small() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(6).len(), 11);
    }
}
