//! Topological types of stratified surfaces and the half-integer invariant μ.

use alloc::vec::Vec;
use core::fmt;

use crate::{rat, rat_usize, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceError {
    /// Orientable surfaces have integer genus.
    OddOrientableGenus,
    /// Nonorientable surfaces have genus at least ½.
    NonorientableGenusZero,
    /// Every boundary contour must carry at least one special point.
    EmptyBoundaryContour,
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::OddOrientableGenus => {
                write!(f, "orientable surface with half-integer genus")
            }
            SurfaceError::NonorientableGenusZero => {
                write!(f, "nonorientable surface needs genus at least 1/2")
            }
            SurfaceError::EmptyBoundaryContour => {
                write!(f, "boundary contours must carry at least one special point")
            }
        }
    }
}

/// The topological type `(g, ε, m, m₁,…,m_s)` of a connected stratified
/// surface. The genus is stored doubled so nonorientable half-integer genera
/// stay exact; boundary point counts are kept ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurfaceType {
    doubled_genus: u32,
    orientable: bool,
    interior_points: usize,
    boundary: Vec<usize>,
}

impl SurfaceType {
    pub fn new(
        doubled_genus: u32,
        orientable: bool,
        interior_points: usize,
        mut boundary: Vec<usize>,
    ) -> Result<Self, SurfaceError> {
        if orientable && doubled_genus % 2 != 0 {
            return Err(SurfaceError::OddOrientableGenus);
        }
        if !orientable && doubled_genus == 0 {
            return Err(SurfaceError::NonorientableGenusZero);
        }
        if boundary.iter().any(|&m| m == 0) {
            return Err(SurfaceError::EmptyBoundaryContour);
        }
        boundary.sort_unstable();
        Ok(SurfaceType { doubled_genus, orientable, interior_points, boundary })
    }

    /// Closed surface without special points.
    pub fn closed(doubled_genus: u32, orientable: bool) -> Result<Self, SurfaceError> {
        Self::new(doubled_genus, orientable, 0, Vec::new())
    }

    pub fn doubled_genus(&self) -> u32 {
        self.doubled_genus
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn interior_points(&self) -> usize {
        self.interior_points
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// `μ = 2g + m + s + ½Σmⱼ − 2` for one connected component.
    pub fn mu(&self) -> Rat {
        let boundary_points: usize = self.boundary.iter().sum();
        rat_usize(self.doubled_genus as usize)
            + rat_usize(self.interior_points)
            + rat_usize(self.boundary.len())
            + rat(boundary_points as i64, 2)
            - rat(2, 1)
    }
}

/// μ of a disjoint union; additive over the components.
pub fn surface_mu(components: &[SurfaceType]) -> Rat {
    components.iter().map(SurfaceType::mu).sum()
}
