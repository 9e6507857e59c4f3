//! Small exact dense matrices over the rationals.

use alloc::{vec, vec::Vec};
use num_traits::Zero;

use crate::Rat;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = crate::rat_int(1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a.at(col, col).clone();
            for c in 0..n {
                let v = a.at(col, c).clone() / &p;
                a.set(col, c, v);
                let v = inv.at(col, c).clone() / &p;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let v = a.at(r, c).clone() - &f * a.at(col, c);
                    a.set(r, c, v);
                    let v = inv.at(r, c).clone() - &f * inv.at(col, c);
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        debug_assert_eq!(self.cols, v.len());
        let mut out = vec![Rat::zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = Rat::zero();
            for c in 0..self.cols {
                let x = self.at(r, c);
                if !x.is_zero() && !v[c].is_zero() {
                    acc += x * &v[c];
                }
            }
            out[r] = acc;
        }
        out
    }
}
