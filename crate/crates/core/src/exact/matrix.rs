use num_traits::{One, Zero};

use super::{RVector, Rational, Subspace};
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    cols: usize,
    rows: Vec<RVector>,
}

impl RMatrix {
    pub fn new(cols: usize, rows: Vec<RVector>) -> Result<Self> {
        for r in &rows {
            r.check_dim(cols)?;
        }
        Ok(RMatrix { cols, rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::new(cols, rows.iter().map(|r| RVector::from_ints(r)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix { cols, rows: vec![RVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        RMatrix { cols: n, rows: (0..n).map(|i| RVector::unit(n, i)).collect() }
    }

    pub fn from_columns(rows: usize, columns: &[RVector]) -> Result<Self> {
        for c in columns {
            c.check_dim(rows)?;
        }
        Ok(RMatrix {
            cols: columns.len(),
            rows: (0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[RVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RVector {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> RVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix { cols: self.nrows(), rows: (0..self.cols).map(|j| self.column(j)).collect() }
    }

    pub fn apply(&self, x: &RVector) -> Result<RVector> {
        x.check_dim(self.cols)?;
        Ok(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if other.nrows() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.nrows() });
        }
        let t = other.transpose();
        let rows = self.rows.iter().map(|r| t.rows.iter().map(|c| r.dot(c)).collect()).collect();
        Ok(RMatrix { cols: other.cols, rows })
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        if other.nrows() != self.nrows() || other.cols != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a - b).collect();
        Ok(RMatrix { cols: self.cols, rows })
    }

    pub fn rank(&self) -> usize {
        rref(self.cols, &self.rows).1.len()
    }

    /// Solves the square system `self · x = b`; `None` when singular.
    pub fn solve(&self, b: &RVector) -> Option<RVector> {
        let n = self.cols;
        if self.nrows() != n || b.dim() != n {
            return None;
        }
        let augmented: Vec<RVector> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| r.concat(&RVector::new(vec![bi.clone()])))
            .collect();
        let (reduced, pivots) = rref(n + 1, &augmented);
        if pivots.len() != n || pivots.contains(&n) {
            return None;
        }
        Some(reduced.iter().take(n).map(|r| r[n].clone()).collect())
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<RMatrix> {
        let n = self.cols;
        if self.nrows() != n {
            return None;
        }
        let augmented: Vec<RVector> =
            self.rows.iter().enumerate().map(|(i, r)| r.concat(&RVector::unit(n, i))).collect();
        let (reduced, pivots) = rref(2 * n, &augmented);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let rows = reduced.iter().take(n).map(|r| r.coords()[n..].iter().cloned().collect()).collect();
        Some(RMatrix { cols: n, rows })
    }
}

/// Gauss–Jordan elimination. Returns the nonzero rows of the reduced row
/// echelon form and their pivot columns.
pub(crate) fn rref(cols: usize, rows: &[RVector]) -> (Vec<RVector>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(RVector::new).collect(), pivots)
}

/// `{x : Mx = 0}` with a canonical basis. A matrix without rows yields the
/// whole space.
pub fn null_space(m: &RMatrix) -> Subspace {
    let n = m.ncols();
    let (reduced, pivots) = rref(n, m.rows());
    let free = (0..n).filter(|c| !pivots.contains(c));
    let basis: Vec<RVector> = free
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            RVector::new(v)
        })
        .collect();
    Subspace::span(n, &basis).expect("null space basis has the ambient dimension")
}
