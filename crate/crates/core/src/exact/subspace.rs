use num_traits::Zero;

use super::matrix::rref;
use super::{null_space, RMatrix, RVector, Rational};
use crate::error::{Error, Result};

/// A linear subspace of ℚⁿ stored by its reduced row echelon basis, so two
/// equal subspaces compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<RVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| RVector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of an arbitrary (possibly dependent) family.
    pub fn span(ambient: usize, vectors: &[RVector]) -> Result<Self> {
        for v in vectors {
            v.check_dim(ambient)?;
        }
        let (basis, pivots) = rref(ambient, vectors);
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RVector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; the matching unit vectors span a canonical
    /// algebraic complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Canonical representative of the coset `x + self`: the unique element
    /// whose pivot coordinates vanish.
    pub fn reduce(&self, x: &RVector) -> Result<RVector> {
        x.check_dim(self.ambient)?;
        let mut r = x.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                r = r.add_scaled(&f, b);
            }
        }
        Ok(r)
    }

    /// Coordinates of `x + self` in the canonical complement basis.
    pub fn quotient_coordinates(&self, x: &RVector) -> Result<RVector> {
        let r = self.reduce(x)?;
        Ok(self.free_coordinates().into_iter().map(|c| r[c].clone()).collect())
    }

    pub fn contains(&self, x: &RVector) -> Result<bool> {
        Ok(self.reduce(x)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let all: Vec<RVector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let perp = self.orthogonal_complement().sum(&other.orthogonal_complement())?;
        Ok(perp.orthogonal_complement())
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let m = RMatrix::new(self.ambient, self.basis.clone()).expect("basis rows have ambient length");
        null_space(&m)
    }

    /// Orthogonal projector onto `self`, as an ambient × ambient matrix.
    pub fn orthogonal_projector(&self) -> RMatrix {
        let n = self.ambient;
        if self.is_zero() {
            return RMatrix::zeros(n, n);
        }
        let b = RMatrix::new(n, self.basis.clone()).expect("basis rows have ambient length");
        let gram = b.mul(&b.transpose()).expect("square");
        let gram_inv = gram.inverse().expect("basis is independent");
        b.transpose().mul(&gram_inv).and_then(|m| m.mul(&b)).expect("shapes agree")
    }

    /// Coordinates of `x` in the echelon basis, when `x` lies in `self`.
    pub fn coordinates(&self, x: &RVector) -> Result<Option<Vec<Rational>>> {
        if !self.contains(x)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| x[p].clone()).collect()))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    #[test]
    fn complement_examples() {
        let x_axis = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert_eq!(x_axis.orthogonal_complement(), Subspace::span(2, &[v(&[0, 1])]).unwrap());
        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));
        let diag = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        let perp = diag.orthogonal_complement();
        assert_eq!(perp, Subspace::span(2, &[v(&[1, -1])]).unwrap());
        assert_eq!(perp.basis()[0].dot(&diag.basis()[0]), int(0));
    }

    #[test]
    fn membership_examples() {
        let x_axis = Subspace::span(2, &[v(&[1, 0])]).unwrap();
        assert!(x_axis.contains(&v(&[3, 0])).unwrap());
        assert!(!x_axis.contains(&v(&[3, 1])).unwrap());
        let line = Subspace::span(2, &[v(&[1, 2])]).unwrap();
        assert!(line.contains(&v(&[2, 4])).unwrap());
        assert!(matches!(line.contains(&v(&[1, 2, 3])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn canonical_under_reordering() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1]), v(&[1, 3, 4])]).unwrap();
        let b = Subspace::span(3, &[v(&[2, 5, 7]), v(&[1, 1, 2])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn projector_is_idempotent() {
        let s = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 2])]).unwrap();
        let p = s.orthogonal_projector();
        assert_eq!(p.mul(&p).unwrap(), p);
        for b in s.basis() {
            assert_eq!(&p.apply(b).unwrap(), b);
        }
        for z in s.orthogonal_complement().basis() {
            assert!(p.apply(z).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_coordinates_ignore_representative() {
        let s = Subspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        let x = v(&[2, 5, -1]);
        let y = &x + &v(&[3, 3, 0]);
        assert_eq!(s.quotient_coordinates(&x).unwrap(), s.quotient_coordinates(&y).unwrap());
        assert_eq!(s.free_coordinates(), vec![1, 2]);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), Subspace::span(3, &[v(&[0, 1, 0])]).unwrap());
    }
}
