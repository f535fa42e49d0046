use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, int, to_f64, Rational};
use crate::error::{Error, Result};

/// A point of ℚⁿ. Arithmetic between vectors of different lengths panics;
/// public entry points check dimensions first and return
/// [`Error::DimensionMismatch`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.dim() })
        }
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        assert_eq!(self.dim(), other.dim(), "dot product of vectors of different length");
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> RVector {
        RVector(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: &Rational, other: &RVector) -> RVector {
        assert_eq!(self.dim(), other.dim());
        RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Positive multiple with coprime integer coordinates. Used to keep
    /// generator coordinates small and to compare directions structurally.
    pub fn primitive(&self) -> RVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        RVector(ints.into_iter().map(|c| Rational::from_integer(c / &gcd)).collect())
    }

    /// Zero-pads on the left by `before` and on the right by `after`.
    pub fn padded(&self, before: usize, after: usize) -> RVector {
        let mut out = Vec::with_capacity(before + self.dim() + after);
        out.extend(std::iter::repeat_with(Rational::zero).take(before));
        out.extend(self.0.iter().cloned());
        out.extend(std::iter::repeat_with(Rational::zero).take(after));
        RVector(out)
    }

    pub fn concat(&self, other: &RVector) -> RVector {
        RVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> Rational {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl From<Vec<Rational>> for RVector {
    fn from(v: Vec<Rational>) -> Self {
        RVector(v)
    }
}

impl FromIterator<Rational> for RVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RVector(iter.into_iter().collect())
    }
}

impl Add for &RVector {
    type Output = RVector;
    fn add(self, rhs: &RVector) -> RVector {
        assert_eq!(self.dim(), rhs.dim());
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RVector {
    type Output = RVector;
    fn sub(self, rhs: &RVector) -> RVector {
        assert_eq!(self.dim(), rhs.dim());
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn primitive_scales_positively() {
        let v = RVector::new(vec![frac(-2, 3), frac(4, 9), int(0)]);
        assert_eq!(v.primitive(), RVector::from_ints(&[-6, 4, 0]).scale(&frac(1, 2)));
        assert_eq!(RVector::from_ints(&[0, -5]).primitive(), RVector::from_ints(&[0, -1]));
    }

    #[test]
    fn padding_and_dot() {
        let v = RVector::from_ints(&[1, 2]);
        assert_eq!(v.padded(1, 2), RVector::from_ints(&[0, 1, 2, 0, 0]));
        assert_eq!(v.dot(&RVector::from_ints(&[3, -1])), int(1));
        assert_eq!(format!("{}", RVector::new(vec![frac(1, 2), int(-3)])), "(1/2, -3)");
    }
}
