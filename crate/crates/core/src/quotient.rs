//! Quotients X/Y with w_Y(x + Y) = inf{q(x + y) : y ∈ Y}, and q-closures of
//! subspaces.

use num_traits::{One, Signed, Zero};

use crate::cone::{span_theta, theta_cone};
use crate::error::{Error, Result};
use crate::exact::{RVector, Rational, Subspace};
use crate::gauge::AsymmetricGauge;
use crate::lp::{maximize, solve_lp, LinearProgram, LpOutcome};
use crate::polyhedra::Polyhedron;
use crate::seminorm::seminorm_kernel;

#[derive(Clone, Debug)]
pub struct QuotientSpace {
    gauge: AsymmetricGauge,
    divisor: Subspace,
    complement: Vec<RVector>,
}

impl QuotientSpace {
    pub fn new(gauge: &AsymmetricGauge, divisor: &Subspace) -> Result<Self> {
        check_ambient(gauge, divisor)?;
        gauge.functionals()?;
        let n = gauge.dim();
        let complement = divisor.free_coordinates().into_iter().map(|c| RVector::unit(n, c)).collect();
        Ok(QuotientSpace { gauge: gauge.clone(), divisor: divisor.clone(), complement })
    }

    pub fn gauge(&self) -> &AsymmetricGauge {
        &self.gauge
    }

    pub fn divisor(&self) -> &Subspace {
        &self.divisor
    }

    /// Unit vectors on the non-pivot coordinates of Y; together with the
    /// basis of Y they span the ambient space.
    pub fn complement_basis(&self) -> &[RVector] {
        &self.complement
    }

    /// Coordinates of x + Y in the complement basis.
    pub fn coordinates(&self, x: &RVector) -> Result<RVector> {
        self.divisor.quotient_coordinates(x)
    }

    /// w_Y(x + Y), the attained infimum of q over the coset.
    pub fn seminorm(&self, x: &RVector) -> Result<Rational> {
        x.check_dim(self.gauge.dim())?;
        let basis = self.divisor.basis();
        let k = basis.len();
        // variables (c, t): ⟨a, x + Σ cⱼ yⱼ⟩ ≤ t
        let mut lp = LinearProgram::new(k + 1);
        let t = RVector::unit(k + 1, k);
        for a in self.gauge.functionals()? {
            let row: RVector = basis.iter().map(|y| a.dot(y)).chain([-Rational::one()]).collect();
            lp.le(row, -a.dot(x));
        }
        lp.set_objective(t);
        match solve_lp(&lp)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            other => Err(Error::Malformed(format!("quotient program ended {other:?}"))),
        }
    }
}

pub fn quotient_seminorm(qs: &QuotientSpace, x: &RVector) -> Result<Rational> {
    qs.seminorm(x)
}

fn check_ambient(g: &AsymmetricGauge, y: &Subspace) -> Result<()> {
    if g.dim() == y.ambient_dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: g.dim(), found: y.ambient_dim() })
    }
}

/// The q-closure of Y, computed as Y − θ_q.
pub fn subspace_q_closure(g: &AsymmetricGauge, y: &Subspace) -> Result<Polyhedron> {
    check_ambient(g, y)?;
    g.functionals()?;
    let theta = theta_cone(g)?;
    let mut rays: Vec<RVector> = y.basis().iter().flat_map(|b| [b.clone(), -b]).collect();
    rays.extend(theta.generators().iter().map(|t| -t));
    Polyhedron::cone(g.dim(), rays)
}

/// Direct test of x ∈ cl_q(Y): some y ∈ Y has q(y − x) = 0.
pub fn in_q_closure_lp(g: &AsymmetricGauge, y: &Subspace, x: &RVector) -> Result<bool> {
    check_ambient(g, y)?;
    x.check_dim(g.dim())?;
    let basis = y.basis();
    let mut lp = LinearProgram::new(basis.len().max(1));
    for a in g.functionals()? {
        let mut row: Vec<Rational> = basis.iter().map(|b| a.dot(b)).collect();
        if row.is_empty() {
            row.push(Rational::zero());
        }
        lp.le(RVector::new(row), a.dot(x));
    }
    Ok(solve_lp(&lp)?.is_feasible())
}

/// Whether cl_q(Y) = Y, decided by LP alone: the closure leaves Y exactly
/// when some normal direction of Y is nonconstant on it.
pub fn is_q_closed_lp(g: &AsymmetricGauge, y: &Subspace) -> Result<bool> {
    check_ambient(g, y)?;
    let n = g.dim();
    let basis = y.basis();
    let k = basis.len();
    let a = g.functionals()?;
    for c in y.orthogonal_complement().basis() {
        for d in [c.clone(), -c] {
            // variables (x, coefficients of y): A(Σ cⱼ yⱼ − x) ≤ 0, ⟨d, x⟩ ≤ 1
            let mut lp = LinearProgram::new(n + k);
            for f in &a {
                let row: RVector = (-f).concat(&basis.iter().map(|b| f.dot(b)).collect());
                lp.le(row, Rational::zero());
            }
            let obj = d.padded(0, k);
            lp.le(obj.clone(), Rational::one());
            match maximize(&lp, &obj)? {
                LpOutcome::Optimal { value, .. } if value.is_positive() => return Ok(false),
                LpOutcome::Optimal { .. } => {}
                _ => return Err(Error::Malformed("closure probe must be bounded and feasible".into())),
            }
        }
    }
    Ok(true)
}

/// X/Y is T₁ exactly when Y is q-closed, which for polyhedral gauges means
/// θ_q ⊆ Y.
pub fn is_quotient_t1(g: &AsymmetricGauge, y: &Subspace) -> Result<bool> {
    check_ambient(g, y)?;
    g.functionals()?;
    span_theta(g)?.is_subset_of(y)
}

/// Whether w_Y is an asymmetric norm on X/Y: no coset ξ ≠ Y has
/// w(ξ) = w(−ξ) = 0. Such cosets make up the lineality of θ_q + Y.
pub fn is_quotient_norm(g: &AsymmetricGauge, y: &Subspace) -> Result<bool> {
    check_ambient(g, y)?;
    let n = g.dim();
    let basis = y.basis();
    let k = basis.len();
    let a = g.functionals()?;
    for c in y.orthogonal_complement().basis() {
        // variables (x, u, v): x − Yu ∈ θ, −x − Yv ∈ θ
        let mut lp = LinearProgram::new(n + 2 * k);
        for f in &a {
            let fy: RVector = basis.iter().map(|b| f.dot(b)).collect();
            let zeros = RVector::zeros(k);
            lp.le(f.concat(&-&fy).concat(&zeros), Rational::zero());
            lp.le((-f).concat(&zeros).concat(&-&fy), Rational::zero());
        }
        let obj = c.padded(0, 2 * k);
        lp.le(obj.clone(), Rational::one());
        match maximize(&lp, &obj)? {
            LpOutcome::Optimal { value, .. } if value.is_positive() => return Ok(false),
            LpOutcome::Optimal { .. } => {}
            _ => return Err(Error::Malformed("norm probe must be bounded and feasible".into())),
        }
    }
    Ok(true)
}

/// ker‖·‖_q ⊆ Y, the necessary condition for X/Y to be T₂.
pub fn quotient_t2_lower_bound(g: &AsymmetricGauge, y: &Subspace) -> Result<bool> {
    check_ambient(g, y)?;
    seminorm_kernel(g)?.is_subset_of(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn q() -> AsymmetricGauge {
        AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    fn x_axis() -> Subspace {
        Subspace::span(2, &[v(&[1, 0])]).unwrap()
    }

    fn y_axis() -> Subspace {
        Subspace::span(2, &[v(&[0, 1])]).unwrap()
    }

    #[test]
    fn seminorm_examples() {
        let qs = QuotientSpace::new(&q(), &x_axis()).unwrap();
        assert_eq!(qs.seminorm(&v(&[0, 3])).unwrap(), int(3));
        assert_eq!(qs.seminorm(&v(&[4, 0])).unwrap(), int(0));
        let qs = QuotientSpace::new(&q(), &y_axis()).unwrap();
        assert_eq!(quotient_seminorm(&qs, &v(&[5, 0])).unwrap(), int(5));
        assert_eq!(qs.seminorm(&v(&[-5, 7])).unwrap(), int(0));
        assert_eq!(qs.complement_basis(), &[v(&[1, 0])]);
        let zero = QuotientSpace::new(&q(), &Subspace::zero(2)).unwrap();
        assert_eq!(zero.seminorm(&v(&[-5, 2])).unwrap(), int(2));
    }

    #[test]
    fn closure_examples() {
        let c = subspace_q_closure(&q(), &x_axis()).unwrap();
        let x_axis_poly = Polyhedron::cone(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert!(c.same_set(&x_axis_poly).unwrap());

        let c = subspace_q_closure(&q(), &y_axis()).unwrap();
        let half = Polyhedron::cone(2, vec![v(&[0, 1]), v(&[0, -1]), v(&[1, 0])]).unwrap();
        assert!(c.same_set(&half).unwrap());
        assert!(in_q_closure_lp(&q(), &y_axis(), &v(&[3, -2])).unwrap());
        assert!(!in_q_closure_lp(&q(), &y_axis(), &v(&[-3, -2])).unwrap());

        let full = subspace_q_closure(&q(), &Subspace::full(2)).unwrap();
        assert!(full.contains_point(&v(&[-9, 4])).unwrap());
    }

    #[test]
    fn quotient_t1_examples() {
        assert!(is_quotient_t1(&q(), &x_axis()).unwrap());
        assert!(!is_quotient_t1(&q(), &y_axis()).unwrap());
        assert!(is_quotient_t1(&q(), &Subspace::full(2)).unwrap());
        assert!(is_q_closed_lp(&q(), &x_axis()).unwrap());
        assert!(!is_q_closed_lp(&q(), &y_axis()).unwrap());
        assert!(is_q_closed_lp(&q(), &Subspace::full(2)).unwrap());
    }

    #[test]
    fn quotient_norm_examples() {
        assert!(is_quotient_norm(&q(), &y_axis()).unwrap());
        assert!(is_quotient_norm(&q(), &x_axis()).unwrap());
        assert!(is_quotient_norm(&q(), &Subspace::zero(2)).unwrap());
        let orth = AsymmetricGauge::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let diag = Subspace::span(2, &[v(&[1, 1])]).unwrap();
        // θ + Y is everything, so every coset has zero length both ways
        assert!(!is_quotient_norm(&orth, &diag).unwrap());
        let anti = Subspace::span(2, &[v(&[1, -1])]).unwrap();
        assert!(is_quotient_norm(&orth, &anti).unwrap());
    }

    #[test]
    fn t2_bound_examples() {
        assert!(quotient_t2_lower_bound(&q(), &x_axis()).unwrap());
        assert!(!quotient_t2_lower_bound(&q(), &y_axis()).unwrap());
        assert!(quotient_t2_lower_bound(&q(), &Subspace::full(2)).unwrap());
    }
}
