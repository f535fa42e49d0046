//! The greatest symmetric seminorm below q,
//! ‖x‖_q = inf{q(y) + q(y − x) : y ∈ X}, its kernel and the T₂ criterion.
//!
//! Two independent routes are kept. The primal one solves the defining
//! program directly. The dual one takes the support function of
//! C = conv(A) ∩ (−conv(A)), the symmetric part of the dual body.

use num_traits::Zero;

use crate::cone::span_by_probing;
use crate::error::{Error, Result};
use crate::exact::{null_space, RMatrix, RVector, Rational, Subspace};
use crate::gauge::{AsymmetricGauge, Property};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::polyhedra::{HalfSpace, Polyhedron};

/// C = conv(A) ∩ (−conv(A)) with both representations.
#[derive(Clone, Debug)]
pub struct DualSymmetricBody {
    body: Polyhedron,
}

impl DualSymmetricBody {
    pub fn new(g: &AsymmetricGauge) -> Result<Self> {
        let a = g.functionals()?;
        let dim = g.dim();
        let hull = Polyhedron::from_vrep(dim, a, vec![])?;
        let rows = hull.hrep_or_convert(g.dd_budget())?;
        let mut sym = rows.clone();
        sym.extend(rows.into_iter().map(|r| HalfSpace::new(-&r.normal, r.offset)));
        let body = Polyhedron::from_hrep(dim, sym)?.dd_convert_with_budget(g.dd_budget())?;
        Ok(DualSymmetricBody { body })
    }

    pub fn polyhedron(&self) -> &Polyhedron {
        &self.body
    }

    pub fn vertices(&self) -> &[RVector] {
        &self.body.vrep().expect("converted").points
    }

    pub fn support(&self, x: &RVector) -> Rational {
        self.vertices().iter().map(|f| f.dot(x)).max().unwrap_or_else(Rational::zero)
    }
}

/// Exact ‖x‖_q by LP over (y, t₁, t₂).
pub fn seminorm_value(g: &AsymmetricGauge, x: &RVector) -> Result<Rational> {
    x.check_dim(g.dim())?;
    let n = g.dim();
    let mut lp = LinearProgram::new(n + 2);
    let t1 = RVector::unit(n + 2, n);
    let t2 = RVector::unit(n + 2, n + 1);
    for a in g.functionals()? {
        let ay = a.padded(0, 2);
        lp.le(&ay - &t1, Rational::zero());
        lp.le(&ay - &t2, a.dot(x));
    }
    lp.set_objective(&t1 + &t2);
    match solve_lp(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Malformed(format!("seminorm program ended {other:?}"))),
    }
}

/// Support function of the symmetric dual body at x.
pub fn seminorm_dual(g: &AsymmetricGauge, x: &RVector) -> Result<Rational> {
    x.check_dim(g.dim())?;
    Ok(DualSymmetricBody::new(g)?.support(x))
}

/// ker‖·‖_q. The dual annihilator of span C is checked against the primal
/// description θ − θ found by LP probing; when the dual body cannot be built
/// within the generator budget the primal answer stands alone.
pub fn seminorm_kernel(g: &AsymmetricGauge) -> Result<Subspace> {
    let a = g.functionals()?;
    let primal = span_by_probing(g.dim(), &a)?;
    let body = match DualSymmetricBody::new(g) {
        Ok(b) => b,
        Err(Error::DimensionTooLarge { .. }) => return Ok(primal),
        Err(e) => return Err(e),
    };
    let dual = null_space(&RMatrix::new(g.dim(), body.vertices().to_vec())?);
    if dual != primal {
        return Err(Error::RouteMismatch(format!(
            "kernel: dual route gives dimension {}, primal route {}",
            dual.dim(),
            primal.dim()
        )));
    }
    Ok(dual)
}

/// Whether y ∈ ker‖·‖_q, by feasibility of some z with q(z) = q(z − y) = 0.
pub fn in_kernel_primal(g: &AsymmetricGauge, y: &RVector) -> Result<bool> {
    y.check_dim(g.dim())?;
    let mut lp = LinearProgram::new(g.dim());
    for a in g.functionals()? {
        let ay = a.dot(y);
        lp.le(a.clone(), Rational::zero().min(ay));
    }
    Ok(solve_lp(&lp)?.is_feasible())
}

/// T₂ holds exactly when the kernel is trivial. Analytic gauges answer from
/// their registered facts, or negatively when θ is nontrivial.
pub fn is_t2(g: &AsymmetricGauge) -> Result<bool> {
    if let Some(a) = g.as_analytic() {
        if let Some(f) = a.metadata.fact(Property::T2) {
            return Ok(f.value);
        }
        if !a.metadata.theta_generators.is_empty() {
            return Ok(false);
        }
        return Err(Error::Undecidable(format!("T2 for analytic gauge `{}`", a.name)));
    }
    Ok(seminorm_kernel(g)?.is_zero())
}
