//! Asymmetric norms: validation, evaluation, products and equivalence.

mod analytic;

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

pub use analytic::{AnalyticGauge, AnalyticMetadata, Fact, Property, ANALYTIC_TOLERANCE};

use crate::error::{Error, Result};
use crate::exact::{int, null_space, to_f64, RMatrix, RVector, Rational};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::polyhedra::{in_cone, in_hull, Generators, HalfSpace, Polyhedron, DEFAULT_DD_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// q(x)
    Q,
    /// q(−x)
    QMinus,
    /// max{q(x), q(−x)}
    QSym,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GaugeValue {
    Exact(Rational),
    Approx(f64),
}

impl GaugeValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            GaugeValue::Exact(r) => to_f64(r),
            GaugeValue::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            GaugeValue::Exact(r) => Some(r),
            GaugeValue::Approx(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Representation {
    /// q(x) = max over the functionals of ⟨a, x⟩
    Hrep(Vec<RVector>),
    /// Minkowski gauge of conv(points) + cone(rays)
    Vrep(Generators),
    Analytic(Arc<AnalyticGauge>),
}

/// A validated asymmetric norm on ℚⁿ.
#[derive(Clone, Debug)]
pub struct AsymmetricGauge {
    dim: usize,
    repr: Representation,
    /// facet functionals of a vrep ball, filled at validation when the
    /// conversion fits in the budget
    converted: Option<Vec<RVector>>,
    dd_budget: usize,
}

impl AsymmetricGauge {
    pub fn from_functionals(dim: usize, functionals: Vec<RVector>) -> Result<Self> {
        validate_gauge(dim, Representation::Hrep(functionals))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        Self::from_functionals(dim, rows.iter().map(|r| RVector::from_ints(r)).collect())
    }

    pub fn from_generators(dim: usize, points: Vec<RVector>, rays: Vec<RVector>) -> Result<Self> {
        validate_gauge(dim, Representation::Vrep(Generators::new(points, rays)))
    }

    pub fn analytic(gauge: AnalyticGauge) -> Result<Self> {
        let dim = gauge.dim;
        validate_gauge(dim, Representation::Analytic(Arc::new(gauge)))
    }

    /// Same gauge, different generator budget for double description.
    pub fn with_dd_budget(mut self, budget: usize) -> Self {
        self.dd_budget = budget;
        if self.converted.is_none() {
            if let Representation::Vrep(g) = &self.repr {
                self.converted = vrep_functionals(self.dim, g, budget).ok();
            }
        }
        self
    }

    pub fn dd_budget(&self) -> usize {
        self.dd_budget
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn is_analytic(&self) -> bool {
        matches!(self.repr, Representation::Analytic(_))
    }

    pub fn as_analytic(&self) -> Option<&AnalyticGauge> {
        match &self.repr {
            Representation::Analytic(a) => Some(a),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match &self.repr {
            Representation::Hrep(_) => "hrep".into(),
            Representation::Vrep(_) => "vrep".into(),
            Representation::Analytic(a) => a.name.clone(),
        }
    }

    /// Functionals A with q = max ⟨a, ·⟩. A vrep ball is converted through its
    /// facets ⟨a, x⟩ ≤ b as a / b.
    pub fn functionals(&self) -> Result<Vec<RVector>> {
        match &self.repr {
            Representation::Hrep(a) => Ok(a.clone()),
            Representation::Vrep(g) => match &self.converted {
                Some(a) => Ok(a.clone()),
                None => vrep_functionals(self.dim, g, self.dd_budget),
            },
            Representation::Analytic(a) => Err(Error::NotPolyhedral(a.name.clone())),
        }
    }

    /// B_q[0, radius] as a polyhedron.
    pub fn ball(&self, radius: &Rational) -> Result<Polyhedron> {
        if let Representation::Vrep(g) = &self.repr {
            let points = g.points.iter().map(|p| p.scale(radius)).collect();
            return Polyhedron::from_vrep(self.dim, points, g.rays.clone());
        }
        let rows = self.functionals()?.into_iter().map(|a| HalfSpace::new(a, radius.clone())).collect();
        Polyhedron::from_hrep(self.dim, rows)
    }

    pub fn unit_ball(&self) -> Result<Polyhedron> {
        self.ball(&Rational::one())
    }

    pub fn eval(&self, x: &RVector, mode: Mode) -> Result<GaugeValue> {
        x.check_dim(self.dim)?;
        match &self.repr {
            Representation::Analytic(a) => {
                let p = x.to_f64();
                Ok(GaugeValue::Approx(analytic_mode(a, &p, mode)))
            }
            _ => self.eval_exact(x, mode).map(GaugeValue::Exact),
        }
    }

    /// Exact value; analytic gauges are rejected.
    pub fn eval_exact(&self, x: &RVector, mode: Mode) -> Result<Rational> {
        x.check_dim(self.dim)?;
        match mode {
            Mode::Q => self.q(x),
            Mode::QMinus => self.q(&-x),
            Mode::QSym => Ok(self.q(x)?.max(self.q(&-x)?)),
        }
    }

    /// Floating point value of any gauge, used for drawing and sampling.
    pub fn eval_f64(&self, x: &[f64], mode: Mode) -> f64 {
        match &self.repr {
            Representation::Analytic(a) => analytic_mode(a, x, mode),
            _ => {
                let a = self.functionals().unwrap_or_default();
                let q = |s: f64| {
                    a.iter()
                        .map(|f| f.to_f64().iter().zip(x).map(|(ai, xi)| s * ai * xi).sum::<f64>())
                        .fold(f64::NEG_INFINITY, f64::max)
                };
                match mode {
                    Mode::Q => q(1.0),
                    Mode::QMinus => q(-1.0),
                    Mode::QSym => q(1.0).max(q(-1.0)),
                }
            }
        }
    }

    fn q(&self, x: &RVector) -> Result<Rational> {
        match &self.repr {
            Representation::Hrep(a) => Ok(a.iter().map(|f| f.dot(x)).max().expect("validated gauges have functionals")),
            Representation::Vrep(g) => minkowski_lp(g, x),
            Representation::Analytic(a) => Err(Error::NotPolyhedral(a.name.clone())),
        }
    }

    /// Shorthand for the exact value of q.
    pub fn value(&self, x: &RVector) -> Result<Rational> {
        self.eval_exact(x, Mode::Q)
    }

    pub fn sym(&self, x: &RVector) -> Result<Rational> {
        self.eval_exact(x, Mode::QSym)
    }

    /// sup of qˢ over B_q[0,1]; `None` when unbounded.
    pub fn ball_sym_bounded(&self) -> Result<Option<Rational>> {
        let ball = self.unit_ball()?;
        let mut best = Rational::zero();
        for a in self.functionals()? {
            for c in [a.clone(), -&a] {
                match ball.support(&c)? {
                    None => return Ok(None),
                    Some(s) => best = best.max(s),
                }
            }
        }
        Ok(Some(best))
    }
}

fn analytic_mode(a: &AnalyticGauge, x: &[f64], mode: Mode) -> f64 {
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    match mode {
        Mode::Q => a.eval(x),
        Mode::QMinus => a.eval(&neg),
        Mode::QSym => a.eval(x).max(a.eval(&neg)),
    }
}

/// min Σμ subject to x = Σμᵢpᵢ + Σνⱼrⱼ with μ, ν ≥ 0.
fn minkowski_lp(g: &Generators, x: &RVector) -> Result<Rational> {
    let k = g.points.len() + g.rays.len();
    let mut lp = LinearProgram::new(k);
    for j in 0..k {
        lp.ge(RVector::unit(k, j), Rational::zero());
    }
    for d in 0..x.dim() {
        lp.equals(g.points.iter().chain(&g.rays).map(|v| v[d].clone()).collect(), x[d].clone());
    }
    let objective = (0..k).map(|j| if j < g.points.len() { Rational::one() } else { Rational::zero() }).collect();
    lp.set_objective(objective);
    match solve_lp(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        _ => Err(Error::GaugeInfinite { direction: x.clone() }),
    }
}

fn vrep_functionals(dim: usize, g: &Generators, budget: usize) -> Result<Vec<RVector>> {
    let rows = Polyhedron::from_vrep(dim, g.points.clone(), g.rays.clone())?.hrep_or_convert(budget)?;
    let mut out: Vec<RVector> = Vec::new();
    for r in rows {
        if !r.offset.is_positive() {
            return Err(Error::GaugeInfinite { direction: r.normal });
        }
        let a = r.normal.scale(&r.offset.recip());
        if !out.contains(&a) {
            out.push(a);
        }
    }
    // the Minkowski functional is nonnegative even where every facet is not
    if out.is_empty() || !origin_in_hull(dim, &out)? {
        out.push(RVector::zeros(dim));
    }
    Ok(out)
}

/// Checks the asymmetric norm axioms and returns the validated gauge.
pub fn validate_gauge(dim: usize, repr: Representation) -> Result<AsymmetricGauge> {
    if dim == 0 {
        return Err(Error::Malformed("dimension must be positive".into()));
    }
    let mut converted = None;
    match &repr {
        Representation::Hrep(a) => {
            for f in a {
                f.check_dim(dim)?;
            }
            if !origin_in_hull(dim, a)? {
                return Err(Error::NotNonnegative);
            }
            let m = RMatrix::new(dim, a.clone())?;
            if let Some(w) = null_space(&m).basis().first() {
                return Err(Error::DegenerateLineality { witness: w.clone() });
            }
        }
        Representation::Vrep(g) => {
            for v in g.points.iter().chain(&g.rays) {
                v.check_dim(dim)?;
            }
            let origin = RVector::zeros(dim);
            if !in_hull(&g.points, &g.rays, &origin)? {
                return Err(Error::Malformed("the ball does not contain the origin".into()));
            }
            let all: Vec<RVector> = g.points.iter().chain(&g.rays).cloned().collect();
            for i in 0..dim {
                for s in [1, -1] {
                    let e = RVector::unit(dim, i).scale(&int(s));
                    if !in_cone(&all, &e)? {
                        return Err(Error::GaugeInfinite { direction: e });
                    }
                }
            }
            if let Some(w) = lineality_witness(&g.rays)? {
                return Err(Error::DegenerateLineality { witness: w });
            }
            converted = vrep_functionals(dim, g, DEFAULT_DD_BUDGET).ok();
        }
        Representation::Analytic(a) => {
            if a.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.dim });
            }
            a.check_metadata()?;
        }
    }
    Ok(AsymmetricGauge { dim, repr, converted, dd_budget: DEFAULT_DD_BUDGET })
}

fn origin_in_hull(dim: usize, a: &[RVector]) -> Result<bool> {
    in_hull(a, &[], &RVector::zeros(dim))
}

/// A nonzero r with r, −r ∈ cone(rays), if any.
fn lineality_witness(rays: &[RVector]) -> Result<Option<RVector>> {
    let rays: Vec<&RVector> = rays.iter().filter(|r| !r.is_zero()).collect();
    if rays.is_empty() {
        return Ok(None);
    }
    let dim = rays[0].dim();
    let k = rays.len();
    let mut lp = LinearProgram::new(k);
    for j in 0..k {
        lp.ge(RVector::unit(k, j), Rational::zero());
    }
    lp.equals(RVector::new(vec![Rational::one(); k]), Rational::one());
    for d in 0..dim {
        lp.equals(rays.iter().map(|r| r[d].clone()).collect(), Rational::zero());
    }
    Ok(match solve_lp(&lp)? {
        LpOutcome::Optimal { witness, .. } => {
            let j = (0..k).find(|&j| witness[j].is_positive()).expect("weights sum to one");
            Some(rays[j].clone())
        }
        _ => None,
    })
}

/// q*(x, y) = max{q₁(x), q₂(y)} on the product space.
pub fn product_gauge(g1: &AsymmetricGauge, g2: &AsymmetricGauge) -> Result<AsymmetricGauge> {
    let (n1, n2) = (g1.dim, g2.dim);
    let mut rows: Vec<RVector> = g1.hrep_only()?.iter().map(|a| a.padded(0, n2)).collect();
    rows.extend(g2.hrep_only()?.iter().map(|a| a.padded(n1, 0)));
    Ok(AsymmetricGauge::from_functionals(n1 + n2, rows)?.with_dd_budget(g1.dd_budget.min(g2.dd_budget)))
}

impl AsymmetricGauge {
    fn hrep_only(&self) -> Result<&[RVector]> {
        match &self.repr {
            Representation::Hrep(a) => Ok(a),
            _ => Err(Error::NotPolyhedral(format!("{} (hrep required)", self.name()))),
        }
    }
}

/// sup of g over B_h[0,1]; `None` when unbounded.
fn sup_over_ball(g: &[RVector], ball: &Polyhedron) -> Result<Option<Rational>> {
    let mut best: Option<Rational> = None;
    for a in g {
        match ball.support(a)? {
            None => return Ok(None),
            Some(s) => best = Some(best.map_or(s.clone(), |b| b.max(s))),
        }
    }
    Ok(best)
}

/// Tight constants (M, N) with M·g₂ ≤ g₁ ≤ N·g₂, or `None` when no such
/// constants exist.
pub fn gauges_equivalent(g1: &AsymmetricGauge, g2: &AsymmetricGauge) -> Result<Option<(Rational, Rational)>> {
    if g1.dim != g2.dim {
        return Err(Error::DimensionMismatch { expected: g1.dim, found: g2.dim });
    }
    let (a1, a2) = (g1.hrep_only()?, g2.hrep_only()?);
    let Some(n) = sup_over_ball(a1, &g2.unit_ball()?)? else { return Ok(None) };
    let Some(inv_m) = sup_over_ball(a2, &g1.unit_ball()?)? else { return Ok(None) };
    if inv_m.is_zero() || n.is_zero() {
        return Ok(None);
    }
    Ok(Some((inv_m.recip(), n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn xplus_absy() -> AsymmetricGauge {
        AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    fn linf(n: usize) -> AsymmetricGauge {
        let rows = (0..n).flat_map(|i| [RVector::unit(n, i), -&RVector::unit(n, i)]).collect();
        AsymmetricGauge::from_functionals(n, rows).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).is_ok());
        assert!(matches!(AsymmetricGauge::from_ints(&[&[1, 0]]), Err(Error::NotNonnegative)));
        match AsymmetricGauge::from_ints(&[&[1, 0], &[-1, 0]]) {
            Err(Error::DegenerateLineality { witness }) => assert_eq!(witness, v(&[0, 1])),
            other => panic!("{other:?}"),
        }
        assert!(matches!(AsymmetricGauge::from_functionals(2, vec![]), Err(Error::NotNonnegative)));
    }

    #[test]
    fn vrep_validation() {
        // ball of max{x⁺, |y|}
        let g = AsymmetricGauge::from_generators(2, vec![v(&[1, 1]), v(&[1, -1])], vec![v(&[-1, 0])]).unwrap();
        assert_eq!(g.value(&v(&[-5, 2])).unwrap(), int(2));
        let f = g.functionals().unwrap();
        assert_eq!(f.len(), 3);

        let half = AsymmetricGauge::from_generators(2, vec![v(&[0, 0]), v(&[1, 0])], vec![v(&[0, 1])]);
        assert!(matches!(half, Err(Error::GaugeInfinite { .. })));
        let line = AsymmetricGauge::from_generators(1, vec![v(&[0])], vec![v(&[1]), v(&[-1])]);
        assert!(matches!(line, Err(Error::DegenerateLineality { .. })));
        let away = AsymmetricGauge::from_generators(1, vec![v(&[1]), v(&[2])], vec![]);
        assert!(matches!(away, Err(Error::Malformed(_))));
    }

    #[test]
    fn eval_examples() {
        let q = xplus_absy();
        assert_eq!(q.eval_exact(&v(&[-5, 2]), Mode::Q).unwrap(), int(2));
        assert_eq!(q.eval_exact(&v(&[3, 1]), Mode::Q).unwrap(), int(3));
        assert_eq!(q.eval_exact(&v(&[-5, 2]), Mode::QSym).unwrap(), int(5));
        assert_eq!(q.eval_exact(&v(&[-5, 2]), Mode::QMinus).unwrap(), int(5));
        assert_eq!(q.eval_exact(&v(&[0, 0]), Mode::Q).unwrap(), int(0));
        assert!(matches!(q.eval(&v(&[1]), Mode::Q), Err(Error::DimensionMismatch { .. })));
        assert!((q.eval_f64(&[-5.0, 2.0], Mode::QSym) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn product_examples() {
        let xplus = AsymmetricGauge::from_ints(&[&[1], &[0]]).unwrap();
        let p = product_gauge(&xplus, &xplus).unwrap();
        assert_eq!(p.value(&v(&[-1, 3])).unwrap(), int(3));
        assert_eq!(p.value(&v(&[-1, -3])).unwrap(), int(0));

        let l1 = linf(1);
        let p = product_gauge(&l1, &l1).unwrap();
        assert_eq!(gauges_equivalent(&p, &linf(2)).unwrap(), Some((int(1), int(1))));
    }

    #[test]
    fn equivalence_examples() {
        let q = xplus_absy();
        let two_q = AsymmetricGauge::from_ints(&[&[2, 0], &[0, 2], &[0, -2]]).unwrap();
        assert_eq!(gauges_equivalent(&q, &two_q).unwrap(), Some((frac(1, 2), frac(1, 2))));

        let xplus = AsymmetricGauge::from_ints(&[&[1], &[0]]).unwrap();
        assert_eq!(gauges_equivalent(&xplus, &linf(1)).unwrap(), None);
        assert_eq!(gauges_equivalent(&q, &linf(2)).unwrap(), None);
    }

    #[test]
    fn sym_bounded_examples() {
        assert_eq!(linf(2).ball_sym_bounded().unwrap(), Some(int(1)));
        let xplus = AsymmetricGauge::from_ints(&[&[1], &[0]]).unwrap();
        assert_eq!(xplus.ball_sym_bounded().unwrap(), None);
        assert_eq!(xplus_absy().ball_sym_bounded().unwrap(), None);
    }
}
