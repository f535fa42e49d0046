//! Continuity constants, the ⟨θ_q⟩ × Z decomposition, right-boundedness,
//! ball closedness and compactness, covering dimension.

mod report;

use num_traits::{One, Signed, Zero};

pub use report::{check_consistency, separation_report, separation_report_with_facts, Flag, Provenance, SeparationReport, Truth};

use crate::cone::{span_by_probing, span_theta, theta_cone};
use crate::error::{Error, Result};
use crate::exact::{RMatrix, RVector, Rational, Subspace};
use crate::gauge::{AsymmetricGauge, Property};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::polyhedra::{Generators, Polyhedron};

/// Least K with p(f(x)) ≤ K·q(x) for all x, or `None` when f is not
/// continuous. The supremum of p∘f over B_q[0,1] is attained at a vertex
/// unless some row of p∘f is positive on a recession ray.
pub fn continuity_constant(f: &RMatrix, from: &AsymmetricGauge, to: &AsymmetricGauge) -> Result<Option<Rational>> {
    if f.ncols() != from.dim() {
        return Err(Error::DimensionMismatch { expected: from.dim(), found: f.ncols() });
    }
    if f.nrows() != to.dim() {
        return Err(Error::DimensionMismatch { expected: to.dim(), found: f.nrows() });
    }
    let ball = ball_generators(from)?;
    let ft = f.transpose();
    let rows: Vec<RVector> = to.functionals()?.iter().map(|b| ft.apply(b)).collect::<Result<_>>()?;
    if rows.iter().any(|c| ball.rays.iter().any(|r| c.dot(r).is_positive())) {
        return Ok(None);
    }
    let k = ball
        .points
        .iter()
        .flat_map(|v| rows.iter().map(move |c| c.dot(v)))
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Some(k.max(Rational::zero())))
}

/// Vertices and extreme rays of B_q[0,1].
pub fn ball_generators(g: &AsymmetricGauge) -> Result<Generators> {
    g.unit_ball()?.vrep_or_convert(g.dd_budget())
}

/// X = Y ⊕ Z with Y = ⟨θ_q⟩ and Z its orthogonal complement.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub y: Subspace,
    pub z: Subspace,
    /// orthogonal projector onto Y
    pub projector: RMatrix,
    pub k_p: Rational,
    pub k_complement: Rational,
    /// ψ(x + Y) = (I − P)x, as a matrix on the quotient coordinates
    pub psi: RMatrix,
    /// θ_q ∩ Z = {0}
    pub z_is_t1: bool,
}

pub fn decompose(g: &AsymmetricGauge) -> Result<Decomposition> {
    let n = g.dim();
    let y = span_theta(g)?;
    let z = y.orthogonal_complement();
    let projector = y.orthogonal_projector();
    let rest = RMatrix::identity(n).sub(&projector)?;
    let k_p = continuity_constant(&projector, g, g)?
        .ok_or_else(|| Error::Undecidable("projection onto the span of θ is not continuous".into()))?;
    let k_complement = continuity_constant(&rest, g, g)?
        .ok_or_else(|| Error::Undecidable("complementary projection is not continuous".into()))?;
    let columns: Vec<RVector> =
        y.free_coordinates().into_iter().map(|c| rest.column(c)).collect();
    let psi = RMatrix::from_columns(n, &columns)?;
    let mut rows = g.functionals()?;
    for b in y.basis() {
        rows.push(b.clone());
        rows.push(-b);
    }
    let z_is_t1 = span_by_probing(n, &rows)?.is_zero();
    Ok(Decomposition { y, z, projector, k_p, k_complement, psi, z_is_t1 })
}

/// min over t ∈ θ of qˢ(x − t).
pub fn sym_distance_to_theta(g: &AsymmetricGauge, x: &RVector) -> Result<Rational> {
    x.check_dim(g.dim())?;
    let n = g.dim();
    let a = g.functionals()?;
    // variables (t, s)
    let mut lp = LinearProgram::new(n + 1);
    let s = RVector::unit(n + 1, n);
    for f in &a {
        let ft = f.padded(0, 1);
        lp.le(ft.clone(), Rational::zero());
        lp.le(&(-&ft) - &s, -f.dot(x));
        lp.le(&ft - &s, f.dot(x));
    }
    lp.set_objective(s);
    match solve_lp(&lp)? {
        LpOutcome::Optimal { value, .. } => Ok(value),
        other => Err(Error::Malformed(format!("distance program ended {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightBoundedness {
    pub value: Truth,
    pub radius: Option<Rational>,
    pub provenance: Provenance,
}

/// Whether B_q(0,1) ⊆ B_{qˢ}(0,r) + θ_q for some r, with the least such r.
/// Polyhedral gauges always are; the radius is the largest distance of a
/// ball vertex to θ_q.
pub fn right_bounded(g: &AsymmetricGauge) -> Result<RightBoundedness> {
    if let Some(a) = g.as_analytic() {
        return Ok(match a.metadata.fact(Property::RightBounded) {
            Some(f) => RightBoundedness {
                value: f.value.into(),
                radius: f.radius.clone(),
                provenance: Provenance::Metadata(f.citation.clone()),
            },
            None => RightBoundedness { value: Truth::Unknown, radius: None, provenance: Provenance::Unknown },
        });
    }
    let mut r = Rational::zero();
    for v in &ball_generators(g)?.points {
        r = r.max(sym_distance_to_theta(g, v)?);
    }
    Ok(RightBoundedness { value: Truth::True, radius: Some(r), provenance: Provenance::Computed })
}

/// The q-closure B_q[0,1] − θ_q of the closed unit ball.
pub fn ball_q_closure(g: &AsymmetricGauge) -> Result<Polyhedron> {
    let ball = ball_generators(g)?;
    let theta = theta_cone(g)?;
    let mut rays = ball.rays.clone();
    rays.extend(theta.generators().iter().map(|t| -t));
    Polyhedron::from_vrep(g.dim(), ball.points, rays)
}

/// Whether B_q[0,1] is q-closed, i.e. B − θ_q ⊆ B.
pub fn ball_q_closed(g: &AsymmetricGauge) -> Result<Truth> {
    if let Some(a) = g.as_analytic() {
        return Ok(a.metadata.fact(Property::BallQClosed).map_or(Truth::Unknown, |f| f.value.into()));
    }
    Ok(g.unit_ball()?.contains(&ball_q_closure(g)?)?.into())
}

/// Compact when θ_q = {0}, or when a single translate v + θ_q with v ∈ B
/// covers the ball. Anything else is left open unless metadata says more.
pub fn ball_q_compact(g: &AsymmetricGauge) -> Result<Truth> {
    if let Some(a) = g.as_analytic() {
        if a.metadata.theta_generators.is_empty() {
            return Ok(Truth::True);
        }
        return Ok(a.metadata.fact(Property::BallQCompact).map_or(Truth::Unknown, |f| f.value.into()));
    }
    if theta_cone(g)?.is_trivial() {
        return Ok(Truth::True);
    }
    Ok(if single_translate_cover(g)?.is_some() { Truth::True } else { Truth::Unknown })
}

/// Some v ∈ B with B ⊆ v + θ_q.
pub fn single_translate_cover(g: &AsymmetricGauge) -> Result<Option<RVector>> {
    let a = g.functionals()?;
    let ball = ball_generators(g)?;
    let mut lp = LinearProgram::new(g.dim());
    for f in &a {
        lp.le(f.clone(), Rational::one());
        for w in &ball.points {
            lp.ge(f.clone(), f.dot(w));
        }
    }
    Ok(match solve_lp(&lp)? {
        LpOutcome::Optimal { witness, .. } => Some(witness),
        _ => None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoveringDimension {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for CoveringDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoveringDimension::Finite(n) => write!(f, "{n}"),
            CoveringDimension::Infinite => f.write_str("infinity"),
        }
    }
}

/// 0 when ⟨θ_q⟩ = X, the algebraic dimension when θ_q = {0}, infinite
/// otherwise.
pub fn covering_dimension(g: &AsymmetricGauge) -> Result<CoveringDimension> {
    Ok(dimension_from_span(&span_theta(g)?))
}

pub fn dimension_from_span(y: &Subspace) -> CoveringDimension {
    if y.is_full() {
        CoveringDimension::Finite(0)
    } else if y.is_zero() {
        CoveringDimension::Finite(y.ambient_dim())
    } else {
        CoveringDimension::Infinite
    }
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

    fn p() -> AsymmetricGauge {
        AsymmetricGauge::from_ints(&[&[1, 0], &[-1, 0], &[0, -1]]).unwrap()
    }

    fn linf(n: usize) -> AsymmetricGauge {
        let rows = (0..n).flat_map(|i| [RVector::unit(n, i), -&RVector::unit(n, i)]).collect();
        AsymmetricGauge::from_functionals(n, rows).unwrap()
    }

    fn xplus() -> AsymmetricGauge {
        AsymmetricGauge::from_ints(&[&[1], &[0]]).unwrap()
    }

    #[test]
    fn continuity_examples() {
        assert_eq!(continuity_constant(&RMatrix::identity(2), &linf(2), &linf(2)).unwrap(), Some(int(1)));
        let proj = RMatrix::from_ints(&[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(continuity_constant(&proj, &q(), &q()).unwrap(), Some(int(1)));
        let embed = RMatrix::from_ints(&[&[0], &[1]]).unwrap();
        assert_eq!(continuity_constant(&embed, &xplus(), &linf(2)).unwrap(), None);
        assert_eq!(continuity_constant(&RMatrix::zeros(2, 2), &q(), &q()).unwrap(), Some(int(0)));
        let half = RMatrix::from_ints(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(continuity_constant(&half, &linf(2), &linf(2)).unwrap(), Some(int(2)));
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&q()).unwrap();
        assert_eq!(d.y, Subspace::span(2, &[v(&[1, 0])]).unwrap());
        assert_eq!(d.z, Subspace::span(2, &[v(&[0, 1])]).unwrap());
        assert_eq!((d.k_p.clone(), d.k_complement.clone()), (int(1), int(1)));
        assert!(d.z_is_t1);

        let d = decompose(&linf(3)).unwrap();
        assert!(d.y.is_zero() && d.z.is_full());
        assert_eq!(d.projector, RMatrix::zeros(3, 3));
        assert_eq!((d.k_p, d.k_complement), (int(0), int(1)));

        let d = decompose(&p()).unwrap();
        assert_eq!(d.y, Subspace::span(2, &[v(&[0, 1])]).unwrap());
        assert_eq!(d.z, Subspace::span(2, &[v(&[1, 0])]).unwrap());
        assert_eq!(d.psi, RMatrix::from_ints(&[&[1], &[0]]).unwrap());
    }

    #[test]
    fn right_bounded_examples() {
        let r = right_bounded(&p()).unwrap();
        assert_eq!((r.value, r.radius), (Truth::True, Some(int(1))));
        let r = right_bounded(&linf(3)).unwrap();
        assert_eq!((r.value, r.radius), (Truth::True, Some(int(1))));
        assert_eq!(sym_distance_to_theta(&p(), &v(&[1, -3])).unwrap(), int(3));
        let skew = AsymmetricGauge::from_ints(&[&[1, 0], &[-1, 0], &[1, -2]]).unwrap();
        let r = right_bounded(&skew).unwrap();
        assert!(r.radius.unwrap() >= int(1));
    }

    #[test]
    fn ball_closed_examples() {
        assert_eq!(ball_q_closed(&linf(2)).unwrap(), Truth::True);
        assert_eq!(ball_q_closed(&p()).unwrap(), Truth::False);
        let strip = Polyhedron::from_vrep(2, vec![v(&[1, 0]), v(&[-1, 0])], vec![v(&[0, 1]), v(&[0, -1])]).unwrap();
        assert!(ball_q_closure(&p()).unwrap().same_set(&strip).unwrap());
        assert_eq!(ball_q_closed(&xplus()).unwrap(), Truth::False);
        let line = Polyhedron::from_vrep(1, vec![v(&[0])], vec![v(&[1]), v(&[-1])]).unwrap();
        assert!(ball_q_closure(&xplus()).unwrap().same_set(&line).unwrap());
    }

    #[test]
    fn ball_compact_examples() {
        assert_eq!(ball_q_compact(&xplus()).unwrap(), Truth::True);
        assert_eq!(single_translate_cover(&xplus()).unwrap(), Some(v(&[1])));
        assert_eq!(ball_q_compact(&linf(2)).unwrap(), Truth::True);
        assert_eq!(ball_q_compact(&q()).unwrap(), Truth::Unknown);
    }

    #[test]
    fn covering_dimension_examples() {
        let orth = AsymmetricGauge::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(covering_dimension(&orth).unwrap(), CoveringDimension::Finite(0));
        assert_eq!(covering_dimension(&q()).unwrap(), CoveringDimension::Infinite);
        assert_eq!(covering_dimension(&linf(3)).unwrap(), CoveringDimension::Finite(3));
    }
}
