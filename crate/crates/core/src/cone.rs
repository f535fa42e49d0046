//! θ_q = {x : q(x) = 0}, its span, and the T₁ criterion.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RVector, Rational, Subspace};
use crate::gauge::{AsymmetricGauge, Representation};
use crate::lp::{maximize, LinearProgram, LpOutcome};
use crate::polyhedra::{cone_generators, in_cone, Generators, HalfSpace, Polyhedron};

/// The cone of vectors of zero length, with irredundant generators.
#[derive(Clone, Debug)]
pub struct ThetaCone {
    dim: usize,
    cone: Polyhedron,
    generators: Vec<RVector>,
    /// rows with {x : ⟨a, x⟩ ≤ 0 for all a} = θ, when polyhedral
    functionals: Option<Vec<RVector>>,
}

impl ThetaCone {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> &Polyhedron {
        &self.cone
    }

    pub fn generators(&self) -> &[RVector] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, x: &RVector) -> Result<bool> {
        x.check_dim(self.dim)?;
        match &self.functionals {
            Some(a) => Ok(a.iter().all(|f| !f.dot(x).is_positive())),
            None => in_cone(&self.generators, x),
        }
    }
}

pub fn theta_cone(g: &AsymmetricGauge) -> Result<ThetaCone> {
    let dim = g.dim();
    match g.representation() {
        Representation::Analytic(a) => {
            let generators = Generators::new(vec![], a.metadata.theta_generators.clone()).irredundant()?.rays;
            Ok(ThetaCone { dim, cone: Polyhedron::cone(dim, generators.clone())?, generators, functionals: None })
        }
        Representation::Vrep(b) => {
            let generators = Generators::new(vec![], b.rays.clone()).irredundant()?.rays;
            let generators = generators.into_iter().map(|r| r.primitive()).collect::<Vec<_>>();
            Ok(ThetaCone { dim, cone: Polyhedron::cone(dim, generators.clone())?, generators, functionals: None })
        }
        Representation::Hrep(a) => {
            let gens = cone_generators(dim, a, g.dd_budget())?;
            debug_assert!(gens.lines.is_empty(), "validated gauges have pointed θ");
            let rows = a.iter().map(|f| HalfSpace::new(f.clone(), Rational::zero())).collect();
            let generators = gens.rays;
            let cone = Polyhedron::from_reps(
                dim,
                rows,
                Generators::new(vec![RVector::zeros(dim)], generators.clone()),
            )?;
            Ok(ThetaCone { dim, cone, generators, functionals: Some(a.clone()) })
        }
    }
}

/// Y = ⟨θ_q⟩. For polyhedral gauges given by functionals this is found by LP
/// probing: look for a cone vector leaving the current span along some normal
/// direction, add it, repeat.
pub fn span_theta(g: &AsymmetricGauge) -> Result<Subspace> {
    let dim = g.dim();
    match g.representation() {
        Representation::Analytic(a) => Subspace::span(dim, &a.metadata.theta_span),
        Representation::Vrep(b) => Subspace::span(dim, &b.rays),
        Representation::Hrep(a) => span_by_probing(dim, a),
    }
}

/// Span of {x : Ax ≤ 0} by at most `dim` rounds of LP probes.
pub(crate) fn span_by_probing(dim: usize, a: &[RVector]) -> Result<Subspace> {
    let mut span = Subspace::zero(dim);
    'grow: loop {
        for c in span.orthogonal_complement().basis() {
            for d in [c.clone(), -c] {
                let mut lp = LinearProgram::new(dim);
                for f in a {
                    lp.le(f.clone(), Rational::zero());
                }
                lp.le(d.clone(), Rational::one());
                let hit = match maximize(&lp, &d)? {
                    LpOutcome::Optimal { value, witness } if value.is_positive() => witness,
                    LpOutcome::Optimal { .. } => continue,
                    _ => return Err(Error::Malformed("probe program over θ must be bounded and feasible".into())),
                };
                let mut basis = span.basis().to_vec();
                basis.push(hit);
                span = Subspace::span(dim, &basis)?;
                continue 'grow;
            }
        }
        return Ok(span);
    }
}

/// T₁ holds exactly when θ_q = {0}.
pub fn is_t1(g: &AsymmetricGauge) -> Result<bool> {
    Ok(span_theta(g)?.is_zero())
}

/// Whether {base + t·direction : t ≥ 0} ⊆ B_q[center, radius].
pub fn ray_in_ball(
    g: &AsymmetricGauge,
    center: &RVector,
    radius: &Rational,
    base: &RVector,
    direction: &RVector,
) -> Result<bool> {
    if !radius.is_positive() {
        return Err(Error::Malformed("radius must be positive".into()));
    }
    let offset = base - center;
    Ok(g.value(&offset)? <= *radius && g.value(direction)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn v(c: &[i64]) -> RVector {
        RVector::from_ints(c)
    }

    fn linf(n: usize) -> AsymmetricGauge {
        let rows = (0..n).flat_map(|i| [RVector::unit(n, i), -&RVector::unit(n, i)]).collect();
        AsymmetricGauge::from_functionals(n, rows).unwrap()
    }

    fn orthant(m: usize) -> AsymmetricGauge {
        let mut rows = vec![RVector::zeros(m)];
        rows.extend((0..m).map(|i| RVector::unit(m, i)));
        AsymmetricGauge::from_functionals(m, rows).unwrap()
    }

    #[test]
    fn theta_examples() {
        let q = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        let t = theta_cone(&q).unwrap();
        assert_eq!(t.generators(), &[v(&[-1, 0])]);
        assert!(t.contains(&v(&[-7, 0])).unwrap());
        assert!(!t.contains(&v(&[-7, 1])).unwrap());
        assert!(theta_cone(&linf(3)).unwrap().is_trivial());

        let p = AsymmetricGauge::from_ints(&[&[1, 0], &[-1, 0], &[0, -1]]).unwrap();
        assert_eq!(theta_cone(&p).unwrap().generators(), &[v(&[0, 1])]);
    }

    #[test]
    fn span_examples() {
        let q = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(span_theta(&q).unwrap(), Subspace::span(2, &[v(&[1, 0])]).unwrap());
        for m in 1..=4 {
            assert!(span_theta(&orthant(m)).unwrap().is_full());
        }
        assert!(span_theta(&linf(3)).unwrap().is_zero());
    }

    #[test]
    fn t1_examples() {
        assert!(is_t1(&linf(2)).unwrap());
        let q = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert!(!is_t1(&q).unwrap());
    }

    #[test]
    fn ray_examples() {
        let xplus = AsymmetricGauge::from_ints(&[&[1], &[0]]).unwrap();
        assert!(ray_in_ball(&xplus, &v(&[0]), &int(1), &v(&[0]), &v(&[-1])).unwrap());
        assert!(!ray_in_ball(&xplus, &v(&[0]), &int(1), &v(&[0]), &v(&[1])).unwrap());
        let l = linf(2);
        for d in [v(&[1, 0]), v(&[-1, 3]), v(&[0, -1])] {
            assert!(!ray_in_ball(&l, &v(&[0, 0]), &int(1), &v(&[0, 0]), &d).unwrap());
        }
        let q = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert!(ray_in_ball(&q, &v(&[0, 0]), &int(1), &v(&[0, 0]), &v(&[-1, 0])).unwrap());
        assert!(q.value(&v(&[-1, 0])).unwrap().is_zero());
    }
}
