//! Built-in gauges from the worked examples, with the facts registered for
//! each and a drawing viewport.

use asymspace_core::exact::{int, RVector, Rational};
use asymspace_core::gauge::{AnalyticGauge, AnalyticMetadata, AsymmetricGauge, Fact, Property};
use asymspace_core::{Error, Result};

pub const FIXTURE_NAMES: [&str; 7] =
    ["parabola", "piecewise-r", "p-max-abs-yminus", "q-xplus-absy", "orthant-m", "xplus-line", "linf-n"];

/// Size used by the families `orthant-m` and `linf-n` when none is given.
pub const DEFAULT_SIZE: usize = 2;

/// [xmin, xmax, ymin, ymax]
pub type Viewport = [Rational; 4];

pub fn default_viewport() -> Viewport {
    [int(-3), int(3), int(-3), int(3)]
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub gauge: AsymmetricGauge,
    /// facts about polyhedral fixtures; analytic ones carry theirs in the
    /// gauge metadata
    pub facts: Vec<Fact>,
    pub viewport: Viewport,
}

pub fn is_family(name: &str) -> bool {
    matches!(name, "orthant-m" | "linf-n")
}

/// Looks up a fixture. `size` is only accepted for the two families.
pub fn fixture(name: &str, size: Option<usize>) -> Result<Fixture> {
    if size.is_some() && !is_family(name) {
        return Err(Error::Malformed(format!("builtin {name} takes no size")));
    }
    let m = size.unwrap_or(DEFAULT_SIZE);
    if m == 0 {
        return Err(Error::Malformed("size must be positive".into()));
    }
    let mut viewport = default_viewport();
    let (gauge, facts) = match name {
        "parabola" => {
            viewport = [int(-3), int(3), int(-2), int(4)];
            (AsymmetricGauge::analytic(parabola())?, Vec::new())
        }
        "piecewise-r" => (AsymmetricGauge::analytic(piecewise_r())?, Vec::new()),
        "p-max-abs-yminus" => {
            let g = AsymmetricGauge::from_ints(&[&[1, 0], &[-1, 0], &[0, -1]])?;
            let facts = vec![
                Fact::new(Property::RightBounded, true, "p example: B_p(0,1) = B_{p^s}(0,1) + theta_p").with_radius(int(1)),
                Fact::new(Property::BallQClosed, false, "p example: p-closure of B_p(0,1) is {-1 <= x <= 1}"),
            ];
            (g, facts)
        }
        "q-xplus-absy" => {
            let g = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]])?;
            let cite = "max{x+, |y|} example: neither T3 nor T4";
            let facts = vec![
                Fact::new(Property::T1, false, cite),
                Fact::new(Property::T2, false, cite),
                Fact::new(Property::T3, false, cite),
                Fact::new(Property::T4, false, cite),
            ];
            (g, facts)
        }
        "orthant-m" => {
            let mut rows = vec![RVector::zeros(m)];
            rows.extend((0..m).map(|i| RVector::unit(m, i)));
            let g = AsymmetricGauge::from_functionals(m, rows)?;
            let facts = vec![Fact::new(Property::T4, true, "orthant gauge: covering dimension zero, hence T4")];
            (g, facts)
        }
        "xplus-line" => {
            let g = AsymmetricGauge::from_ints(&[&[0], &[1]])?;
            let cite = "x+ on the line: q compact but not q^s bounded";
            let facts = vec![
                Fact::new(Property::BallQCompact, true, cite),
                Fact::new(Property::BallSymBounded, false, cite),
            ];
            (g, facts)
        }
        "linf-n" => {
            let rows = (0..m).flat_map(|i| [RVector::unit(m, i), -&RVector::unit(m, i)]).collect();
            (AsymmetricGauge::from_functionals(m, rows)?, Vec::new())
        }
        other => return Err(Error::Malformed(format!("unknown builtin {other:?}"))),
    };
    let name = if is_family(name) { format!("{name}({m})") } else { name.to_string() };
    Ok(Fixture { name, gauge, facts, viewport })
}

/// q(x, y) = ½(−y + √(4x² + y²)), evaluated without cancellation for y > 0.
pub fn parabola_eval(p: &[f64]) -> f64 {
    let (x, y) = (p[0], p[1]);
    let root = (4.0 * x * x + y * y).sqrt();
    if y > 0.0 {
        if root == 0.0 {
            0.0
        } else {
            2.0 * x * x / (y + root)
        }
    } else {
        0.5 * (root - y)
    }
}

/// p(x, y) = max{|x|, y⁻}
pub fn p_eval(p: &[f64]) -> f64 {
    p[0].abs().max((-p[1]).max(0.0))
}

/// p on the half plane x ≤ 0, the parabola gauge on x ≥ 0.
pub fn piecewise_eval(p: &[f64]) -> f64 {
    if p[0] <= 0.0 {
        p_eval(p)
    } else {
        parabola_eval(p)
    }
}

fn y_axis_metadata(facts: Vec<Fact>) -> AnalyticMetadata {
    AnalyticMetadata {
        theta_generators: vec![RVector::from_ints(&[0, 1])],
        theta_span: vec![RVector::from_ints(&[0, 1])],
        facts,
    }
}

pub fn parabola() -> AnalyticGauge {
    let cite = "parabola example: B_q(0,1) = {y > x^2 - 1}, theta_q = {(0,y) : y >= 0}";
    AnalyticGauge {
        name: "parabola".into(),
        dim: 2,
        evaluator: parabola_eval,
        metadata: y_axis_metadata(vec![
            Fact::new(Property::T1, false, cite),
            Fact::new(Property::T2, false, cite),
            Fact::new(Property::RightBounded, false, "parabola example: q is not right-bounded"),
            Fact::new(Property::BallQClosed, false, "parabola example: every nonempty q-open set has q-closure the whole plane"),
        ]),
    }
}

pub fn piecewise_r() -> AnalyticGauge {
    let cite = "parabola example (2): span of theta_r is the y-axis";
    AnalyticGauge {
        name: "piecewise-r".into(),
        dim: 2,
        evaluator: piecewise_eval,
        metadata: y_axis_metadata(vec![Fact::new(Property::T1, false, cite)]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for name in FIXTURE_NAMES {
            let f = fixture(name, None).unwrap();
            assert!(f.gauge.dim() >= 1, "{name}");
        }
        assert_eq!(fixture("orthant-m", Some(3)).unwrap().gauge.dim(), 3);
        assert!(fixture("parabola", Some(3)).is_err());
        assert!(fixture("nope", None).is_err());
    }

    #[test]
    fn parabola_ball_boundary() {
        // q(x, x² − 1) = 1 on the boundary parabola
        for x in [-2.0, -0.5, 0.0, 0.3, 1.7] {
            let v = parabola_eval(&[x, x * x - 1.0]);
            assert!((v - 1.0).abs() < 1e-12, "{x}: {v}");
        }
        assert_eq!(parabola_eval(&[0.0, 5.0]), 0.0);
        assert!((parabola_eval(&[0.0, -2.0]) - 2.0).abs() < 1e-15);
        assert!(parabola_eval(&[1e-9, 1e9]) > 0.0);
    }

    #[test]
    fn piecewise_matches_both_halves() {
        assert_eq!(piecewise_eval(&[-2.0, 1.0]), 2.0);
        assert_eq!(piecewise_eval(&[0.0, -3.0]), 3.0);
        assert_eq!(piecewise_eval(&[1.0, 0.0]), parabola_eval(&[1.0, 0.0]));
    }
}
