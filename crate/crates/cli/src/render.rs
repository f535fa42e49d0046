//! Deterministic SVG pictures of two-dimensional unit balls.

use std::cmp::Ordering;
use std::fmt::Write;

use asymspace_core::cone::{span_theta, theta_cone};
use asymspace_core::exact::{int, to_f64, RVector, Rational};
use asymspace_core::gauge::{AsymmetricGauge, Mode};
use asymspace_core::polyhedra::{HalfSpace, Polyhedron};
use asymspace_core::Error;
use num_traits::{Signed, Zero};

use crate::error::CliError;
use crate::fixtures::Viewport;

const SIZE: f64 = 480.0;
const POLAR_SAMPLES: usize = 720;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) / (self.x1 - self.x0) * SIZE, (self.y1 - y) / (self.y1 - self.y0) * SIZE)
    }

    /// Largest t ≥ 0 with t·d inside the frame, from the origin.
    fn exit(&self, d: (f64, f64)) -> f64 {
        let mut t = f64::INFINITY;
        for (v, lo, hi) in [(d.0, self.x0, self.x1), (d.1, self.y0, self.y1)] {
            if v > 0.0 {
                t = t.min(hi / v);
            } else if v < 0.0 {
                t = t.min(lo / v);
            }
        }
        t.max(0.0)
    }
}

fn num(v: f64) -> String {
    // {:.4} prints -0.0000 for tiny negatives
    let v = if v.abs() < 5e-5 { 0.0 } else { v };
    format!("{v:.4}")
}

fn fmt_point(out: &mut String, p: (f64, f64)) {
    write!(out, "{},{}", num(p.0), num(p.1)).expect("string write");
}

/// SVG of B_q[0,1] clipped to the viewport, with θ_q generators as arrows
/// and ⟨θ_q⟩ dashed when it is a line.
pub fn render_ball_svg(g: &AsymmetricGauge, viewport: &Viewport, title: &str) -> Result<String, CliError> {
    if g.dim() != 2 {
        return Err(CliError::Invalid(Error::DimensionMismatch { expected: 2, found: g.dim() }));
    }
    let frame = Frame { x0: to_f64(&viewport[0]), x1: to_f64(&viewport[1]), y0: to_f64(&viewport[2]), y1: to_f64(&viewport[3]) };
    let outline: Vec<(f64, f64)> = if g.is_analytic() {
        if !(frame.x0 < 0.0 && frame.x1 > 0.0 && frame.y0 < 0.0 && frame.y1 > 0.0) {
            return Err(CliError::Usage("analytic gauges are drawn radially; the viewport must contain the origin".into()));
        }
        polar_outline(g, &frame)
    } else {
        exact_outline(g, viewport)?.iter().map(|v| frame.px(to_f64(&v[0]), to_f64(&v[1]))).collect()
    };

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">").unwrap();
    writeln!(s, "  <title>unit ball of {}</title>", escape(title)).unwrap();
    s.push_str("  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">\n      <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#b03030\"/>\n    </marker>\n  </defs>\n");
    writeln!(s, "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\" stroke=\"#999999\"/>").unwrap();
    if frame.x0 < 0.0 && frame.x1 > 0.0 {
        let (a, b) = (frame.px(0.0, frame.y0), frame.px(0.0, frame.y1));
        line(&mut s, a, b, "stroke=\"#cccccc\" stroke-width=\"1\"");
    }
    if frame.y0 < 0.0 && frame.y1 > 0.0 {
        let (a, b) = (frame.px(frame.x0, 0.0), frame.px(frame.x1, 0.0));
        line(&mut s, a, b, "stroke=\"#cccccc\" stroke-width=\"1\"");
    }
    if !outline.is_empty() {
        s.push_str("  <polygon points=\"");
        for (i, p) in outline.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            fmt_point(&mut s, *p);
        }
        s.push_str("\" fill=\"#6a9fd8\" fill-opacity=\"0.45\" stroke=\"#1f4e8c\" stroke-width=\"1.5\"/>\n");
    }

    let span = span_theta(g)?;
    if span.dim() == 1 {
        let d = span.basis()[0].to_f64();
        let (t_pos, t_neg) = (frame.exit((d[0], d[1])), frame.exit((-d[0], -d[1])));
        let a = frame.px(-t_neg * d[0], -t_neg * d[1]);
        let b = frame.px(t_pos * d[0], t_pos * d[1]);
        line(&mut s, a, b, "stroke=\"#b03030\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
    }
    for gen in theta_cone(g)?.generators() {
        let d = gen.to_f64();
        let t = 0.8 * frame.exit((d[0], d[1]));
        if t > 0.0 {
            let a = frame.px(0.0, 0.0);
            let b = frame.px(t * d[0], t * d[1]);
            line(&mut s, a, b, "stroke=\"#b03030\" stroke-width=\"2\" marker-end=\"url(#arrow)\"");
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn line(s: &mut String, a: (f64, f64), b: (f64, f64), style: &str) {
    let (x1, y1, x2, y2) = (num(a.0), num(a.1), num(b.0), num(b.1));
    writeln!(s, "  <line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" {style}/>").unwrap();
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Vertices of B ∩ viewport in counterclockwise order, exactly.
pub fn exact_outline(g: &AsymmetricGauge, viewport: &Viewport) -> Result<Vec<RVector>, CliError> {
    let mut rows: Vec<HalfSpace> = g.functionals()?.into_iter().map(|a| HalfSpace::new(a, int(1))).collect();
    let e = |i: usize| RVector::unit(2, i);
    rows.push(HalfSpace::new(-&e(0), -viewport[0].clone()));
    rows.push(HalfSpace::new(e(0), viewport[1].clone()));
    rows.push(HalfSpace::new(-&e(1), -viewport[2].clone()));
    rows.push(HalfSpace::new(e(1), viewport[3].clone()));
    let clipped = Polyhedron::from_hrep(2, rows)?.dd_convert()?;
    let mut pts = clipped.vrep().expect("converted").points.clone();
    if pts.is_empty() {
        return Ok(pts);
    }
    let k = Rational::from_integer((pts.len() as i64).into());
    let mut c = RVector::zeros(2);
    for p in &pts {
        c = &c + p;
    }
    let c = c.scale(&k.recip());
    pts.sort_by(|p, q| angle_cmp(&(p - &c), &(q - &c)));
    Ok(pts)
}

/// Counterclockwise order starting from the positive x direction.
fn angle_cmp(u: &RVector, v: &RVector) -> Ordering {
    let upper = |w: &RVector| w[1].is_positive() || (w[1].is_zero() && !w[0].is_negative());
    match (upper(u), upper(v)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cross = &u[0] * &v[1] - &u[1] * &v[0];
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// The ball of an analytic gauge, sampled along rays from the origin. The
/// clipped ball is star-shaped about 0, so the boundary along a direction u
/// sits at min{1/q(u), distance to the frame}.
fn polar_outline(g: &AsymmetricGauge, frame: &Frame) -> Vec<(f64, f64)> {
    (0..POLAR_SAMPLES)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / POLAR_SAMPLES as f64;
            let u = (phi.cos(), phi.sin());
            let q = g.eval_f64(&[u.0, u.1], Mode::Q);
            let reach = if q > 0.0 { 1.0 / q } else { f64::INFINITY };
            let t = reach.min(frame.exit(u));
            frame.px(t * u.0, t * u.1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{default_viewport, fixture};

    #[test]
    fn square_outline() {
        let g = fixture("linf-n", Some(2)).unwrap().gauge;
        let pts = exact_outline(&g, &default_viewport()).unwrap();
        let expected: Vec<RVector> =
            [[1, 1], [-1, 1], [-1, -1], [1, -1]].iter().map(|c| RVector::from_ints(c)).collect();
        assert_eq!(pts, expected);
    }

    #[test]
    fn strip_outline_is_clipped() {
        let g = fixture("q-xplus-absy", None).unwrap().gauge;
        let pts = exact_outline(&g, &default_viewport()).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&RVector::from_ints(&[-3, 1])));
        assert!(pts.contains(&RVector::from_ints(&[1, -1])));
        let svg = render_ball_svg(&g, &default_viewport(), "q").unwrap();
        assert!(svg.contains("marker-end"));
        assert!(svg.contains("stroke-dasharray"));
    }

    #[test]
    fn parabola_is_deterministic_and_rejects_other_dimensions() {
        let f = fixture("parabola", None).unwrap();
        let a = render_ball_svg(&f.gauge, &f.viewport, &f.name).unwrap();
        assert_eq!(a, render_ball_svg(&f.gauge, &f.viewport, &f.name).unwrap());
        assert_eq!(a.matches("<polygon").count(), 1);
        let g = fixture("linf-n", Some(3)).unwrap().gauge;
        assert!(render_ball_svg(&g, &default_viewport(), "x").is_err());
    }
}
