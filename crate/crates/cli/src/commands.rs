use std::fmt::Write;
use std::path::PathBuf;

use asymspace_core::classify::{
    check_consistency, decompose, separation_report_with_facts, CoveringDimension, SeparationReport, Truth,
};
use asymspace_core::cone::span_theta;
use asymspace_core::exact::{format_rational, RMatrix, RVector, Rational, Subspace};
use asymspace_core::gauge::{GaugeValue, Mode, Property};
use asymspace_core::quotient::{
    is_quotient_norm, is_quotient_t1, quotient_t2_lower_bound, subspace_q_closure, QuotientSpace,
};
use asymspace_core::seminorm::{seminorm_kernel, seminorm_value};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::fixtures::fixture;
use crate::render::render_ball_svg;
use crate::space::{load_space, parse_basis, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Eval,
    Classify,
    Seminorm,
    Quotient,
    Dim,
    Decompose,
    Render,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub format: Format,
    pub strict: bool,
    pub x: Option<RVector>,
    /// a subspace block name from the file, or a basis like "1,0;0,1"
    pub subspace: Option<String>,
    pub out: Option<PathBuf>,
    pub dd_budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// the command produced a report with unknown flags
    pub unknown: bool,
}

impl Outcome {
    pub fn exit_code(&self, strict: bool) -> i32 {
        if strict && self.unknown {
            3
        } else {
            0
        }
    }
}

pub const DD_BUDGET_VAR: &str = "ASYMSPACE_DD_BUDGET";

pub fn dd_budget_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(DD_BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{DD_BUDGET_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// A path to a space file, or `builtin:NAME` / `builtin:NAME:SIZE`.
pub fn load_input(input: &str) -> Result<Space, CliError> {
    if let Some(rest) = input.strip_prefix("builtin:") {
        let (name, size) = match rest.split_once(':') {
            Some((n, s)) => {
                let size = s.parse().map_err(|_| CliError::Usage(format!("bad size in {input:?}")))?;
                (n, Some(size))
            }
            None => (rest, None),
        };
        let f = fixture(name, size).map_err(CliError::Invalid)?;
        return Ok(Space {
            name: f.name,
            gauge: f.gauge,
            facts: f.facts,
            subspaces: Default::default(),
            viewport: f.viewport,
        });
    }
    let text = std::fs::read_to_string(input)?;
    load_space(&text)
}

/// Runs the command on every input concurrently; results come back in input
/// order.
pub fn run_batch(command: Command, inputs: &[String], opts: &Options) -> Vec<Result<Outcome, CliError>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|input| scope.spawn(move || load_input(input).and_then(|space| run_command(command, &space, opts))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

pub fn run_command(command: Command, space: &Space, opts: &Options) -> Result<Outcome, CliError> {
    let mut space = space.clone();
    if let Some(b) = opts.dd_budget {
        space.gauge = space.gauge.with_dd_budget(b);
    }
    let space = &space;
    let mut unknown = false;
    let (json, text) = match command {
        Command::Eval => eval(space, opts)?,
        Command::Classify => {
            let report = separation_report_with_facts(&space.gauge, &space.facts)?;
            unknown = report.has_unknown();
            classify(space, &report)
        }
        Command::Seminorm => seminorm(space, opts)?,
        Command::Quotient => quotient(space, opts)?,
        Command::Dim => dim(space)?,
        Command::Decompose => decomposition(space)?,
        Command::Render => return render(space, opts),
    };
    let output = match opts.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    Ok(Outcome { output, unknown })
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn opt_rat(r: &Option<Rational>) -> Value {
    r.as_ref().map_or(Value::Null, rat)
}

fn vector(v: &RVector) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn vectors(vs: &[RVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

fn matrix(m: &RMatrix) -> Value {
    vectors(m.rows())
}

fn text_vectors(vs: &[RVector]) -> String {
    if vs.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    parts.join(" ")
}

fn gauge_value(v: &GaugeValue) -> Value {
    match v {
        GaugeValue::Exact(r) => rat(r),
        GaugeValue::Approx(f) => json!(f),
    }
}

fn gauge_text(v: &GaugeValue) -> String {
    match v {
        GaugeValue::Exact(r) => format_rational(r),
        GaugeValue::Approx(f) => format!("{f} (approximate)"),
    }
}

fn require_x(opts: &Options, dim: usize) -> Result<&RVector, CliError> {
    let x = opts.x.as_ref().ok_or_else(|| CliError::Usage("this command needs -x <vector>".into()))?;
    x.check_dim(dim)?;
    Ok(x)
}

fn eval(space: &Space, opts: &Options) -> Result<(Value, String), CliError> {
    let g = &space.gauge;
    let x = require_x(opts, g.dim())?;
    let values: Vec<GaugeValue> =
        [Mode::Q, Mode::QMinus, Mode::QSym].into_iter().map(|m| g.eval(x, m)).collect::<Result<_, _>>()?;
    let json = json!({
        "name": space.name,
        "x": vector(x),
        "exact": !g.is_analytic(),
        "q": gauge_value(&values[0]),
        "q_minus": gauge_value(&values[1]),
        "q_sym": gauge_value(&values[2]),
    });
    let text = format!(
        "q(x) = {}\nq(-x) = {}\nq^s(x) = {}\n",
        gauge_text(&values[0]),
        gauge_text(&values[1]),
        gauge_text(&values[2])
    );
    Ok((json, text))
}

fn dimension_json(d: CoveringDimension) -> Value {
    match d {
        CoveringDimension::Finite(n) => json!(n),
        CoveringDimension::Infinite => json!("infinity"),
    }
}

fn classify(space: &Space, r: &SeparationReport) -> (Value, String) {
    let violations = check_consistency(r);
    let mut flags = serde_json::Map::new();
    let mut provenance = serde_json::Map::new();
    let mut text = String::new();
    writeln!(text, "name: {}", space.name).unwrap();
    writeln!(text, "ambient dimension: {}", r.ambient_dimension).unwrap();
    for p in Property::ALL {
        let f = &r.flags[&p];
        flags.insert(p.key().into(), json!(f.value.as_str()));
        provenance.insert(p.key().into(), json!(f.provenance.to_string()));
        writeln!(text, "{:<15} {:<8} {}", p.key(), f.value.as_str(), f.provenance).unwrap();
    }
    writeln!(text, "covering dimension: {} ({})", r.covering_dimension, r.covering_dimension_provenance).unwrap();
    let radius = r.right_bounded_radius.as_ref().map_or("none".to_string(), format_rational);
    writeln!(text, "right-bounded radius: {radius}").unwrap();
    let bound = match (&r.ball_sym_bound, r.flag(Property::BallSymBounded)) {
        (Some(b), _) => format_rational(b),
        (None, Truth::False) => "unbounded".to_string(),
        (None, _) => "unknown".to_string(),
    };
    writeln!(text, "sup of q^s on the unit ball: {bound}").unwrap();
    writeln!(text, "theta generators: {}", text_vectors(&r.theta_generators)).unwrap();
    writeln!(text, "span of theta: {}", text_vectors(r.theta_span.basis())).unwrap();
    for d in &r.discrepancies {
        writeln!(text, "discrepancy: {d}").unwrap();
    }
    for v in &violations {
        writeln!(text, "inconsistent: {v}").unwrap();
    }
    let json = json!({
        "name": space.name,
        "ambient_dimension": r.ambient_dimension,
        "flags": flags,
        "provenance": provenance,
        "dimension": dimension_json(r.covering_dimension),
        "dimension_provenance": r.covering_dimension_provenance.to_string(),
        "theta_generators": vectors(&r.theta_generators),
        "theta_span": vectors(r.theta_span.basis()),
        "constants": {
            "right_bounded_radius": opt_rat(&r.right_bounded_radius),
            "ball_sym_bound": opt_rat(&r.ball_sym_bound),
        },
        "discrepancies": r.discrepancies,
        "violations": violations,
    });
    (json, text)
}

fn seminorm(space: &Space, opts: &Options) -> Result<(Value, String), CliError> {
    let g = &space.gauge;
    let kernel = seminorm_kernel(g)?;
    let mut text = String::new();
    let value = match &opts.x {
        Some(_) => {
            let x = require_x(opts, g.dim())?;
            let v = seminorm_value(g, x)?;
            writeln!(text, "{}", format_rational(&v)).unwrap();
            Some(v)
        }
        None => None,
    };
    writeln!(text, "kernel: {}", text_vectors(kernel.basis())).unwrap();
    let json = json!({
        "name": space.name,
        "x": opts.x.as_ref().map_or(Value::Null, vector),
        "value": opt_rat(&value),
        "kernel": vectors(kernel.basis()),
    });
    Ok((json, text))
}

fn divisor(space: &Space, opts: &Options) -> Result<(String, Subspace), CliError> {
    let dim = space.gauge.dim();
    match &opts.subspace {
        Some(s) => match space.subspaces.get(s) {
            Some(y) => Ok((s.clone(), y.clone())),
            None => Ok((s.clone(), Subspace::span(dim, &parse_basis(s)?)?)),
        },
        None => {
            let mut blocks = space.subspaces.iter();
            match (blocks.next(), blocks.next()) {
                (Some((k, y)), None) => Ok((k.clone(), y.clone())),
                (None, _) => Err(CliError::Usage("quotient needs a subspace block or --subspace".into())),
                _ => Err(CliError::Usage("several subspace blocks; pick one with --subspace".into())),
            }
        }
    }
}

fn quotient(space: &Space, opts: &Options) -> Result<(Value, String), CliError> {
    let g = &space.gauge;
    let (label, y) = divisor(space, opts)?;
    let qs = QuotientSpace::new(g, &y)?;
    let t1 = is_quotient_t1(g, &y)?;
    let norm = is_quotient_norm(g, &y)?;
    let t2_necessary = quotient_t2_lower_bound(g, &y)?;
    let closure = subspace_q_closure(g, &y)?.dd_convert()?;
    let closure_rays = closure.vrep().expect("converted").rays.clone();
    let mut text = String::new();
    let value = match &opts.x {
        Some(_) => {
            let x = require_x(opts, g.dim())?;
            let w = qs.seminorm(x)?;
            writeln!(text, "w(x + Y) = {}", format_rational(&w)).unwrap();
            Some((w, qs.coordinates(x)?))
        }
        None => None,
    };
    writeln!(text, "Y = span {}", text_vectors(y.basis())).unwrap();
    writeln!(text, "Y q-closed (quotient T1): {t1}").unwrap();
    writeln!(text, "quotient is an asymmetric norm: {norm}").unwrap();
    writeln!(text, "kernel of the seminorm inside Y (needed for T2): {t2_necessary}").unwrap();
    writeln!(text, "q-closure of Y: cone {}", text_vectors(&closure_rays)).unwrap();
    let json = json!({
        "name": space.name,
        "subspace": label,
        "basis": vectors(y.basis()),
        "complement_basis": vectors(qs.complement_basis()),
        "q_closed": t1,
        "quotient_t1": t1,
        "quotient_norm": norm,
        "kernel_in_subspace": t2_necessary,
        "closure_rays": vectors(&closure_rays),
        "value": value.as_ref().map_or(Value::Null, |(w, _)| rat(w)),
        "coordinates": value.as_ref().map_or(Value::Null, |(_, c)| vector(c)),
    });
    Ok((json, text))
}

fn dim(space: &Space) -> Result<(Value, String), CliError> {
    let y = span_theta(&space.gauge)?;
    let d = asymspace_core::classify::dimension_from_span(&y);
    let branch = if y.is_full() {
        "span of theta is the whole space"
    } else if y.is_zero() {
        "theta is trivial"
    } else {
        "span of theta is a proper nonzero subspace"
    };
    let text = format!("{d}\nspan of theta: {}\n", text_vectors(y.basis()));
    let json = json!({
        "name": space.name,
        "dimension": dimension_json(d),
        "branch": branch,
        "theta_span": vectors(y.basis()),
    });
    Ok((json, text))
}

fn decomposition(space: &Space) -> Result<(Value, String), CliError> {
    let d = decompose(&space.gauge)?;
    let mut text = String::new();
    writeln!(text, "Y = span {}", text_vectors(d.y.basis())).unwrap();
    writeln!(text, "Z = span {}", text_vectors(d.z.basis())).unwrap();
    writeln!(text, "K_P = {}", format_rational(&d.k_p)).unwrap();
    writeln!(text, "K_(I-P) = {}", format_rational(&d.k_complement)).unwrap();
    writeln!(text, "Z is T1: {}", d.z_is_t1).unwrap();
    let json = json!({
        "name": space.name,
        "y": vectors(d.y.basis()),
        "z": vectors(d.z.basis()),
        "projector": matrix(&d.projector),
        "psi": matrix(&d.psi),
        "constants": { "K_P": rat(&d.k_p), "K_I_minus_P": rat(&d.k_complement) },
        "z_is_t1": d.z_is_t1,
    });
    Ok((json, text))
}

fn render(space: &Space, opts: &Options) -> Result<Outcome, CliError> {
    let svg = render_ball_svg(&space.gauge, &space.viewport, &space.name)?;
    let output = match &opts.out {
        Some(path) => {
            std::fs::write(path, &svg)?;
            match opts.format {
                Format::Json => format!("{}\n", json!({ "name": space.name, "svg": path.display().to_string() })),
                Format::Text => format!("wrote {}\n", path.display()),
            }
        }
        None => svg,
    };
    Ok(Outcome { output, unknown: false })
}
