//! Space files: a small JSON document naming a gauge, optional subspaces and
//! an optional drawing viewport.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "hrep": [["1", "0"], [0, 1], [0, -1]],
//!   "subspaces": { "Y": [[1, 0]] },
//!   "viewport": [-3, 3, "-5/2", "5/2"]
//! }
//! ```
//!
//! Exactly one of `hrep`, `vrep` or `builtin` must be present. Numbers are
//! integers or strings "p/q"; floating point literals are rejected.

use std::collections::BTreeMap;
use std::fmt;

use asymspace_core::exact::{format_rational, parse_rational, RVector, Rational, Subspace};
use asymspace_core::gauge::{AsymmetricGauge, Fact};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;
use crate::fixtures::{default_viewport, fixture, Viewport};

/// A rational literal. Serializes as an integer when it is one that fits in
/// i64, else as the string "p/q".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lit(pub Rational);

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let text = format_rational(&self.0);
        match text.parse::<i64>() {
            Ok(n) => s.serialize_i64(n),
            Err(_) => s.serialize_str(&text),
        }
    }
}

impl<'de> Deserialize<'de> for Lit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct LitVisitor;

        impl Visitor<'_> for LitVisitor {
            type Value = Lit;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Lit, E> {
                Ok(Lit(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Lit, E> {
                Ok(Lit(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Lit, E> {
                Err(E::custom(format!("floating point literal {v} is not allowed; write \"p/q\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Lit, E> {
                parse_rational(v).map(Lit).map_err(|_| E::custom(format!("bad rational {v:?}")))
            }
        }

        d.deserialize_any(LitVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VrepBlock {
    pub points: Vec<Vec<Lit>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<Vec<Lit>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hrep: Option<Vec<Vec<Lit>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrep: Option<VrepBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// size of the `orthant-m` and `linf-n` families
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subspaces: BTreeMap<String, Vec<Vec<Lit>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub viewport: Option<[Lit; 4]>,
}

/// A space file resolved to a validated gauge.
#[derive(Clone, Debug)]
pub struct Space {
    pub name: String,
    pub gauge: AsymmetricGauge,
    pub facts: Vec<Fact>,
    pub subspaces: BTreeMap<String, Subspace>,
    pub viewport: Viewport,
}

pub fn parse_space_file(text: &str) -> Result<SpaceFile, CliError> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let given = [file.hrep.is_some(), file.vrep.is_some(), file.builtin.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(CliError::Parse("exactly one of \"hrep\", \"vrep\", \"builtin\" is required".into()));
    }
    if file.builtin.is_none() && file.dimension.is_none() {
        return Err(CliError::Parse("\"dimension\" is required for hrep and vrep gauges".into()));
    }
    if file.builtin.is_none() && file.size.is_some() {
        return Err(CliError::Parse("\"size\" only applies to builtin gauges".into()));
    }
    Ok(file)
}

pub fn serialize_space_file(file: &SpaceFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("space files serialize");
    out.push('\n');
    out
}

fn vectors(rows: &[Vec<Lit>]) -> Vec<RVector> {
    rows.iter().map(|r| r.iter().map(|l| l.0.clone()).collect()).collect()
}

impl SpaceFile {
    /// Validates the gauge and the subspaces.
    pub fn resolve(&self) -> Result<Space, CliError> {
        let (mut name, gauge, facts, mut viewport) = if let Some(b) = &self.builtin {
            let f = fixture(b, self.size).map_err(CliError::Invalid)?;
            (f.name, f.gauge, f.facts, f.viewport)
        } else {
            let dim = self.dimension.expect("checked at parse");
            let g = if let Some(rows) = &self.hrep {
                AsymmetricGauge::from_functionals(dim, vectors(rows))
            } else {
                let v = self.vrep.as_ref().expect("checked at parse");
                AsymmetricGauge::from_generators(dim, vectors(&v.points), vectors(&v.rays))
            }
            .map_err(CliError::Invalid)?;
            let kind = if self.hrep.is_some() { "hrep" } else { "vrep" };
            (kind.to_string(), g, Vec::new(), default_viewport())
        };
        if let Some(d) = self.dimension {
            if d != gauge.dim() {
                return Err(CliError::Invalid(asymspace_core::Error::DimensionMismatch { expected: d, found: gauge.dim() }));
            }
        }
        if let Some(n) = &self.name {
            name = n.clone();
        }
        let mut subspaces = BTreeMap::new();
        for (key, basis) in &self.subspaces {
            let s = Subspace::span(gauge.dim(), &vectors(basis)).map_err(CliError::Invalid)?;
            subspaces.insert(key.clone(), s);
        }
        if let Some(v) = &self.viewport {
            viewport = [v[0].0.clone(), v[1].0.clone(), v[2].0.clone(), v[3].0.clone()];
            if viewport[0] >= viewport[1] || viewport[2] >= viewport[3] {
                return Err(CliError::Parse("viewport must be [xmin, xmax, ymin, ymax] with min < max".into()));
            }
        }
        Ok(Space { name, gauge, facts, subspaces, viewport })
    }
}

pub fn load_space(text: &str) -> Result<Space, CliError> {
    parse_space_file(text)?.resolve()
}

/// Parses "1,-2,3/4".
pub fn parse_vector(text: &str) -> Result<RVector, CliError> {
    text.split(',')
        .map(|t| parse_rational(t).map_err(|_| CliError::Usage(format!("bad vector entry {t:?} in {text:?}"))))
        .collect()
}

/// Parses a basis written as vectors separated by ';', e.g. "1,0;0,1". The
/// empty string is the zero subspace.
pub fn parse_basis(text: &str) -> Result<Vec<RVector>, CliError> {
    text.split(';').map(str::trim).filter(|t| !t.is_empty()).map(parse_vector).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use asymspace_core::exact::frac;

    #[test]
    fn parses_hrep() {
        let s = load_space(r#"{"dimension": 2, "hrep": [["1", "0"], [0, 1], [0, "-1"]]}"#).unwrap();
        assert_eq!(s.gauge.value(&RVector::from_ints(&[7, -2])).unwrap(), frac(7, 1));
        assert_eq!(s.name, "hrep");
    }

    #[test]
    fn rejects_floats_with_position() {
        let e = parse_space_file("{\"dimension\": 1,\n \"hrep\": [[0], [1.5]]}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("floating point") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn rejects_invalid_gauges() {
        let e = load_space(r#"{"dimension": 2, "hrep": [[1, 0]]}"#).unwrap_err();
        assert!(matches!(e, CliError::Invalid(asymspace_core::Error::NotNonnegative)));
        assert!(parse_space_file(r#"{"dimension": 2}"#).is_err());
        assert!(parse_space_file(r#"{"builtin": "parabola", "colour": 1}"#).is_err());
        assert!(load_space(r#"{"builtin": "linf-n", "size": 2, "dimension": 3}"#).is_err());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"name": "t", "dimension": 2, "vrep": {"points": [[1, "1/2"], [1, -1]], "rays": [[-1, 0]]},
                       "subspaces": {"Y": [[0, 1]]}, "viewport": [-2, 2, "-3/2", 4]}"#;
        let f = parse_space_file(text).unwrap();
        let again = parse_space_file(&serialize_space_file(&f)).unwrap();
        assert_eq!(f, again);
        assert!(serialize_space_file(&f).contains("\"1/2\""));
    }

    #[test]
    fn vector_arguments() {
        assert_eq!(parse_vector("7, -2").unwrap(), RVector::from_ints(&[7, -2]));
        assert_eq!(parse_basis("1,0; 0,1").unwrap().len(), 2);
        assert!(parse_basis("").unwrap().is_empty());
        assert!(parse_vector("1.5").is_err());
    }
}
