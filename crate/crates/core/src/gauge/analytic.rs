use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{RVector, Rational, Subspace};

/// Documented precision of analytic evaluators.
pub const ANALYTIC_TOLERANCE: f64 = 1e-9;

/// Properties that a report can carry and that metadata can assert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    T0,
    TQuarter,
    T1,
    T2,
    BallQClosed,
    T3,
    T3Half,
    T4,
    RightBounded,
    BallQCompact,
    BallSymBounded,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::T0,
        Property::TQuarter,
        Property::T1,
        Property::T2,
        Property::BallQClosed,
        Property::T3,
        Property::T3Half,
        Property::T4,
        Property::RightBounded,
        Property::BallQCompact,
        Property::BallSymBounded,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Property::T0 => "T0",
            Property::TQuarter => "T1/4",
            Property::T1 => "T1",
            Property::T2 => "T2",
            Property::BallQClosed => "ballQClosed",
            Property::T3 => "T3",
            Property::T3Half => "T3.5",
            Property::T4 => "T4",
            Property::RightBounded => "rightBounded",
            Property::BallQCompact => "ballQCompact",
            Property::BallSymBounded => "ballSymBounded",
        }
    }

    pub fn from_key(key: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.key() == key)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// A registered statement about a gauge, with the citation that backs it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub property: Property,
    pub value: bool,
    /// certified radius, only meaningful for right-boundedness
    pub radius: Option<Rational>,
    pub citation: String,
}

impl Fact {
    pub fn new(property: Property, value: bool, citation: impl Into<String>) -> Self {
        Fact { property, value, radius: None, citation: citation.into() }
    }

    pub fn with_radius(mut self, radius: Rational) -> Self {
        self.radius = Some(radius);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnalyticMetadata {
    pub theta_generators: Vec<RVector>,
    pub theta_span: Vec<RVector>,
    pub facts: Vec<Fact>,
}

impl AnalyticMetadata {
    pub fn fact(&self, property: Property) -> Option<&Fact> {
        self.facts.iter().find(|f| f.property == property)
    }
}

/// A gauge given by a closed-form floating point formula.
#[derive(Clone)]
pub struct AnalyticGauge {
    pub name: String,
    pub dim: usize,
    pub evaluator: fn(&[f64]) -> f64,
    pub metadata: AnalyticMetadata,
}

impl fmt::Debug for AnalyticGauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticGauge")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("metadata", &self.metadata)
            .finish()
    }
}

impl PartialEq for AnalyticGauge {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dim == other.dim && self.metadata == other.metadata
    }
}

impl AnalyticGauge {
    pub fn eval(&self, x: &[f64]) -> f64 {
        (self.evaluator)(x)
    }

    /// Numeric spot checks of the registered metadata: q vanishes on the θ
    /// generators, the generators lie in the registered span, q(0) = 0.
    pub fn check_metadata(&self) -> Result<()> {
        let m = &self.metadata;
        for g in m.theta_generators.iter().chain(&m.theta_span) {
            g.check_dim(self.dim)?;
        }
        let origin = vec![0.0; self.dim];
        if self.eval(&origin).abs() >= ANALYTIC_TOLERANCE {
            return Err(Error::InconsistentMetadata(format!("{}: q(0) is not 0", self.name)));
        }
        for g in &m.theta_generators {
            let v = self.eval(&g.to_f64());
            if v.is_nan() || v.abs() >= ANALYTIC_TOLERANCE {
                return Err(Error::InconsistentMetadata(format!("{}: q{} = {v}, expected 0", self.name, g)));
            }
        }
        let span = Subspace::span(self.dim, &m.theta_span)?;
        if span != Subspace::span(self.dim, &m.theta_generators)? {
            return Err(Error::InconsistentMetadata(format!("{}: registered span differs from span of θ", self.name)));
        }
        Ok(())
    }
}
