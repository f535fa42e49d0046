use std::collections::BTreeMap;
use std::fmt;

use crate::cone::{span_theta, theta_cone};
use crate::error::Result;
use crate::exact::{RVector, Rational, Subspace};
use crate::gauge::{AsymmetricGauge, Fact, Property};
use crate::seminorm::is_t2;

use super::{ball_q_closed, ball_q_compact, dimension_from_span, right_bounded, CoveringDimension};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl From<bool> for Truth {
    fn from(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl Truth {
    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Inferred(String),
    Metadata(String),
    Unknown,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Computed => f.write_str("computed"),
            Provenance::Inferred(rule) => write!(f, "inferred({rule})"),
            Provenance::Metadata(citation) => write!(f, "metadata({citation})"),
            Provenance::Unknown => f.write_str("none"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub value: Truth,
    pub provenance: Provenance,
}

impl Flag {
    fn unknown() -> Self {
        Flag { value: Truth::Unknown, provenance: Provenance::Unknown }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    pub name: String,
    pub ambient_dimension: usize,
    pub flags: BTreeMap<Property, Flag>,
    pub covering_dimension: CoveringDimension,
    pub covering_dimension_provenance: Provenance,
    pub right_bounded_radius: Option<Rational>,
    /// sup of qˢ over the unit ball, when finite
    pub ball_sym_bound: Option<Rational>,
    pub theta_generators: Vec<RVector>,
    pub theta_span: Subspace,
    /// registered facts that disagree with computed or inferred values
    pub discrepancies: Vec<String>,
}

impl SeparationReport {
    pub fn flag(&self, p: Property) -> Truth {
        self.flags.get(&p).map_or(Truth::Unknown, |f| f.value)
    }

    pub fn has_unknown(&self) -> bool {
        self.flags.values().any(|f| f.value == Truth::Unknown)
    }
}

/// A ⇒ B for every pair; the contrapositive is applied as well.
const IMPLICATIONS: [(Property, Property, &str); 13] = [
    (Property::T1, Property::TQuarter, "T1/4 = T1"),
    (Property::TQuarter, Property::T1, "T1/4 = T1"),
    (Property::T2, Property::T1, "T2 implies T1"),
    (Property::T1, Property::T2, "finite-dimensional T1 is normable"),
    (Property::T1, Property::T3, "finite-dimensional T1 is normable"),
    (Property::T1, Property::T3Half, "finite-dimensional T1 is normable"),
    (Property::T1, Property::T4, "finite-dimensional T1 is normable"),
    (Property::T1, Property::BallQClosed, "finite-dimensional T1 is normable"),
    (Property::BallQClosed, Property::T2, "closed ball implies T2"),
    (Property::BallQClosed, Property::T3, "closed ball implies T3"),
    (Property::BallQClosed, Property::T3Half, "closed ball implies T3.5"),
    (Property::T3Half, Property::T3, "T3.5 implies T3"),
    (Property::T3, Property::T2, "T3 implies T2"),
];

pub fn separation_report(g: &AsymmetricGauge) -> Result<SeparationReport> {
    separation_report_with_facts(g, &[])
}

/// Report built from exact computations, then registered facts (the
/// gauge's own metadata plus `facts`) for whatever is still unknown, then the
/// implication rules.
pub fn separation_report_with_facts(g: &AsymmetricGauge, facts: &[Fact]) -> Result<SeparationReport> {
    let mut flags: BTreeMap<Property, Flag> = Property::ALL.iter().map(|&p| (p, Flag::unknown())).collect();
    let mut set = |p: Property, value: Truth, provenance: Provenance| {
        if value != Truth::Unknown {
            flags.insert(p, Flag { value, provenance });
        }
    };
    set(Property::T0, Truth::True, Provenance::Inferred("every asymmetric normed space is T0".into()));

    let theta = theta_cone(g)?;
    let span = span_theta(g)?;
    let covering = dimension_from_span(&span);
    let rb = right_bounded(g)?;
    let mut ball_sym_bound = None;

    let mut all_facts: Vec<Fact> = facts.to_vec();
    if let Some(a) = g.as_analytic() {
        all_facts.extend(a.metadata.facts.iter().cloned());
        let citation = format!("registered θ generators of {}", a.name);
        set(Property::T1, theta.is_trivial().into(), Provenance::Metadata(citation));
        for p in [Property::BallQClosed, Property::BallQCompact] {
            let value = match p {
                Property::BallQClosed => ball_q_closed(g)?,
                _ => ball_q_compact(g)?,
            };
            let citation = a.metadata.fact(p).map_or_else(|| "registered θ generators".to_string(), |f| f.citation.clone());
            set(p, value, Provenance::Metadata(citation));
        }
        if let Ok(t2) = is_t2(g) {
            let citation = a.metadata.fact(Property::T2).map_or_else(|| "registered θ generators".to_string(), |f| f.citation.clone());
            set(Property::T2, t2.into(), Provenance::Metadata(citation));
        }
    } else {
        set(Property::T1, theta.is_trivial().into(), Provenance::Computed);
        set(Property::T2, is_t2(g)?.into(), Provenance::Computed);
        set(Property::BallQClosed, ball_q_closed(g)?, Provenance::Computed);
        set(Property::BallQCompact, ball_q_compact(g)?, Provenance::Computed);
        ball_sym_bound = g.ball_sym_bounded()?;
        set(Property::BallSymBounded, ball_sym_bound.is_some().into(), Provenance::Computed);
    }
    set(Property::RightBounded, rb.value, rb.provenance.clone());

    let mut discrepancies = Vec::new();
    for f in &all_facts {
        let current = flags[&f.property].clone();
        match current.value.known() {
            None => {
                flags.insert(f.property, Flag { value: f.value.into(), provenance: Provenance::Metadata(f.citation.clone()) });
            }
            Some(v) if v != f.value => discrepancies.push(format!(
                "{}: registered {} ({}) but {} gives {}",
                f.property, f.value, f.citation, current.provenance, v
            )),
            Some(_) => {}
        }
    }
    let radius = rb.radius.or_else(|| {
        all_facts.iter().find(|f| f.property == Property::RightBounded).and_then(|f| f.radius.clone())
    });

    if covering == CoveringDimension::Finite(0) {
        infer(&mut flags, &mut discrepancies, Property::T4, true, "covering dimension 0 implies T4");
    }
    loop {
        let mut changed = false;
        for (a, b, rule) in IMPLICATIONS {
            if flags[&a].value == Truth::True {
                changed |= infer(&mut flags, &mut discrepancies, b, true, rule);
            }
            if flags[&b].value == Truth::False {
                changed |= infer(&mut flags, &mut discrepancies, a, false, rule);
            }
        }
        if !changed {
            break;
        }
    }

    let covering_dimension_provenance = if g.is_analytic() {
        Provenance::Metadata("registered span of θ".into())
    } else {
        Provenance::Computed
    };
    Ok(SeparationReport {
        name: g.name(),
        ambient_dimension: g.dim(),
        flags,
        covering_dimension: covering,
        covering_dimension_provenance,
        right_bounded_radius: radius,
        ball_sym_bound,
        theta_generators: theta.generators().to_vec(),
        theta_span: span,
        discrepancies,
    })
}

/// Sets an unknown flag; reports a disagreement with a known one.
fn infer(flags: &mut BTreeMap<Property, Flag>, discrepancies: &mut Vec<String>, p: Property, value: bool, rule: &str) -> bool {
    let current = flags[&p].clone();
    match current.value.known() {
        None => {
            flags.insert(p, Flag { value: value.into(), provenance: Provenance::Inferred(rule.into()) });
            true
        }
        Some(v) if v != value => {
            let msg = format!("{p}: {} gives {v} but rule `{rule}` gives {value}", current.provenance);
            if !discrepancies.contains(&msg) {
                discrepancies.push(msg);
            }
            false
        }
        Some(_) => false,
    }
}

/// Every violated implication between the flags of a report.
pub fn check_consistency(r: &SeparationReport) -> Vec<String> {
    let mut out = Vec::new();
    if r.flag(Property::T0) != Truth::True {
        out.push("T0 must hold".to_string());
    }
    if r.flag(Property::TQuarter) != r.flag(Property::T1) {
        out.push("T1/4 must equal T1".to_string());
    }
    for (a, b, rule) in IMPLICATIONS {
        if r.flag(a) == Truth::True && r.flag(b) == Truth::False {
            out.push(format!("{a} holds but {b} fails ({rule})"));
        }
    }
    if r.covering_dimension == CoveringDimension::Finite(0) && r.flag(Property::T4) != Truth::True {
        out.push("covering dimension 0 requires T4".to_string());
    }
    let full = CoveringDimension::Finite(r.ambient_dimension);
    match r.flag(Property::T1) {
        Truth::True if r.covering_dimension != full => out.push("T1 requires covering dimension n".to_string()),
        Truth::False if r.covering_dimension == full => out.push("covering dimension n requires T1".to_string()),
        _ => {}
    }
    if r.flag(Property::RightBounded) == Truth::True && r.right_bounded_radius.is_none() {
        out.push("right-bounded without a radius".to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn linf(n: usize) -> AsymmetricGauge {
        let rows = (0..n).flat_map(|i| [RVector::unit(n, i), -&RVector::unit(n, i)]).collect();
        AsymmetricGauge::from_functionals(n, rows).unwrap()
    }

    #[test]
    fn orthant_report() {
        let g = AsymmetricGauge::from_ints(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let r = separation_report(&g).unwrap();
        assert_eq!(r.flag(Property::T1), Truth::False);
        assert_eq!(r.flag(Property::T2), Truth::False);
        assert_eq!(r.flag(Property::T4), Truth::True);
        assert_eq!(r.covering_dimension, CoveringDimension::Finite(0));
        assert!(check_consistency(&r).is_empty());
    }

    #[test]
    fn xplus_absy_report() {
        let g = AsymmetricGauge::from_ints(&[&[1, 0], &[0, 1], &[0, -1]]).unwrap();
        let r = separation_report(&g).unwrap();
        assert_eq!(r.flag(Property::T1), Truth::False);
        assert_eq!(r.flag(Property::T2), Truth::False);
        assert_eq!(r.flag(Property::T3), Truth::False);
        assert_eq!(r.flag(Property::T4), Truth::Unknown);
        assert_eq!(r.covering_dimension, CoveringDimension::Infinite);

        let facts = [Fact::new(Property::T4, false, "counterexample in the plane")];
        let r = separation_report_with_facts(&g, &facts).unwrap();
        assert_eq!(r.flag(Property::T4), Truth::False);
        assert!(r.discrepancies.is_empty());
        assert!(check_consistency(&r).is_empty());

        let wrong = [Fact::new(Property::T2, true, "bogus")];
        let r = separation_report_with_facts(&g, &wrong).unwrap();
        assert_eq!(r.discrepancies.len(), 1);
    }

    #[test]
    fn normed_report() {
        for n in 1..=3 {
            let r = separation_report(&linf(n)).unwrap();
            for p in Property::ALL {
                assert_eq!(r.flag(p), Truth::True, "{p}");
            }
            assert_eq!(r.covering_dimension, CoveringDimension::Finite(n));
            assert_eq!(r.right_bounded_radius, Some(int(1)));
            assert!(!r.has_unknown());
        }
    }
}
