use thiserror::Error;

use crate::exact::RVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("double description exceeded the generator budget of {budget} (dimension {dimension})")]
    DimensionTooLarge { dimension: usize, budget: usize },

    #[error("hrep and vrep describe different sets")]
    InconsistentRepresentations,

    #[error("gauge takes negative values: 0 is not in the convex hull of the functionals")]
    NotNonnegative,

    #[error("q(x) = q(-x) = 0 for the nonzero vector {witness}")]
    DegenerateLineality { witness: RVector },

    #[error("gauge is infinite along {direction}: the generators do not span the whole space")]
    GaugeInfinite { direction: RVector },

    #[error("operation requires a polyhedral gauge, `{0}` is analytic")]
    NotPolyhedral(String),

    #[error("analytic metadata is inconsistent: {0}")]
    InconsistentMetadata(String),

    #[error("no exact answer is available: {0}")]
    Undecidable(String),

    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
}
