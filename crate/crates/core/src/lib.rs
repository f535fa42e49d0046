//! Finite-dimensional asymmetric normed spaces in exact rational arithmetic.

pub mod classify;
pub mod cone;
pub mod error;
pub mod exact;
pub mod lp;
pub mod gauge;
pub mod polyhedra;
pub mod quotient;
pub mod seminorm;

pub use error::{Error, Result};
