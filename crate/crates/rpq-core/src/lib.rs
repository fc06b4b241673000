//! Exact symbolic-numeric engine for two-parameter deformed conformal
//! algebras: scalar tower, R-expression parsing, Laurent ladder operators,
//! deformed Virasoro generators, central terms, Δ = 1 currents, and the
//! deformed energy-momentum tensor.

pub mod central;
pub mod delta1;
pub mod emt;
pub mod error;
pub mod laurent;
pub mod rexpr;
pub mod scalar;
pub mod virasoro;

pub use error::{CoreError, Result};
