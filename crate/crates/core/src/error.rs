use thiserror::Error;

use crate::grade::GradeError;
use crate::structure::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The raw tables do not describe an n x n structure with in-range entries.
    #[error("malformed structure: {0}")]
    Structural(String),

    /// The tables are well formed but break an ordered-groupoid axiom.
    #[error("axiom violation: {0}")]
    Axioms(ValidationReport),

    #[error(transparent)]
    Grade(#[from] GradeError),

    /// Operands do not live on the same structure, or an argument is out of range.
    #[error("usage: {0}")]
    Usage(String),

    /// An enumeration would exceed its candidate budget.
    #[error("enumeration of {required} candidates exceeds budget {budget}")]
    Budget { required: u128, budget: u128 },
}
