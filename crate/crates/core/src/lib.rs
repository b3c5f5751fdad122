//! Exact arithmetic for octonion algebras, their automorphism group G₂, and
//! reality questions (is an element conjugate to its inverse?) inside it.
//!
//! Everything is exact: prime fields use word arithmetic, the rationals use
//! arbitrary-precision integers. There is no floating point anywhere.

pub mod field;
pub mod automorphism;
pub mod composition;
pub mod linalg;
pub mod reality;
pub mod tori;

pub use field::{Field, FieldSpec, GroundField};
pub use linalg::Matrix;

/// Errors raised by constructors, parsers and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("search budget of {0} candidates exhausted")]
    BudgetExhausted(u64),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
