use thiserror::Error;

use crate::graded::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("parse error at offset {offset} in {input:?}: {message}")]
    Parse { input: String, offset: usize, message: String },

    #[error("invalid presentation ({} violation(s)): {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    InvalidPresentation(Vec<Violation>),

    #[error("truncation degree {top} is too small: need at least {needed}")]
    TruncationTooSmall { needed: i64, top: i64 },

    #[error("generator found at the truncation degree {top}; raise the max degree")]
    RaiseTruncation { top: i64 },

    #[error("module is not properly generated within the truncation (first gap at degree {degree})")]
    NotProperlyGenerated { degree: i64 },

    #[error("operation requires a graded module")]
    Ungraded,

    #[error("operation requires commuting operators")]
    NotCommutative,

    #[error("subspace is not invariant under the module action at degree {degree}")]
    NotInvariant { degree: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("certificate failed: {0}")]
    Certificate(String),

    #[error("analytic and algebraic pipelines disagree: analytic {analytic}, algebraic {algebraic}")]
    ModeMismatch { analytic: String, algebraic: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
