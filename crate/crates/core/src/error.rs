use thiserror::Error;

/// Errors produced by the curve analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("polynomial is not homogeneous; offending monomials: {monomials}")]
    NotHomogeneous { monomials: String },

    #[error("curve is reducible: factor {factor} found")]
    Reducible { factor: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point is singular on the curve: {0}")]
    SingularCenter(String),

    #[error("unsupported multiplicity {0} (only 0 and 1 are handled)")]
    UnsupportedMultiplicity(usize),

    #[error("point does not lie on the required locus: {0}")]
    OffLocus(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
