use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("pathway mismatch: cannot combine exact and floating matrices")]
    PathwayMismatch,
    #[error("matrix is singular (pivot {pivot} below tolerance)")]
    Singular { pivot: usize },
    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("dimension {n} exceeds the desk-scale bound {bound}")]
    DeskScale { n: usize, bound: usize },
    #[error("{what} requires {requirement}, got n = {n}")]
    UnsupportedSize {
        what: &'static str,
        requirement: &'static str,
        n: usize,
    },
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("input is not coninvolutory (residual {residual:e})")]
    NotConinvolutory { residual: f64 },
    #[error("exact pathway required")]
    ExactRequired,
    #[error("no consimilarity transform found: {0}")]
    NoTransform(String),
    #[error("canonical form not verified (best residual {best_residual:e})")]
    CanonicalFormFailed { best_residual: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
