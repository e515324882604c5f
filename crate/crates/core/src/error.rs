use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Residuals are reported as `f64` regardless of the working scalar type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid Lie algebra: {reason}")]
    InvalidAlgebra { reason: String },

    #[error("not a Chevalley-Eilenberg cocycle: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    NotACocycle { residual: f64, tolerance: f64 },

    #[error("cocycle mismatch: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    CocycleMismatch { residual: f64, tolerance: f64 },

    #[error("not an identity word: representation residual {rep_residual:.3e}, adjoint residual {ad_residual:.3e}")]
    NotIdentityWord { rep_residual: f64, ad_residual: f64 },

    #[error("invalid matrix representation: {reason}")]
    InvalidRep { reason: String },

    #[error("invalid phase-space fixture: {reason}")]
    InvalidFixture { reason: String },

    #[error("invalid document: field `{field}`: {reason}")]
    InvalidDocument { field: String, reason: String },

    #[error("JSON parse error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
