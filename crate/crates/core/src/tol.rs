//! Tolerance thresholds used across the crate.
//!
//! Two regimes are kept apart: ingestion tolerances catch malformed input
//! (structure constants that fail antisymmetry or Jacobi), while
//! verification tolerances absorb the numerical error accumulated by matrix
//! exponentials and sampled identities.

use crate::scalar::{real, Real};

/// Input validation: antisymmetry, Jacobi, representation homomorphism,
/// fixture consistency. Violations at this level are data errors, not
/// numerical noise.
pub const TOL_ALG: f64 = 1e-10;

/// Sampled-identity residuals: cocycle identities, action properties,
/// equivariance. Allows for error accumulated through chains of matrix
/// exponentials on desk-scale words.
pub const TOL_VERIFY: f64 = 1e-6;

/// Relative SVD threshold for rank and nullspace decisions: singular values
/// below `TOL_RANK * sigma_max` count as zero.
pub const TOL_RANK: f64 = 1e-9;

/// Residual bound for central finite differences at step [`FD_STEP`].
pub const TOL_FD: f64 = 1e-5;

/// Default step for central finite differences.
pub const FD_STEP: f64 = 1e-4;

/// The tolerance set threaded through constructors and verification routines.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances<T: Real> {
    /// Input validation threshold ([`TOL_ALG`]).
    pub alg: T,
    /// Sampled-identity threshold ([`TOL_VERIFY`]).
    pub verify: T,
    /// Relative rank threshold ([`TOL_RANK`]).
    pub rank: T,
    /// Finite-difference threshold ([`TOL_FD`]).
    pub fd: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            alg: real(TOL_ALG),
            verify: real(TOL_VERIFY),
            rank: real(TOL_RANK),
            fd: real(TOL_FD),
        }
    }
}

impl<T: Real> Tolerances<T> {
    /// Replaces the verification tolerance, keeping the rest.
    pub fn with_verify(mut self, verify: T) -> Self {
        self.verify = verify;
        self
    }
}
