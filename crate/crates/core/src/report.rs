//! Verification report types shared by the sampling-based checks and the
//! CLI. Residuals are reported as `f64` regardless of the working scalar.

use serde::Serialize;

use crate::scalar::{to_f64, Real};

/// Outcome of a sampled identity check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub max_residual: f64,
    pub samples: usize,
    pub pass: bool,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn new<T: Real>(max_residual: T, tolerance: T, samples: usize) -> Self {
        VerificationReport {
            max_residual: to_f64(max_residual),
            samples,
            pass: max_residual <= tolerance,
            tolerance: to_f64(tolerance),
        }
    }
}

/// Outcome of a probe-constancy check (a quantity that must not depend on
/// the probe point), optionally cross-checked by a finite difference.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub max_deviation: f64,
    pub probes: usize,
    pub pass: bool,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_residual: Option<f64>,
}

/// One clause of a multi-part check.
#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub name: &'static str,
    pub max_residual: f64,
    pub pass: bool,
    pub tolerance: f64,
}

/// Aggregated multi-clause check; failures are listed per clause.
#[derive(Debug, Clone, Serialize)]
pub struct MultiClauseReport {
    pub clauses: Vec<ClauseReport>,
    pub samples: usize,
    pub pass: bool,
}

impl MultiClauseReport {
    pub fn new(clauses: Vec<ClauseReport>, samples: usize) -> Self {
        let pass = clauses.iter().all(|c| c.pass);
        MultiClauseReport {
            clauses,
            samples,
            pass,
        }
    }
}

/// Running maximum helper for residual accumulation.
#[derive(Debug, Clone, Copy)]
pub struct MaxTracker<T: Real>(pub T);

impl<T: Real> MaxTracker<T> {
    pub fn new() -> Self {
        MaxTracker(T::zero())
    }

    pub fn update(&mut self, r: T) {
        if r > self.0 {
            self.0 = r;
        }
    }

    pub fn value(&self) -> T {
        self.0
    }
}

impl<T: Real> Default for MaxTracker<T> {
    fn default() -> Self {
        Self::new()
    }
}
