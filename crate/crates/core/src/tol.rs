//! Numerical tolerances shared by the geometry kernels.

use serde::{Deserialize, Serialize};

/// Tolerance context passed to every operation that has to decide an
/// equality or a membership numerically.
///
/// `tol` is the algebraic tolerance (relative residuals, projective
/// equality). `cluster_tol` is the chordal distance below which two
/// computed roots are merged into one repeated root; it is larger because
/// eigenvalues near a double root move by `O(sqrt(eps))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub tol: f64,
    pub cluster_tol: f64,
}

impl Tolerance {
    pub const DEFAULT_TOL: f64 = 1e-9;
    pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

    pub fn new(tol: f64, cluster_tol: f64) -> Self {
        Self { tol, cluster_tol }
    }

    /// Same cluster tolerance, different algebraic tolerance.
    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            cluster_tol: Self::DEFAULT_CLUSTER_TOL,
        }
    }
}
