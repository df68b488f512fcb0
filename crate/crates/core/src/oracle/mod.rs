//! Numeric cross-checks: explicit matrices propagated through tangle diagrams,
//! reconstruction of knot representations from variety points, and local
//! refinement of approximate solutions.

mod diagram;
mod newton;
mod verify;

pub use diagram::*;
pub use newton::{newton_refine, residual, sample_point, NewtonOptions, NewtonResult};
pub use verify::{common_eigenvector, eval_at, mu_ratio, verify_rep_montesinos, Assignment, Check, VerifyReport};

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("boundary product deviates from the identity by {0:e}")]
    ConventionMismatch(f64),
    #[error("cannot reconstruct a representation: {0}")]
    ReconstructionFailure(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("Jacobian is singular")]
    SingularJacobian,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
