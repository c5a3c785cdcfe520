//! Double-precision numerical kernels.
//!
//! Everything here is deterministic: fixed node tables, fixed iteration
//! caps, and no randomness, so repeated runs produce identical output.

mod dilog;
mod newton;
mod quad;
mod roots;

pub use dilog::{bloch_wigner, li2};
pub use newton::{newton_solve, NewtonOutcome};
pub use quad::{integrate_adaptive, QuadratureResult};
pub use roots::{roots, roots_with, RootSet};

#[derive(Debug, Clone, thiserror::Error)]
pub enum NumericsError {
    #[error("root finding expects a polynomial of degree at least 1")]
    DegreeZero,
    #[error("root finding on the zero polynomial")]
    ZeroPolynomial,
    #[error("simultaneous root iteration stalled after {iterations} iterations (worst relative residual {residual:.3e})")]
    RootsNonConvergence { iterations: usize, residual: f64 },
    #[error("Newton iteration did not converge within {iterations} iterations (residual {residual:.3e})")]
    NewtonNonConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian in Newton iteration {0}")]
    SingularJacobian(usize),
}
