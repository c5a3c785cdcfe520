//! Exact Laurent-polynomial arithmetic and the numerical machinery needed to
//! relate Mahler measures of knot polynomials to hyperbolic volumes.
//!
//! The crate is organised in five layers:
//!
//! * [`polycore`] — integer-coefficient multivariate Laurent polynomials:
//!   parsing, ring arithmetic, resultants, Newton polygons.
//! * [`numerics`] — double-precision kernels: simultaneous root finding,
//!   adaptive Gauss–Kronrod quadrature, the dilogarithm and Bloch–Wigner
//!   function, damped Newton iteration on complex systems.
//! * [`mahler`] — Mahler measures of one- and two-variable polynomials, and
//!   the Dirichlet L-value they are compared against.
//! * [`hyperbolic`] — ideal-triangulation gluing equations: shape solving,
//!   volumes, cusp holonomy, and elimination down to a holonomy polynomial.
//! * [`charvar`] — SL(2) character-variety checks for two-bridge knot groups.

pub mod charvar;
pub mod hyperbolic;
pub mod mahler;
pub mod numerics;
pub mod polycore;

pub use num_bigint::BigInt;
pub use num_complex::Complex64;
