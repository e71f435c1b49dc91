//! Sequence-space machinery for generalized means composed with the
//! difference operator.
//!
//! The library makes the following executable over finite prefixes:
//!
//! - the weighted averaging y_n = (1/r_n) sum_{k<=n} s_{n-k} t_k (x_k -
//!   x_{k-1}) and its exact inverse through the triangular-inverse
//!   coefficients D_m (production recursion, determinant oracle for
//!   cross-checks);
//! - the paranorms, the convex modular sum_n |y_n|^{p_n}, and the
//!   Luxemburg norm computed by bisection, plus midpoint-strictness and
//!   modular-convergence probes;
//! - a bank of 26 asymptotic matrix conditions with truncation-honest
//!   verdicts, composed into dual-membership and matrix-mapping checks;
//! - parameter factories for the classical weighted-mean, arithmetic-mean,
//!   binomial-mean, and shifted-geometric special cases.
//!
//! Row-level loops run on rayon when the `parallel` feature (default) is
//! enabled; results are bitwise identical to the sequential fallback
//! because reductions always happen in index order.

pub mod duals;
pub mod error;
pub mod factories;
pub mod io;
pub mod norms;
mod par;
pub mod triangle;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    exponent_stats, validate_params, ExponentSequence, FiniteSequence, GeneralizedMeansParams,
    TriangleMatrix,
};
