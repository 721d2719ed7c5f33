//! Verified reverses of the triangle inequality on concrete normed spaces.
//!
//! The generalised triangle inequality ‖Σx_i‖ ≤ Σ‖x_i‖ reverses under margin or
//! slack hypotheses: multiplicatively, Σ‖x_i‖ ≤ C·‖Σx_i‖, and additively,
//! Σ‖x_i‖ ≤ ‖Σx_i‖ + M, with continuous (vector-valued integral) analogues. This
//! crate evaluates every such bound on K^n (K = ℝ, ℂ) under the ℓ^p and p-modulus
//! norms, checks them on generated hypothesis-satisfying instances, constructs and
//! validates the equality cases, and estimates the sup-type family constants the
//! sharpest bounds depend on.
//!
//! Entry points:
//! - [`space`]: vectors, norms, inner and semi-inner products.
//! - [`functional`]: linear functionals, operator norms, family constants c_p / c_∞.
//! - [`transform`]: ball/band hypotheses into margins and slacks.
//! - [`discrete`]: the finite-sum checks and equality constructors.
//! - [`quadrature`], [`path`], [`continuous`]: vector-valued integrals and the
//!   integral checks.
//! - [`instances`]: seeded instance generation and sharpness search.
//! - [`harness`], [`report`]: suite orchestration and structured reports.
//!
//! The `trirev` binary exposes the suites on the command line; the `examples/`
//! directory has one runnable example per capability.

pub mod continuous;
pub mod discrete;
pub mod error;
pub mod functional;
pub mod harness;
pub mod instances;
pub mod path;
pub mod quadrature;
pub mod report;
pub mod space;
pub mod tol;
pub mod transform;

pub use error::{Error, Result};
pub use space::{Field, NormKind, PExp, Scalar, SpaceSpec, Vector};
pub use tol::Tolerance;
