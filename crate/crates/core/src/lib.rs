//! # parastat
//!
//! Computational geometry of the paracomplex numbers and of finite
//! probability distributions.
//!
//! - [`paracomplex`]: the algebra `x + εy`, `ε² = 1`, in idempotent
//!   coordinates; vectors, matrices, the Hermitian form, paraholomorphy and
//!   paracomplex structures `K² = I`.
//! - [`pseudo_metric`]: pseudo-Euclidean forms `B^n_l`, signatures, causal
//!   classification.
//! - [`projective`]: the paracomplex projective space, its splitting into
//!   two real projective spaces, collineations, Hermitian and cross-ratio
//!   distances, the Pierce mirror and the sphere double cover.
//! - [`stat_manifold`]: the cone of positive measures, exponential-tilt
//!   geodesics, Bhattacharyya/Fisher geometry, score frames and their
//!   structure equations, and the flat `α = ±1` connections.
//! - [`verify`]: seeded verification suites that check these structures
//!   numerically.
//! - [`cli`]: the `parastat` command line.
//!
//! The algebraic layers are generic over the scalar type (`f32`, `f64`, or
//! an exact rational); the aliases below fix the common choices.

// `!(x <= tol)` is used on purpose so that NaN fails a check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod paracomplex;
pub mod projective;
pub mod pseudo_metric;
pub mod scalar;
pub mod stat_manifold;
pub mod verify;

pub use error::{Error, Result};
pub use paracomplex::{hermitian_inner, KStructure, Paracomplex, PcMatrix, PcVector, Sheet};
pub use projective::{Collineation, Hyperquadric, ProjectivePoint, RealProjectivePair};
pub use pseudo_metric::{BilinearForm, CausalClass};
pub use scalar::{Real, Scalar};
pub use stat_manifold::{Direction, Measure, ProbDist, SampleSpace};
pub use verify::{run_suite, SuiteReport};

/// Double-precision paracomplex number.
pub type Pc = Paracomplex<f64>;
/// Single-precision paracomplex number.
pub type Pc32 = Paracomplex<f32>;
/// Exact paracomplex number over `i64` rationals.
pub type PcRational = Paracomplex<num_rational::Rational64>;
pub type PcVec = PcVector<f64>;
pub type PcMat = PcMatrix<f64>;
pub type Form = BilinearForm<f64>;
