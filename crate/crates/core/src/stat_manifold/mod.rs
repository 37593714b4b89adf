//! Finite probability distributions as a geometric object.
//!
//! Measures on a finite sample space form the positive cone; its
//! automorphisms are the exponential reweightings `ν = μ · exp h`, and their
//! normalized one-parameter orbits are the exponential-tilt geodesics of the
//! simplex. On top of that: the Bhattacharyya/Fisher–Rao geometry, score
//! frames of parametric families and their structure equations, and the
//! curvature of the `α`-connections.

mod cone;
mod connection;
mod distance;
mod family;
mod frame;
mod geodesic;
mod types;

pub use cone::{automorphism_log, cone_automorphism, cone_geodesic};
pub use connection::{alpha_connection_curvature, christoffel_symbols, riemann_tensor};
pub use distance::{bhattacharyya_affinity, embed_projective, fisher_rao_distance};
pub use family::{
    Bernoulli, CurvedExponentialFamily, Derivatives, ExponentialFamily, FnFamily, MixtureFamily,
    LogDerivatives, ParametricFamily,
};
pub use frame::{
    connection_forms, fisher_metric, frame_decomposition, maurer_cartan_forms, score_vectors, ConnectionForms,
    Frame,
};
pub use geodesic::{geodesic_trace, parse_trace_csv, simplex_geodesic, trace_to_csv, TraceRow};
pub use types::{DistJson, Direction, Measure, ProbDist, SampleSpace};

/// Residual tolerance for analytic derivatives.
pub const ANALYTIC_TOL: f64 = 1e-8;
/// Residual tolerance when any derivative came from finite differences.
pub const FINITE_DIFFERENCE_TOL: f64 = 1e-5;
