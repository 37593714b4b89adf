use nalgebra::DMatrix;

use super::family::{log_derivatives, Derivatives, ParametricFamily};
use super::frame::fisher_metric;
use crate::error::{Error, Result};
use crate::verify::fd::fd_jacobian;

/// Christoffel symbols `Γ^l_ij` of the `α`-connection, flattened as
/// `gamma[(l * n + i) * n + j]`.
///
/// Lowered symbols are `Γ_{ij,k} = E[(∂ᵢ∂ⱼℓ + (1−α)/2 ∂ᵢℓ ∂ⱼℓ) ∂ₖℓ]` with
/// `ℓ = ln p`; the index is raised with the Fisher metric. `α = 1` is the
/// exponential connection, `α = −1` the mixture connection, `α = 0` the
/// Levi-Civita connection.
pub fn christoffel_symbols<F: ParametricFamily + ?Sized>(
    family: &F,
    theta: &[f64],
    alpha: f64,
    mode: Derivatives,
) -> Result<Vec<f64>> {
    let d = log_derivatives(family, theta, mode)?;
    let g = fisher_metric(family, theta, mode)?;
    let g_inv = g.try_inverse().ok_or(Error::SingularFamily { min_eigenvalue: 0.0 })?;
    let n = family.params();
    let atoms = family.atoms();
    let p: Vec<f64> = d.log_prob.iter().map(|l| l.exp()).collect();
    let c = (1.0 - alpha) / 2.0;
    let jac = &d.jacobian;
    let mut lowered = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                lowered[(i * n + j) * n + k] = (0..atoms)
                    .map(|w| p[w] * (d.hessian[i][(w, j)] + c * jac[(w, i)] * jac[(w, j)]) * jac[(w, k)])
                    .sum();
            }
        }
    }
    let mut gamma = vec![0.0; n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                gamma[(l * n + i) * n + j] = (0..n).map(|k| g_inv[(l, k)] * lowered[(i * n + j) * n + k]).sum();
            }
        }
    }
    Ok(gamma)
}

/// Riemann tensor `R^l_{ijk}` (with `R(∂ⱼ, ∂ₖ)∂ᵢ = R^l_{ijk} ∂_l`) of a
/// connection given by its Christoffel field, differentiating `Γ` by
/// central differences. Flattened as `r[((l * n + i) * n + j) * n + k]`.
pub fn riemann_tensor<G>(gamma: G, theta: &[f64]) -> Result<Vec<f64>>
where
    G: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let n = theta.len();
    let g0 = gamma(theta)?;
    let len = n * n * n;
    let dg: DMatrix<f64> = fd_jacobian(|t| gamma(t).unwrap_or_else(|_| vec![f64::NAN; len]), theta, None)?;
    let at = |l: usize, i: usize, j: usize| g0[(l * n + i) * n + j];
    // ∂_m Γ^l_ij
    let d = |m: usize, l: usize, i: usize, j: usize| dg[((l * n + i) * n + j, m)];
    let mut r = vec![0.0; n * n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let quad: f64 = (0..n).map(|m| at(l, j, m) * at(m, k, i) - at(l, k, m) * at(m, j, i)).sum();
                    r[((l * n + i) * n + j) * n + k] = d(j, l, k, i) - d(k, l, j, i) + quad;
                }
            }
        }
    }
    Ok(r)
}

/// Largest component `max |R^l_{ijk}|` of the `α`-connection curvature in
/// the family's own chart.
pub fn alpha_connection_curvature<F: ParametricFamily + ?Sized>(family: &F, theta: &[f64], alpha: f64) -> Result<f64> {
    let r = riemann_tensor(|t| christoffel_symbols(family, t, alpha, Derivatives::Auto), theta)?;
    Ok(r.iter().fold(0.0, |acc, v| acc.max(v.abs())))
}
