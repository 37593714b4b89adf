//! Central finite differences.
//!
//! Steps are rounded to a power of two so that `x ± h` is exact for
//! moderately sized `x`; the divisor is the difference actually taken.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

fn pow2(h: f64) -> f64 {
    2f64.powi(h.log2().round() as i32)
}

/// Default first-derivative step `∛ε · max(1, |x|)`, rounded to a power of two.
pub fn default_step(x: f64) -> f64 {
    pow2(f64::EPSILON.cbrt() * x.abs().max(1.0))
}

/// Default second-derivative base step `ε^{1/6} · max(1, |x|)`, sized for
/// the extrapolated stencil.
pub fn default_second_step(x: f64) -> f64 {
    pow2(f64::EPSILON.powf(1.0 / 6.0) * x.abs().max(1.0))
}

fn eval<F>(f: &F, x: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let y = f(x);
    if y.iter().all(|v| v.is_finite()) {
        Ok(y)
    } else {
        Err(Error::NonFinite)
    }
}

/// Central-difference Jacobian `J[i][j] = ∂f_i/∂x_j`.
pub fn fd_jacobian<F>(f: F, x: &[f64], step: Option<f64>) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let m = eval(&f, x)?.len();
    let mut jac = DMatrix::zeros(m, x.len());
    let mut probe = x.to_vec();
    for j in 0..x.len() {
        let h = step.unwrap_or_else(|| default_step(x[j]));
        let (hi, lo) = (x[j] + h, x[j] - h);
        probe[j] = hi;
        let f_hi = eval(&f, &probe)?;
        probe[j] = lo;
        let f_lo = eval(&f, &probe)?;
        probe[j] = x[j];
        let width = hi - lo;
        for i in 0..m {
            jac[(i, j)] = (f_hi[i] - f_lo[i]) / width;
        }
    }
    Ok(jac)
}

/// Central second differences. Entry `k` of the result is the matrix
/// `H_k[i][j] = ∂_k ∂_j f_i`.
///
/// With an explicit step this is the plain second-order stencil. Without
/// one, stencils at `h` and `2h` (`h ≈ ε^{1/6}`) are Richardson-combined,
/// giving a fourth-order estimate.
pub fn fd_hessian<F>(f: F, x: &[f64], step: Option<f64>) -> Result<Vec<DMatrix<f64>>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let f0 = eval(&f, x)?;
    match step {
        Some(h) => hessian_stencil(&f, x, &f0, &vec![h; x.len()]),
        None => {
            let h: Vec<f64> = x.iter().map(|&xi| default_second_step(xi)).collect();
            let fine = hessian_stencil(&f, x, &f0, &h)?;
            let coarse = hessian_stencil(&f, x, &f0, &h.iter().map(|v| 2.0 * v).collect::<Vec<_>>())?;
            Ok(fine.iter().zip(&coarse).map(|(a, b)| (a * 4.0 - b) / 3.0).collect())
        }
    }
}

fn hessian_stencil<F>(f: &F, x: &[f64], f0: &[f64], h: &[f64]) -> Result<Vec<DMatrix<f64>>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let m = f0.len();
    let shifted = |moves: &[(usize, f64)]| {
        let mut p = x.to_vec();
        for &(idx, dir) in moves {
            p[idx] += dir * h[idx];
        }
        eval(f, &p)
    };
    let mut out = vec![DMatrix::zeros(m, n); n];
    for k in 0..n {
        for j in k..n {
            let col: Vec<f64> = if j == k {
                let (up, down) = (shifted(&[(k, 1.0)])?, shifted(&[(k, -1.0)])?);
                (0..m).map(|i| (up[i] - 2.0 * f0[i] + down[i]) / (h[k] * h[k])).collect()
            } else {
                let pp = shifted(&[(j, 1.0), (k, 1.0)])?;
                let pm = shifted(&[(j, 1.0), (k, -1.0)])?;
                let mp = shifted(&[(j, -1.0), (k, 1.0)])?;
                let mm = shifted(&[(j, -1.0), (k, -1.0)])?;
                (0..m).map(|i| (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h[j] * h[k])).collect()
            };
            for i in 0..m {
                out[k][(i, j)] = col[i];
                out[j][(i, k)] = col[i];
            }
        }
    }
    Ok(out)
}
