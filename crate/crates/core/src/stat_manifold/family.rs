use nalgebra::DMatrix;

use super::types::ProbDist;
use crate::error::{check_dim, Error, Result};
use crate::verify::fd::{fd_hessian, fd_jacobian};

/// How derivatives of `ln p(θ)` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Derivatives {
    /// Analytic derivatives when the family provides them, otherwise
    /// finite differences.
    #[default]
    Auto,
    /// Always central finite differences.
    FiniteDifference,
}

/// A smooth map `θ ↦ p(θ)` from parameters into the simplex.
pub trait ParametricFamily: Send + Sync {
    fn atoms(&self) -> usize;

    fn params(&self) -> usize;

    /// `ln p(ω; θ)` for every atom.
    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>>;

    /// `J[ω][j] = ∂_j ln p(ω; θ)`, if known in closed form.
    fn log_prob_jacobian(&self, _theta: &[f64]) -> Option<Result<DMatrix<f64>>> {
        None
    }

    /// `H[k][(ω, j)] = ∂_k ∂_j ln p(ω; θ)`, if known in closed form.
    fn log_prob_hessian(&self, _theta: &[f64]) -> Option<Result<Vec<DMatrix<f64>>>> {
        None
    }

    fn prob(&self, theta: &[f64]) -> Result<ProbDist> {
        let p: Vec<f64> = self.log_prob(theta)?.into_iter().map(f64::exp).collect();
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ProbDist::from_raw(p))
    }
}

/// `ln p`, its Jacobian and Hessian at one parameter point.
#[derive(Debug, Clone)]
pub struct LogDerivatives {
    pub log_prob: Vec<f64>,
    pub jacobian: DMatrix<f64>,
    pub hessian: Vec<DMatrix<f64>>,
    /// Whether both derivative orders were analytic.
    pub analytic: bool,
}

pub(crate) fn log_derivatives<F: ParametricFamily + ?Sized>(
    family: &F,
    theta: &[f64],
    mode: Derivatives,
) -> Result<LogDerivatives> {
    check_dim(family.params(), theta.len())?;
    let log_prob = family.log_prob(theta)?;
    let closure = |t: &[f64]| family.log_prob(t).unwrap_or_else(|_| vec![f64::NAN; family.atoms()]);
    let analytic = mode == Derivatives::Auto;
    let (jacobian, jac_analytic) = match family.log_prob_jacobian(theta).filter(|_| analytic) {
        Some(j) => (j?, true),
        None => (fd_jacobian(closure, theta, None)?, false),
    };
    let (hessian, hess_analytic) = match family.log_prob_hessian(theta).filter(|_| analytic) {
        Some(h) => (h?, true),
        None => (fd_hessian(closure, theta, None)?, false),
    };
    Ok(LogDerivatives { log_prob, jacobian, hessian, analytic: jac_analytic && hess_analytic })
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Exponential family `ln p(ω; θ) = θ·T(ω) − ψ(θ)` with sufficient
/// statistics `T` (one row per atom).
#[derive(Debug, Clone)]
pub struct ExponentialFamily {
    stats: DMatrix<f64>,
}

impl ExponentialFamily {
    pub fn with_stats(stats: DMatrix<f64>) -> Result<Self> {
        if stats.nrows() < 2 {
            return Err(Error::InvalidArgument("need at least 2 atoms".into()));
        }
        if stats.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ExponentialFamily { stats })
    }

    /// The full family on `atoms` atoms: indicator statistics of the first
    /// `atoms − 1` atoms, so `θ` are the log-odds against the last atom.
    pub fn full(atoms: usize) -> Result<Self> {
        if atoms < 2 {
            return Err(Error::InvalidArgument("need at least 2 atoms".into()));
        }
        Self::with_stats(DMatrix::from_fn(atoms, atoms - 1, |i, j| if i == j { 1.0 } else { 0.0 }))
    }

    pub fn stats(&self) -> &DMatrix<f64> {
        &self.stats
    }

    /// Natural parameters of an interior distribution in the full family.
    pub fn natural_params(p: &ProbDist) -> Result<Vec<f64>> {
        p.require_interior()?;
        let last = p.probs()[p.atoms() - 1].ln();
        Ok(p.probs()[..p.atoms() - 1].iter().map(|v| v.ln() - last).collect())
    }

    fn logits(&self, theta: &[f64]) -> Vec<f64> {
        (0..self.stats.nrows())
            .map(|i| (0..self.stats.ncols()).map(|k| theta[k] * self.stats[(i, k)]).sum())
            .collect()
    }

    fn centered_stats(&self, theta: &[f64]) -> Result<(Vec<f64>, DMatrix<f64>)> {
        let p: Vec<f64> = self.log_prob(theta)?.into_iter().map(f64::exp).collect();
        let mean: Vec<f64> = (0..self.stats.ncols())
            .map(|k| (0..p.len()).map(|i| p[i] * self.stats[(i, k)]).sum())
            .collect();
        let centered = DMatrix::from_fn(self.stats.nrows(), self.stats.ncols(), |i, k| self.stats[(i, k)] - mean[k]);
        Ok((p, centered))
    }
}

impl ParametricFamily for ExponentialFamily {
    fn atoms(&self) -> usize {
        self.stats.nrows()
    }

    fn params(&self) -> usize {
        self.stats.ncols()
    }

    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.params(), theta.len())?;
        let logits = self.logits(theta);
        let psi = log_sum_exp(&logits);
        Ok(logits.iter().map(|l| l - psi).collect())
    }

    fn log_prob_jacobian(&self, theta: &[f64]) -> Option<Result<DMatrix<f64>>> {
        Some(self.centered_stats(theta).map(|(_, c)| c))
    }

    fn log_prob_hessian(&self, theta: &[f64]) -> Option<Result<Vec<DMatrix<f64>>>> {
        Some(self.centered_stats(theta).map(|(p, c)| {
            let d = self.params();
            let cov = DMatrix::from_fn(d, d, |j, k| (0..p.len()).map(|i| p[i] * c[(i, j)] * c[(i, k)]).sum::<f64>());
            (0..d).map(|k| DMatrix::from_fn(p.len(), d, |_, j| -cov[(j, k)])).collect()
        }))
    }
}

/// `p = (1 − θ, θ)` for `θ ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bernoulli;

fn check_open_unit(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("Bernoulli parameter {theta} outside (0, 1)")))
    }
}

impl ParametricFamily for Bernoulli {
    fn atoms(&self) -> usize {
        2
    }

    fn params(&self) -> usize {
        1
    }

    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_dim(1, theta.len())?;
        check_open_unit(theta[0])?;
        Ok(vec![(1.0 - theta[0]).ln(), theta[0].ln()])
    }

    fn log_prob_jacobian(&self, theta: &[f64]) -> Option<Result<DMatrix<f64>>> {
        Some(self.log_prob(theta).map(|_| {
            let t = theta[0];
            DMatrix::from_column_slice(2, 1, &[-1.0 / (1.0 - t), 1.0 / t])
        }))
    }

    fn log_prob_hessian(&self, theta: &[f64]) -> Option<Result<Vec<DMatrix<f64>>>> {
        Some(self.log_prob(theta).map(|_| {
            let t = theta[0];
            vec![DMatrix::from_column_slice(2, 1, &[-(1.0 / (1.0 - t)).powi(2), -(1.0 / t).powi(2)])]
        }))
    }
}

/// Mixture chart of the simplex: `pᵢ = θᵢ` for the first `atoms − 1` atoms
/// and the remainder on the last.
#[derive(Debug, Clone, Copy)]
pub struct MixtureFamily {
    atoms: usize,
}

impl MixtureFamily {
    pub fn new(atoms: usize) -> Result<Self> {
        if atoms < 2 {
            return Err(Error::InvalidArgument("need at least 2 atoms".into()));
        }
        Ok(MixtureFamily { atoms })
    }

    fn probs(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.atoms - 1, theta.len())?;
        let mut p = theta.to_vec();
        p.push(1.0 - theta.iter().sum::<f64>());
        if p.iter().all(|&v| v > 0.0) {
            Ok(p)
        } else {
            Err(Error::NotInterior)
        }
    }
}

impl ParametricFamily for MixtureFamily {
    fn atoms(&self) -> usize {
        self.atoms
    }

    fn params(&self) -> usize {
        self.atoms - 1
    }

    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>> {
        Ok(self.probs(theta)?.into_iter().map(f64::ln).collect())
    }

    fn log_prob_jacobian(&self, theta: &[f64]) -> Option<Result<DMatrix<f64>>> {
        Some(self.probs(theta).map(|p| {
            let last = self.atoms - 1;
            DMatrix::from_fn(self.atoms, last, |i, j| {
                if i == last {
                    -1.0 / p[last]
                } else if i == j {
                    1.0 / p[i]
                } else {
                    0.0
                }
            })
        }))
    }

    fn log_prob_hessian(&self, theta: &[f64]) -> Option<Result<Vec<DMatrix<f64>>>> {
        Some(self.probs(theta).map(|p| {
            let last = self.atoms - 1;
            (0..last)
                .map(|k| {
                    DMatrix::from_fn(self.atoms, last, |i, j| {
                        if i == last {
                            -(1.0 / p[last]).powi(2)
                        } else if i == j && j == k {
                            -(1.0 / p[i]).powi(2)
                        } else {
                            0.0
                        }
                    })
                })
                .collect()
        }))
    }
}

/// One-parameter curve `η(t) = (t, t², …, t^d)` through the natural
/// parameters of an exponential family with `d` statistics.
#[derive(Debug, Clone)]
pub struct CurvedExponentialFamily {
    base: ExponentialFamily,
}

impl CurvedExponentialFamily {
    pub fn new(base: ExponentialFamily) -> Self {
        CurvedExponentialFamily { base }
    }

    fn eta(&self, t: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let d = self.base.params();
        let eta = (1..=d).map(|k| t.powi(k as i32)).collect();
        let d1 = (1..=d).map(|k| k as f64 * t.powi(k as i32 - 1)).collect();
        let d2 = (1..=d).map(|k| (k * (k - 1)) as f64 * t.powi(k as i32 - 2)).collect();
        (eta, d1, d2)
    }
}

impl ParametricFamily for CurvedExponentialFamily {
    fn atoms(&self) -> usize {
        self.base.atoms()
    }

    fn params(&self) -> usize {
        1
    }

    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_dim(1, theta.len())?;
        self.base.log_prob(&self.eta(theta[0]).0)
    }

    fn log_prob_jacobian(&self, theta: &[f64]) -> Option<Result<DMatrix<f64>>> {
        if let Err(e) = check_dim(1, theta.len()) {
            return Some(Err(e));
        }
        let (eta, d1, _) = self.eta(theta[0]);
        Some(self.base.centered_stats(&eta).map(|(_, c)| c * DMatrix::from_column_slice(d1.len(), 1, &d1)))
    }

    fn log_prob_hessian(&self, theta: &[f64]) -> Option<Result<Vec<DMatrix<f64>>>> {
        if let Err(e) = check_dim(1, theta.len()) {
            return Some(Err(e));
        }
        let (eta, d1, d2) = self.eta(theta[0]);
        Some(self.base.centered_stats(&eta).map(|(p, c)| {
            let v1 = DMatrix::from_column_slice(d1.len(), 1, &d1);
            let v2 = DMatrix::from_column_slice(d2.len(), 1, &d2);
            let s1 = &c * v1;
            // ∂²ψ along the curve is Var(η'·T); the score's derivative is
            // η''·(T − E T) − Var(η'·T).
            let var: f64 = (0..p.len()).map(|i| p[i] * s1[(i, 0)] * s1[(i, 0)]).sum();
            vec![(&c * v2).map(|v| v - var)]
        }))
    }
}

type ProbFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A family given only by a closure returning probabilities; derivatives
/// always come from finite differences.
pub struct FnFamily {
    atoms: usize,
    params: usize,
    f: Box<ProbFn>,
}

impl FnFamily {
    pub fn new(atoms: usize, params: usize, f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        FnFamily { atoms, params, f: Box::new(f) }
    }
}

impl std::fmt::Debug for FnFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnFamily").field("atoms", &self.atoms).field("params", &self.params).finish()
    }
}

impl ParametricFamily for FnFamily {
    fn atoms(&self) -> usize {
        self.atoms
    }

    fn params(&self) -> usize {
        self.params
    }

    fn log_prob(&self, theta: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.params, theta.len())?;
        let p = (self.f)(theta);
        check_dim(self.atoms, p.len())?;
        if p.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::NotInterior);
        }
        Ok(p.into_iter().map(f64::ln).collect())
    }
}
