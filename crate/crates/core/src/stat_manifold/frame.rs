use nalgebra::DMatrix;
use serde::Serialize;

use super::family::{log_derivatives, Derivatives, ParametricFamily};
use super::{ANALYTIC_TOL, FINITE_DIFFERENCE_TOL};
use crate::error::{check_dim, Error, Result};
use crate::pseudo_metric::symmetric_eigenvalues;

/// Relative singular-value cutoff below which a frame counts as degenerate.
const RANK_TOL: f64 = 1e-10;

/// Polar vector `r = p(θ)` and score vectors `X_j = ∂_j ln p(θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub r: Vec<f64>,
    /// One column per parameter, one row per atom.
    pub scores: DMatrix<f64>,
    pub analytic: bool,
}

impl Frame {
    /// The matrix `[r | X₁ … Xₙ]`.
    pub fn matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.r.len(), self.scores.ncols() + 1);
        m.set_column(0, &nalgebra::DVector::from_column_slice(&self.r));
        m.columns_mut(1, self.scores.ncols()).copy_from(&self.scores);
        m
    }
}

pub fn score_vectors<F: ParametricFamily + ?Sized>(family: &F, theta: &[f64], mode: Derivatives) -> Result<Frame> {
    let d = log_derivatives(family, theta, mode)?;
    Ok(Frame {
        r: d.log_prob.iter().map(|l| l.exp()).collect(),
        scores: d.jacobian,
        analytic: d.analytic,
    })
}

/// Fisher information `g_ij = Σ_ω p(ω) X_i(ω) X_j(ω)`.
pub fn fisher_metric<F: ParametricFamily + ?Sized>(family: &F, theta: &[f64], mode: Derivatives) -> Result<DMatrix<f64>> {
    let frame = score_vectors(family, theta, mode)?;
    let x = &frame.scores;
    let n = x.ncols();
    let g = DMatrix::from_fn(n, n, |i, j| (0..x.nrows()).map(|w| frame.r[w] * x[(w, i)] * x[(w, j)]).sum::<f64>());
    let rows: Vec<Vec<f64>> = g.row_iter().map(|r| r.iter().copied().collect()).collect();
    let eig = symmetric_eigenvalues(&rows);
    let max = eig.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > RANK_TOL * max) {
        return Err(Error::SingularFamily { min_eigenvalue: min });
    }
    Ok(g)
}

/// Coefficients of `∂_k r` and `∂_k X_i` in the frame `{r, X₁, …, Xₙ}`.
///
/// Index conventions, with `k` the parameter direction: `omega[k]`,
/// `omega_s[k][s]`, `omega_i[k][i]`, `omega_ij[k][i][j]`, so that
/// `∂_k r = omega[k] r + Σ_s omega_s[k][s] X_s` and
/// `∂_k X_i = omega_i[k][i] r + Σ_j omega_ij[k][i][j] X_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectionForms {
    pub omega: Vec<f64>,
    pub omega_s: Vec<Vec<f64>>,
    pub omega_i: Vec<Vec<f64>>,
    pub omega_ij: Vec<Vec<Vec<f64>>>,
    /// Largest relative reconstruction residual over all targets.
    pub residual: f64,
    pub tol: f64,
    pub analytic: bool,
}

/// Least-squares coefficients of each column of `targets` in the columns of
/// `frame`, with the residual `maxⱼ ‖F cⱼ − tⱼ‖ / maxⱼ ‖tⱼ‖`.
pub fn frame_decomposition(frame: &DMatrix<f64>, targets: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    check_dim(frame.nrows(), targets.nrows())?;
    if frame.ncols() > frame.nrows() {
        return Err(Error::FrameDegenerate);
    }
    // Equilibrate columns so the rank test is scale-free.
    let scales: Vec<f64> = frame.column_iter().map(|c| c.norm()).collect();
    if scales.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::FrameDegenerate);
    }
    let mut scaled = frame.clone();
    for (j, s) in scales.iter().enumerate() {
        scaled.column_mut(j).unscale_mut(*s);
    }
    let sv = scaled.singular_values();
    if sv.min() <= RANK_TOL * sv.max() {
        return Err(Error::FrameDegenerate);
    }
    let cols = scaled.ncols();
    let qr = scaled.qr();
    let qt_t = qr.q().transpose() * targets;
    let mut coeffs = qr.r().solve_upper_triangular(&qt_t.rows(0, cols).into_owned()).ok_or(Error::FrameDegenerate)?;
    for (j, s) in scales.iter().enumerate() {
        coeffs.row_mut(j).unscale_mut(*s);
    }
    let fitted = frame * &coeffs;
    let scale = targets.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
    let worst = (0..targets.ncols()).map(|c| (fitted.column(c) - targets.column(c)).norm()).fold(0.0, f64::max);
    let residual = if scale > 0.0 { worst / scale } else { worst };
    Ok((coeffs, residual))
}

/// Decomposes `∂_k r` and `∂_k X_i` in the score frame without enforcing a
/// tolerance on the residual.
pub fn connection_forms<F: ParametricFamily + ?Sized>(
    family: &F,
    theta: &[f64],
    mode: Derivatives,
) -> Result<ConnectionForms> {
    let d = log_derivatives(family, theta, mode)?;
    let p: Vec<f64> = d.log_prob.iter().map(|l| l.exp()).collect();
    let frame = Frame { r: p.clone(), scores: d.jacobian.clone(), analytic: d.analytic }.matrix();
    let n = family.params();
    let atoms = family.atoms();
    // Targets for direction k: column 0 is ∂_k r = p ⊙ X_k, columns 1..=n are ∂_k X_i.
    let mut forms = ConnectionForms {
        omega: Vec::with_capacity(n),
        omega_s: Vec::with_capacity(n),
        omega_i: Vec::with_capacity(n),
        omega_ij: Vec::with_capacity(n),
        residual: 0.0,
        tol: if d.analytic { ANALYTIC_TOL } else { FINITE_DIFFERENCE_TOL },
        analytic: d.analytic,
    };
    for k in 0..n {
        let targets = DMatrix::from_fn(atoms, n + 1, |w, c| {
            if c == 0 {
                p[w] * d.jacobian[(w, k)]
            } else {
                d.hessian[k][(w, c - 1)]
            }
        });
        let (coeffs, residual) = frame_decomposition(&frame, &targets)?;
        forms.residual = forms.residual.max(residual);
        forms.omega.push(coeffs[(0, 0)]);
        forms.omega_s.push((1..=n).map(|s| coeffs[(s, 0)]).collect());
        forms.omega_i.push((1..=n).map(|i| coeffs[(0, i)]).collect());
        forms.omega_ij.push((1..=n).map(|i| (1..=n).map(|j| coeffs[(j, i)]).collect()).collect());
    }
    Ok(forms)
}

/// Structure equations `dr = ω r + ωˢ X_s`, `dXᵢ = ωᵢ r + ωᵢʲ X_j`.
///
/// Fails with [`Error::ResidualTooLarge`] when the frame derivatives have a
/// component outside the span of the frame, which happens exactly when the
/// family does not fill its simplex.
pub fn maurer_cartan_forms<F: ParametricFamily + ?Sized>(
    family: &F,
    theta: &[f64],
    mode: Derivatives,
) -> Result<ConnectionForms> {
    let forms = connection_forms(family, theta, mode)?;
    if !(forms.residual <= forms.tol) {
        return Err(Error::ResidualTooLarge { residual: forms.residual, tol: forms.tol });
    }
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo_metric::signature_of_gram;
    use crate::stat_manifold::family::{Bernoulli, CurvedExponentialFamily, ExponentialFamily, FnFamily};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bernoulli_fisher_information() {
        let g = fisher_metric(&Bernoulli, &[0.5], Derivatives::Auto).unwrap();
        assert!((g[(0, 0)] - 4.0).abs() < 1e-14);
        for t in [0.1, 0.37, 0.8] {
            let g = fisher_metric(&Bernoulli, &[t], Derivatives::Auto).unwrap();
            assert!((g[(0, 0)] - 1.0 / (t * (1.0 - t))).abs() < 1e-12 * g[(0, 0)]);
        }
    }

    #[test]
    fn fisher_metric_is_covariant() {
        // θ = 2u: g̃(u) = J g(2u) J with J = 2
        let reparam = FnFamily::new(2, 1, |u| vec![1.0 - 2.0 * u[0], 2.0 * u[0]]);
        let u = 0.15;
        let g = fisher_metric(&Bernoulli, &[2.0 * u], Derivatives::Auto).unwrap()[(0, 0)];
        let gt = fisher_metric(&reparam, &[u], Derivatives::Auto).unwrap()[(0, 0)];
        assert!((gt - 4.0 * g).abs() < 1e-6 * gt);
    }

    #[test]
    fn full_simplex_metric_is_positive_definite() {
        let g = fisher_metric(&ExponentialFamily::full(3).unwrap(), &[0.0, 0.0], Derivatives::Auto).unwrap();
        let rows: Vec<Vec<f64>> = g.row_iter().map(|r| r.iter().copied().collect()).collect();
        let sig = signature_of_gram(&rows, 1e-12).unwrap();
        assert_eq!((sig.neg, sig.zero, sig.pos), (0, 0, 2));
    }

    #[test]
    fn singular_family_detected() {
        let flat = FnFamily::new(3, 2, |t| {
            let a = 0.3 + 0.1 * (t[0] + t[1]);
            vec![a, 0.5 - 0.1 * (t[0] + t[1]), 0.2]
        });
        assert!(matches!(fisher_metric(&flat, &[0.1, 0.2], Derivatives::Auto), Err(Error::SingularFamily { .. })));
    }

    #[test]
    fn bernoulli_scores_and_forms() {
        let f = score_vectors(&Bernoulli, &[0.5], Derivatives::Auto).unwrap();
        assert_eq!(f.r, vec![0.5, 0.5]);
        assert_eq!((f.scores[(0, 0)], f.scores[(1, 0)]), (-2.0, 2.0));

        // ∂r = (−1, 1) solved against {r, X} by Cramer's rule
        for t in [0.2, 0.5, 0.9] {
            let forms = maurer_cartan_forms(&Bernoulli, &[t], Derivatives::Auto).unwrap();
            let (r, x) = ([1.0 - t, t], [-1.0 / (1.0 - t), 1.0 / t]);
            let det = r[0] * x[1] - r[1] * x[0];
            // right-hand side (−1, 1)
            let omega = (-x[1] - x[0]) / det;
            let omega1 = (r[0] + r[1]) / det;
            assert!((forms.omega[0] - omega).abs() < 1e-12);
            assert!((forms.omega_s[0][0] - omega1).abs() < 1e-12);
            assert!(forms.residual <= 1e-14);
        }
    }

    #[test]
    fn constant_family_has_zero_scores() {
        let c = FnFamily::new(3, 1, |_| vec![0.2, 0.3, 0.5]);
        let f = score_vectors(&c, &[0.4], Derivatives::Auto).unwrap();
        assert!(f.scores.iter().all(|&v| v == 0.0));
        assert_eq!(maurer_cartan_forms(&c, &[0.4], Derivatives::Auto), Err(Error::FrameDegenerate));
    }

    #[test]
    fn scores_are_centered() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for atoms in 3..=6 {
            let stats = DMatrix::from_fn(atoms, 2, |_, _| rng.random_range(-2.0..2.0));
            let fam = ExponentialFamily::with_stats(stats).unwrap();
            let theta: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..1.0)).collect();
            let f = score_vectors(&fam, &theta, Derivatives::Auto).unwrap();
            for j in 0..2 {
                let mean: f64 = (0..atoms).map(|w| f.r[w] * f.scores[(w, j)]).sum();
                assert!(mean.abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn full_families_close_the_structure_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for atoms in 3..=6 {
            let fam = ExponentialFamily::full(atoms).unwrap();
            for _ in 0..20 {
                let theta: Vec<f64> = (0..atoms - 1).map(|_| rng.random_range(-2.0..2.0)).collect();
                let exact = maurer_cartan_forms(&fam, &theta, Derivatives::Auto).unwrap();
                assert!(exact.analytic && exact.residual <= ANALYTIC_TOL);
                let fd = maurer_cartan_forms(&fam, &theta, Derivatives::FiniteDifference).unwrap();
                assert!(!fd.analytic && fd.residual <= FINITE_DIFFERENCE_TOL);
            }
        }
    }

    #[test]
    fn curved_subfamily_has_normal_component() {
        let curved = CurvedExponentialFamily::new(ExponentialFamily::full(4).unwrap());
        match maurer_cartan_forms(&curved, &[0.3], Derivatives::Auto) {
            Err(Error::ResidualTooLarge { residual, .. }) => assert!(residual > 1e-2, "{residual}"),
            other => panic!("expected ResidualTooLarge, got {other:?}"),
        }
    }
}
