//! Pseudo-Euclidean bilinear forms `B^n_l`, signatures and the causal
//! classification of vectors under a Lorentzian (index 1) form.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;

/// Symmetric bilinear form on `ℝⁿ`.
///
/// Either the canonical diagonal form with `index` entries `−1` followed by
/// `n − index` entries `+1`, or a dense symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<T> {
    dim: usize,
    index: usize,
    gram: Option<Vec<Vec<T>>>,
}

/// Inertia `(neg, zero, pos)` of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.neg, self.zero, self.pos)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

impl CausalClass {
    pub fn name(self) -> &'static str {
        match self {
            CausalClass::Timelike => "Timelike",
            CausalClass::Null => "Null",
            CausalClass::Spacelike => "Spacelike",
        }
    }
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl<T: Real> BilinearForm<T> {
    /// `B^n_l(x,y) = −Σ_{i≤l} xᵢyᵢ + Σ_{j>l} xⱼyⱼ`.
    pub fn canonical(dim: usize, index: usize) -> Result<Self> {
        if index > dim {
            return Err(Error::InvalidArgument(format!("index {index} exceeds dimension {dim}")));
        }
        Ok(BilinearForm { dim, index, gram: None })
    }

    /// `B^n_1`.
    pub fn lorentzian(dim: usize) -> Result<Self> {
        Self::canonical(dim, 1)
    }

    /// Dense form; the index is the number of negative eigenvalues.
    pub fn from_gram(gram: Vec<Vec<T>>, tol: T) -> Result<Self> {
        let sig = signature_of_gram(&gram, tol)?;
        Ok(BilinearForm { dim: gram.len(), index: sig.neg, gram: Some(gram) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn gram(&self) -> Vec<Vec<T>> {
        match &self.gram {
            Some(g) => g.clone(),
            None => (0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .map(|j| match (i == j, i < self.index) {
                            (false, _) => T::zero(),
                            (true, true) => -T::one(),
                            (true, false) => T::one(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> Result<T> {
        check_dim(self.dim, x.len())?;
        check_dim(self.dim, y.len())?;
        Ok(match &self.gram {
            None => {
                let (time, space) = (self.index, self.dim);
                let neg = (0..time).fold(T::zero(), |acc, i| acc + x[i] * y[i]);
                let pos = (time..space).fold(T::zero(), |acc, j| acc + x[j] * y[j]);
                pos - neg
            }
            Some(g) => g.iter().zip(x).fold(T::zero(), |acc, (row, &xi)| {
                acc + xi * row.iter().zip(y).fold(T::zero(), |s, (&gij, &yj)| s + gij * yj)
            }),
        })
    }

    pub fn quadratic(&self, x: &[T]) -> Result<T> {
        self.eval(x, x)
    }
}

pub fn bilinear_eval<T: Real>(form: &BilinearForm<T>, x: &[T], y: &[T]) -> Result<T> {
    form.eval(x, y)
}

/// Default causal tolerance `1e−10 · (1 + ‖x‖²)`.
pub fn default_causal_tol<T: Real>(x: &[T]) -> T {
    let norm2 = x.iter().fold(T::zero(), |acc, &v| acc + v * v);
    T::from_f64(1e-10) * (T::one() + norm2)
}

/// Classifies `x` by the sign of `B(x,x)` under a Lorentzian form.
pub fn causal_class<T: Real>(form: &BilinearForm<T>, x: &[T], tol: Option<T>) -> Result<CausalClass> {
    if form.index() != 1 {
        return Err(Error::NotLorentzian { index: form.index() });
    }
    check_dim(form.dim(), x.len())?;
    if x.iter().all(|v| v.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let q = form.quadratic(x)?;
    let tol = tol.unwrap_or_else(|| default_causal_tol(x));
    Ok(if q < -tol {
        CausalClass::Timelike
    } else if q > tol {
        CausalClass::Spacelike
    } else {
        CausalClass::Null
    })
}

fn max_asymmetry<T: Real>(g: &[Vec<T>]) -> T {
    let mut worst = T::zero();
    for (i, row) in g.iter().enumerate() {
        for (j, &gij) in row.iter().enumerate().skip(i + 1) {
            worst = worst.max((gij - g[j][i]).abs());
        }
    }
    worst
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues<T: Real>(g: &[Vec<T>]) -> Vec<T> {
    let n = g.len();
    let mut a: Vec<Vec<T>> = g.to_vec();
    let frob = a.iter().flatten().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j])
            .sqrt();
        if off <= eps * frob || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let two = T::from_f64(2.0);
                let theta = (a[q][q] - a[p][p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Counts eigenvalues below `−tol`, within `±tol`, and above `tol`.
pub fn signature_of_gram<T: Real>(g: &[Vec<T>], tol: T) -> Result<Signature> {
    let n = g.len();
    for row in g {
        check_dim(n, row.len())?;
    }
    let scale = g.iter().flatten().fold(T::one(), |acc, &v| acc.max(v.abs()));
    let asym = max_asymmetry(g);
    if asym > tol * scale {
        return Err(Error::NotSymmetric { residual: asym.as_f64() });
    }
    let half = T::from_f64(0.5);
    let sym: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| (g[i][j] + g[j][i]) * half).collect()).collect();
    let mut sig = Signature { neg: 0, zero: 0, pos: 0 };
    for ev in symmetric_eigenvalues(&sym) {
        if ev < -tol {
            sig.neg += 1;
        } else if ev > tol {
            sig.pos += 1;
        } else {
            sig.zero += 1;
        }
    }
    Ok(sig)
}

/// Randomized check that the positive orthant of `ℝⁿ` equals its dual cone.
///
/// Interior pairs must have positive inner product, and every sampled point
/// with a negative coordinate must be separated by some orthant point.
pub fn orthant_is_self_dual(dim: usize, samples: usize, seed: u64) -> bool {
    if dim == 0 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for _ in 0..samples {
        let a: Vec<f64> = (0..dim).map(|_| rng.random_range(1e-6..1.0)).collect();
        let b: Vec<f64> = (0..dim).map(|_| rng.random_range(1e-6..1.0)).collect();
        if dot(&a, &b) <= 0.0 {
            return false;
        }
        // Exterior point: push one coordinate negative.
        let mut ext = a.clone();
        let k = rng.random_range(0..dim);
        ext[k] = -rng.random_range(1e-3..1.0);
        let delta = 0.5 * ext[k].abs() / (1.0 + ext.iter().map(|v| v.abs()).sum::<f64>());
        let witness: Vec<f64> =
            (0..dim).map(|i| if i == k { 1.0 } else { delta }).collect();
        if dot(&ext, &witness) >= 0.0 {
            return false;
        }
    }
    true
}
