use crate::error::{check_dim, Error, Result};
use crate::scalar::Real;

/// Real endomorphism `K` of `ℝ^{2m}` with `K² = I`, a paracomplex structure.
///
/// Construction only checks the shape; [`KStructure::k_split`] verifies the
/// involution before splitting.
#[derive(Debug, Clone, PartialEq)]
pub struct KStructure<T> {
    dim: usize,
    matrix: Vec<T>,
}

impl<T: Real> KStructure<T> {
    /// `matrix` is row-major `dim × dim`.
    pub fn new(dim: usize, matrix: Vec<T>) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("dimension {dim} is not even and positive")));
        }
        check_dim(dim * dim, matrix.len())?;
        Ok(KStructure { dim, matrix })
    }

    /// `diag(1,…,1,−1,…,−1)` with `m` entries of each sign.
    pub fn standard(m: usize) -> Self {
        let dim = 2 * m;
        let mut matrix = vec![T::zero(); dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = if i < m { T::one() } else { -T::one() };
        }
        KStructure { dim, matrix }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn at(&self, i: usize, j: usize) -> T {
        self.matrix[i * self.dim + j]
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        check_dim(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| (0..self.dim).fold(T::zero(), |acc, j| acc + self.at(i, j) * v[j]))
            .collect())
    }

    /// `max |K² − I|`.
    pub fn involution_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                let sq = (0..n).fold(T::zero(), |acc, k| acc + self.at(i, k) * self.at(k, j));
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((sq - target).abs());
            }
        }
        worst
    }

    fn involution_tol(&self) -> T {
        let scale = self.matrix.iter().fold(T::one(), |acc, &x| acc.max(x.abs()));
        T::from_f64(1e-10).max(T::epsilon() * T::from_f64(64.0)) * scale * scale
    }

    /// Dimensions `(dim E₊, dim E₋)` of the eigenspaces, read off the trace.
    pub fn eigenspace_dims(&self) -> (usize, usize) {
        let trace = (0..self.dim).fold(T::zero(), |acc, i| acc + self.at(i, i));
        let t = trace.round().as_f64() as i64;
        let n = self.dim as i64;
        (((n + t) / 2) as usize, ((n - t) / 2) as usize)
    }

    /// Splits `v = v₊ + v₋` with `K v₊ = v₊`, `K v₋ = −v₋`, via
    /// `v± = (v ± Kv)/2`.
    pub fn k_split(&self, v: &[T]) -> Result<(Vec<T>, Vec<T>)> {
        let residual = self.involution_residual();
        if !(residual <= self.involution_tol()) {
            return Err(Error::NotInvolutive { residual: residual.as_f64() });
        }
        let kv = self.apply(v)?;
        let half = T::from_f64(0.5);
        let plus = v.iter().zip(&kv).map(|(&a, &b)| (a + b) * half).collect();
        let minus = v.iter().zip(&kv).map(|(&a, &b)| (a - b) * half).collect();
        Ok((plus, minus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eigenbasis_split() {
        let k = KStructure::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(k.k_split(&[3.0, 5.0]).unwrap(), (vec![3.0, 0.0], vec![0.0, 5.0]));
        assert_eq!(k.k_split(&[0.0, 0.0]).unwrap(), (vec![0.0, 0.0], vec![0.0, 0.0]));
    }

    #[test]
    fn swap_split() {
        let k = KStructure::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(k.k_split(&[1.0, 0.0]).unwrap(), (vec![0.5, 0.5], vec![0.5, -0.5]));
        assert_eq!(k.eigenspace_dims(), (1, 1));
    }

    #[test]
    fn rejects_non_involution() {
        let k = KStructure::new(2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(k.k_split(&[1.0, 1.0]), Err(Error::NotInvolutive { .. })));
        assert!(KStructure::new(3, vec![0.0; 9]).is_err());
        assert!(KStructure::<f64>::new(2, vec![0.0; 3]).is_err());
    }

    fn conjugated_structure(m: usize, entries: &[f64]) -> Option<KStructure<f64>> {
        // K = S D S⁻¹ with D the standard structure; S = I + small perturbation.
        let n = 2 * m;
        let s = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            entries[i * n + j] * 0.3 + if i == j { 1.0 } else { 0.0 }
        });
        let inv = s.clone().try_inverse()?;
        let d = nalgebra::DMatrix::from_fn(n, n, |i, j| {
            if i != j {
                0.0
            } else if i < m {
                1.0
            } else {
                -1.0
            }
        });
        let k = &s * d * inv;
        let data = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| k[(i, j)]).collect();
        KStructure::new(n, data).ok()
    }

    proptest! {
        #[test]
        fn split_reconstructs_and_lands_in_eigenspaces(
            entries in prop::collection::vec(-1.0f64..1.0, 16),
            v in prop::collection::vec(-10.0f64..10.0, 4),
        ) {
            let Some(k) = conjugated_structure(2, &entries) else { return Ok(()); };
            prop_assume!(k.involution_residual() < 1e-11);
            let (vp, vm) = k.k_split(&v).unwrap();
            let kvp = k.apply(&vp).unwrap();
            let kvm = k.apply(&vm).unwrap();
            for i in 0..4 {
                prop_assert!((vp[i] + vm[i] - v[i]).abs() <= 1e-12 * (1.0 + v[i].abs()));
                prop_assert!((kvp[i] - vp[i]).abs() <= 1e-9);
                prop_assert!((kvm[i] + vm[i]).abs() <= 1e-9);
            }
            prop_assert_eq!(k.eigenspace_dims(), (2, 2));
        }
    }
}
