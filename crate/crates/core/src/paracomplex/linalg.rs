use std::ops::{Index, IndexMut};

use super::number::{Paracomplex, Sheet};
use crate::error::{check_dim, Result};
use crate::scalar::Scalar;

/// Column vector with paracomplex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PcVector<T>(pub Vec<Paracomplex<T>>);

impl<T: Scalar> PcVector<T> {
    pub fn new(entries: Vec<Paracomplex<T>>) -> Self {
        PcVector(entries)
    }

    /// Builds a vector from its two real sheets.
    pub fn from_sheets(plus: &[T], minus: &[T]) -> Result<Self> {
        check_dim(plus.len(), minus.len())?;
        Ok(PcVector(
            plus.iter().zip(minus).map(|(&p, &m)| Paracomplex::from_idempotent(p, m)).collect(),
        ))
    }

    pub fn from_real(v: &[T]) -> Self {
        PcVector(v.iter().map(|&x| Paracomplex::real(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Paracomplex<T>> {
        self.0.iter()
    }

    pub fn sheet(&self, sheet: Sheet) -> Vec<T> {
        self.0.iter().map(|z| z.sheet(sheet)).collect()
    }

    pub fn conj(&self) -> Self {
        PcVector(self.0.iter().map(Paracomplex::conj).collect())
    }

    pub fn scale(&self, k: Paracomplex<T>) -> Self {
        PcVector(self.0.iter().map(|&z| k * z).collect())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Paracomplex<T>, other: &Self, b: Paracomplex<T>) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(PcVector(self.0.iter().zip(&other.0).map(|(&u, &v)| a * u + b * v).collect()))
    }
}

impl<T> Index<usize> for PcVector<T> {
    type Output = Paracomplex<T>;
    fn index(&self, i: usize) -> &Paracomplex<T> {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for PcVector<T> {
    fn index_mut(&mut self, i: usize) -> &mut Paracomplex<T> {
        &mut self.0[i]
    }
}

/// `{u, v} = Σ ūⁱ vⁱ`.
///
/// The form is Hermitian (`{u,v}` is the conjugate of `{v,u}`) and `{u,u}`
/// is real, but it is indefinite: `{u,u} = Σ u₊ⁱ u₋ⁱ` vanishes on nonzero
/// zero-divisor vectors such as `(1, ε)`.
pub fn hermitian_inner<T: Scalar>(u: &PcVector<T>, v: &PcVector<T>) -> Result<Paracomplex<T>> {
    check_dim(u.len(), v.len())?;
    Ok(u.0.iter().zip(&v.0).map(|(a, &b)| a.conj() * b).sum())
}

/// Dense row-major paracomplex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Paracomplex<T>>,
}

impl<T: Scalar> PcMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<Paracomplex<T>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            check_dim(ncols, row.len())?;
            data.extend(row);
        }
        Ok(PcMatrix { rows: nrows, cols: ncols, data })
    }

    /// Builds a matrix from its two real sheets (row-major, equal shapes).
    pub fn from_sheets(plus: &[Vec<T>], minus: &[Vec<T>]) -> Result<Self> {
        check_dim(plus.len(), minus.len())?;
        let rows = plus
            .iter()
            .zip(minus)
            .map(|(p, m)| PcVector::from_sheets(p, m).map(|v| v.0))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn from_real(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_sheets(rows, rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Paracomplex::one(); n])
    }

    pub fn diagonal(diag: &[Paracomplex<T>]) -> Self {
        let n = diag.len();
        let mut data = vec![Paracomplex::zero(); n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        PcMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Paracomplex<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: Paracomplex<T>) {
        self.data[i * self.cols + j] = z;
    }

    /// Real matrix of one idempotent sheet, as rows.
    pub fn sheet(&self, sheet: Sheet) -> Vec<Vec<T>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).sheet(sheet)).collect())
            .collect()
    }

    pub fn conj(&self) -> Self {
        PcMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Paracomplex::conj).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        PcMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        check_dim(self.cols, rhs.rows)?;
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                data.push((0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum());
            }
        }
        Ok(PcMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &PcVector<T>) -> Result<PcVector<T>> {
        check_dim(self.cols, v.len())?;
        Ok(PcVector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|k| self.get(i, k) * v[k]).sum())
                .collect(),
        ))
    }

    /// Largest componentwise deviation from `other`, over both sheets.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        Ok(self.data.iter().zip(&other.data).fold(T::zero(), |acc, (a, b)| {
            let d = *a - *b;
            let m = if d.plus().abs() > d.minus().abs() { d.plus().abs() } else { d.minus().abs() };
            if m > acc {
                m
            } else {
                acc
            }
        }))
    }
}
