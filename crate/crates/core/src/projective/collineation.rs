use nalgebra::DMatrix;

use super::point::ProjectivePoint;
use crate::error::{check_dim, Error, Result};
use crate::paracomplex::{PcMatrix, PcVector, Sheet};
use crate::Pc;

/// Projective transformation `k X' = A X`, or `k X' = A X̄` when
/// `conjugating` (an anti-collineation).
#[derive(Debug, Clone, PartialEq)]
pub struct Collineation {
    matrix: PcMatrix<f64>,
    conjugating: bool,
}

fn sheet_matrix(m: &PcMatrix<f64>, sheet: Sheet) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).sheet(sheet))
}

impl Collineation {
    /// Both sheet matrices must be invertible.
    pub fn new(matrix: PcMatrix<f64>, conjugating: bool) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        for sheet in [Sheet::Plus, Sheet::Minus] {
            let m = sheet_matrix(&matrix, sheet);
            let scale = m.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            let det = m.clone().lu().determinant();
            if scale == 0.0 || det.abs() <= 1e-12 * scale.powi(m.nrows() as i32) {
                return Err(Error::SingularCollineation { sheet: sheet.name() });
            }
        }
        Ok(Collineation { matrix, conjugating })
    }

    pub fn identity(n_plus_one: usize) -> Self {
        Collineation { matrix: PcMatrix::identity(n_plus_one), conjugating: false }
    }

    pub fn matrix(&self) -> &PcMatrix<f64> {
        &self.matrix
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugating
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Collineation) -> Result<Collineation> {
        let inner = if self.conjugating { first.matrix.conj() } else { first.matrix.clone() };
        Ok(Collineation {
            matrix: self.matrix.mul(&inner)?,
            conjugating: self.conjugating ^ first.conjugating,
        })
    }

    pub fn apply(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        apply_collineation(self, p)
    }
}

pub fn apply_collineation(t: &Collineation, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    check_dim(t.matrix.cols(), p.len())?;
    let x = if t.conjugating { p.coords().conj() } else { p.coords().clone() };
    let image = t.matrix.mul_vec(&x)?;
    for sheet in [Sheet::Plus, Sheet::Minus] {
        if image.sheet(sheet).iter().all(|&c| c == 0.0) {
            return Err(Error::DegenerateImage);
        }
    }
    ProjectivePoint::new(image)
}

/// `Āᵀ A = I` within `tol`, componentwise on both sheets.
pub fn is_unitary(t: &Collineation, tol: f64) -> bool {
    let n = t.matrix.rows();
    t.matrix
        .conj_transpose()
        .mul(&t.matrix)
        .and_then(|g| g.max_abs_diff(&PcMatrix::identity(n)))
        .is_ok_and(|d| d <= tol)
}

/// `diag(1, …, 1, −1, …, −1)` negating the coordinates with index
/// greater than `split_index`.
pub fn pierce_collineation(n_plus_one: usize, split_index: usize) -> Result<Collineation> {
    if split_index >= n_plus_one {
        return Err(Error::InvalidArgument(format!(
            "split index {split_index} out of range for {n_plus_one} coordinates"
        )));
    }
    let diag: Vec<Pc> = (0..n_plus_one)
        .map(|i| if i > split_index { Pc::real(-1.0) } else { Pc::one() })
        .collect();
    Ok(Collineation { matrix: PcMatrix::diagonal(&diag), conjugating: false })
}

/// The mirror `(a, b) ↦ (a, −b)` with `a` the coordinates `0..=split_index`.
pub fn pierce_mirror(p: &ProjectivePoint, split_index: usize) -> Result<ProjectivePoint> {
    if split_index > p.dim() {
        return Err(Error::InvalidArgument(format!(
            "split index {split_index} exceeds projective dimension {}",
            p.dim()
        )));
    }
    let coords = p
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &z)| if i > split_index { -z } else { z })
        .collect();
    ProjectivePoint::new(PcVector(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xy: &[(f64, f64)]) -> ProjectivePoint {
        ProjectivePoint::from_xy(xy).unwrap()
    }

    #[test]
    fn identity_fixes_points() {
        let p = pt(&[(0.5, 0.25), (2.0, -1.0)]);
        assert_eq!(Collineation::identity(2).apply(&p).unwrap(), p);
    }

    #[test]
    fn sheetwise_diagonal_scaling() {
        let (k, l) = (3.0, -0.5);
        let a = PcMatrix::diagonal(&[Pc::from_idempotent(k, l), Pc::one()]);
        let t = Collineation::new(a, false).unwrap();
        let x = Pc::new(0.4, 1.1);
        let image = t.apply(&ProjectivePoint::new(PcVector(vec![x, Pc::one()])).unwrap()).unwrap();
        let expect = ProjectivePoint::new(PcVector(vec![Pc::from_idempotent(k, l) * x, Pc::one()])).unwrap();
        assert!(image.approx_eq(&expect, 1e-14));
        // Each sheet of the affine line moves by its own factor.
        let plus = image.sheet(Sheet::Plus);
        let minus = image.sheet(Sheet::Minus);
        assert!((plus[0] / plus[1] - k * x.plus()).abs() < 1e-14);
        assert!((minus[0] / minus[1] - l * x.minus()).abs() < 1e-14);
    }

    #[test]
    fn anti_collineation_swaps_sheets() {
        let t = Collineation::new(PcMatrix::identity(2), true).unwrap();
        let image = t.apply(&pt(&[(1.0, 0.0), (0.0, 1.0)])).unwrap();
        assert!(image.approx_eq(&pt(&[(1.0, 0.0), (0.0, -1.0)]), 1e-15));
    }

    #[test]
    fn singular_sheet_is_rejected() {
        let a = PcMatrix::diagonal(&[Pc::e_plus(), Pc::one()]);
        assert_eq!(Collineation::new(a, false), Err(Error::SingularCollineation { sheet: "minus" }));
    }

    #[test]
    fn unitarity() {
        assert!(is_unitary(&Collineation::identity(3), 1e-12));
        let d = PcMatrix::diagonal(&[Pc::new(1.0, 1.0), Pc::one()]);
        let t = Collineation { matrix: d, conjugating: false };
        assert!(!is_unitary(&t, 1e-12));
        let th = 0.7f64;
        let rot = PcMatrix::from_real(&[vec![th.cos(), -th.sin()], vec![th.sin(), th.cos()]]).unwrap();
        assert!(is_unitary(&Collineation::new(rot, false).unwrap(), 1e-12));
    }

    #[test]
    fn composition_follows_matrix_product() {
        let a = PcMatrix::from_rows(vec![
            vec![Pc::new(1.0, 0.5), Pc::new(0.2, -0.1)],
            vec![Pc::new(-0.3, 0.2), Pc::new(2.0, 0.7)],
        ])
        .unwrap();
        let b = PcMatrix::from_rows(vec![
            vec![Pc::new(0.5, -0.2), Pc::new(1.0, 0.3)],
            vec![Pc::new(1.5, 0.1), Pc::new(-0.4, 0.0)],
        ])
        .unwrap();
        let p = pt(&[(0.3, 0.9), (1.0, -0.2)]);
        for (ca, cb) in [(false, false), (true, false), (false, true), (true, true)] {
            let t1 = Collineation::new(a.clone(), ca).unwrap();
            let t2 = Collineation::new(b.clone(), cb).unwrap();
            let two_step = t2.apply(&t1.apply(&p).unwrap()).unwrap();
            let composed = t2.compose(&t1).unwrap().apply(&p).unwrap();
            assert!(two_step.approx_eq(&composed, 1e-12));
        }
    }

    #[test]
    fn pierce_examples() {
        let fixed = pt(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(pierce_mirror(&fixed, 0).unwrap(), fixed);
        let p = pierce_mirror(&pt(&[(1.0, 0.0), (1.0, 0.0)]), 0).unwrap();
        assert_eq!(p, pt(&[(1.0, 0.0), (-1.0, 0.0)]));
        assert!(pierce_mirror(&fixed, 2).is_err());
        let q = pt(&[(0.2, 0.5), (1.0, -0.3), (0.7, 0.1)]);
        assert!(pierce_mirror(&pierce_mirror(&q, 1).unwrap(), 1).unwrap().approx_eq(&q, 1e-15));
        assert!(is_unitary(&pierce_collineation(3, 1).unwrap(), 0.0));
    }
}
