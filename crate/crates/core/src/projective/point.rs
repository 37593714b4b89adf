use serde::{Deserialize, Serialize};

use super::{line_sine, normalize_first_nonzero};
use crate::error::{check_dim, Error, Result};
use crate::paracomplex::{PcVector, Sheet};
use crate::Pc;

/// Point of `ℭ𝒫ⁿ` in homogeneous coordinates.
///
/// Non-special points are stored with each sheet scaled so that its first
/// nonzero coordinate is `+1`; projective equality is then a componentwise
/// comparison. Special points (no coordinate invertible) keep their raw
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointJson", into = "PointJson")]
pub struct ProjectivePoint {
    coords: PcVector<f64>,
    special: bool,
}

/// Wire format `{"coords": [[x, y], ...]}` in the `x + εy` view.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: Vec<[f64; 2]>,
}

impl TryFrom<PointJson> for ProjectivePoint {
    type Error = Error;
    fn try_from(json: PointJson) -> Result<Self> {
        ProjectivePoint::from_xy(&json.coords.iter().map(|c| (c[0], c[1])).collect::<Vec<_>>())
    }
}

impl From<ProjectivePoint> for PointJson {
    fn from(p: ProjectivePoint) -> Self {
        PointJson { coords: p.coords.iter().map(|z| [z.x(), z.y()]).collect() }
    }
}

impl ProjectivePoint {
    pub fn new(coords: PcVector<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument("a projective point needs at least 2 coordinates".into()));
        }
        if coords.iter().any(|z| !(z.plus().is_finite() && z.minus().is_finite())) {
            return Err(Error::NonFinite);
        }
        if coords.iter().all(|z| z.plus() == 0.0 && z.minus() == 0.0) {
            return Err(Error::ZeroVector);
        }
        let special = !coords.iter().any(Pc::is_invertible);
        if special {
            return Ok(ProjectivePoint { coords, special });
        }
        let mut plus = coords.sheet(Sheet::Plus);
        let mut minus = coords.sheet(Sheet::Minus);
        if !(normalize_first_nonzero(&mut plus) && normalize_first_nonzero(&mut minus)) {
            return Ok(ProjectivePoint { coords, special: true });
        }
        Ok(ProjectivePoint { coords: PcVector::from_sheets(&plus, &minus)?, special })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(PcVector(coords.iter().map(|&(x, y)| Pc::new(x, y)).collect()))
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(PcVector::from_real(coords))
    }

    pub fn from_sheets(plus: &[f64], minus: &[f64]) -> Result<Self> {
        Self::new(PcVector::from_sheets(plus, minus)?)
    }

    pub fn coords(&self) -> &PcVector<f64> {
        &self.coords
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Projective dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn sheet(&self, sheet: Sheet) -> Vec<f64> {
        self.coords.sheet(sheet)
    }

    /// Projective equality checked sheetwise: the two representatives of
    /// each sheet must span the same line (sine of the angle ≤ `tol`).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.len() == other.len()
            && [Sheet::Plus, Sheet::Minus]
                .iter()
                .all(|&s| line_sine(&self.sheet(s), &other.sheet(s)) <= tol)
    }
}

/// A point of `ℝ𝒫ⁿ × ℝ𝒫ⁿ`, one real homogeneous vector per sheet.
#[derive(Debug, Clone, PartialEq)]
pub struct RealProjectivePair {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl RealProjectivePair {
    pub fn new(left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        check_dim(left.len(), right.len())?;
        if left.iter().all(|&x| x == 0.0) || right.iter().all(|&x| x == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(RealProjectivePair { left, right })
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.left.len() == other.left.len()
            && line_sine(&self.left, &other.left) <= tol
            && line_sine(&self.right, &other.right) <= tol
    }
}

/// Splits a point into its `(+)` and `(−)` sheets.
pub fn split_pair(p: &ProjectivePoint) -> Result<RealProjectivePair> {
    let mut left = p.sheet(Sheet::Plus);
    let mut right = p.sheet(Sheet::Minus);
    if !(normalize_first_nonzero(&mut left) && normalize_first_nonzero(&mut right)) {
        return Err(Error::SpecialPoint);
    }
    Ok(RealProjectivePair { left, right })
}

/// Inverse of [`split_pair`]: `Xⁱ = leftⁱ e₊ + rightⁱ e₋`.
pub fn join_pair(pair: &RealProjectivePair) -> Result<ProjectivePoint> {
    ProjectivePoint::from_sheets(&pair.left, &pair.right)
}
