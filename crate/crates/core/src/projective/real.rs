use super::point::RealProjectivePair;
use super::{dot, norm, SHEET_ZERO_TOL};
use crate::error::{check_dim, Error, Result};

/// Point of `ℝ𝒫ⁿ`, stored as the unit representative whose first nonzero
/// coordinate is positive. Antipodal vectors give bitwise equal points.
#[derive(Debug, Clone, PartialEq)]
pub struct RpPoint(Vec<f64>);

impl RpPoint {
    pub fn from_vector(v: &[f64]) -> Result<Self> {
        let n = norm(v);
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        let lead = v.iter().find(|x| x.abs() > SHEET_ZERO_TOL * n).copied().unwrap_or(1.0);
        let s = if lead < 0.0 { -1.0 } else { 1.0 };
        Ok(RpPoint(v.iter().map(|x| s * (x / n)).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Quotient distance `arccos |⟨a, b⟩|`, i.e. `min(θ, π − θ)`.
    pub fn distance(&self, other: &Self) -> f64 {
        dot(&self.0, &other.0).abs().min(1.0).acos()
    }
}

/// Great-circle distance between unit vectors.
pub fn sphere_distance(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b).clamp(-1.0, 1.0).acos()
}

fn check_unit(q: &[f64]) -> Result<()> {
    let n = norm(q);
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit { norm: n });
    }
    Ok(())
}

/// The covering `Sⁿ → ℝ𝒫ⁿ`: returns the class of `q` and the deck image `−q`.
pub fn double_cover(q: &[f64]) -> Result<(RpPoint, Vec<f64>)> {
    check_unit(q)?;
    Ok((RpPoint::from_vector(q)?, q.iter().map(|x| -x).collect()))
}

/// Tangent vector to `Sⁿ × Sⁿ` at a pair of unit representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPair {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl TangentPair {
    pub fn zero(len: usize) -> Self {
        TangentPair { left: vec![0.0; len], right: vec![0.0; len] }
    }
}

fn great_circle(q: &[f64], v: &[f64], t: f64) -> Result<Vec<f64>> {
    check_dim(q.len(), v.len())?;
    check_unit(q)?;
    let speed = norm(v);
    let residual = dot(q, v).abs();
    if residual > 1e-10 * (1.0 + speed) {
        return Err(Error::NotTangent { residual });
    }
    if speed == 0.0 {
        return Ok(q.to_vec());
    }
    let (c, s) = ((speed * t).cos(), (speed * t).sin());
    Ok(q.iter().zip(v).map(|(&qi, &vi)| qi * c + vi / speed * s).collect())
}

/// Product geodesic on `ℝ𝒫ⁿ × ℝ𝒫ⁿ`: an independent great circle on each
/// factor, `q(t) = q cos(|v|t) + (v/|v|) sin(|v|t)`, projected to `ℝ𝒫ⁿ`.
///
/// `start` must hold unit representatives; the result holds the canonical
/// unit representatives of [`RpPoint`].
pub fn geodesic_rpn_product(
    start: &RealProjectivePair,
    dir: &TangentPair,
    t: f64,
) -> Result<RealProjectivePair> {
    let left = RpPoint::from_vector(&great_circle(&start.left, &dir.left, t)?)?;
    let right = RpPoint::from_vector(&great_circle(&start.right, &dir.right, t)?)?;
    RealProjectivePair::new(left.into_vec(), right.into_vec())
}

/// Whether `ℝ𝒫ⁿ × ℝ𝒫ⁿ` is orientable: a product is orientable iff both
/// factors are, and `ℝ𝒫ⁿ` is orientable iff `n` is odd.
pub fn orientable(n: usize) -> bool {
    n % 2 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cover_examples() {
        let (class, deck) = double_cover(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(class.as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(deck, vec![-1.0, 0.0, 0.0]);
        let q = [0.6, -0.8, 0.0];
        let (a, d) = double_cover(&q).unwrap();
        assert_eq!(a, double_cover(&d).unwrap().0);
        assert!(matches!(double_cover(&[1.0, 1.0]), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn quotient_distance() {
        let a = [1.0, 0.0];
        let b = [-(0.3f64.cos()), 0.3f64.sin()];
        let theta = sphere_distance(&a, &b);
        let (pa, pb) = (RpPoint::from_vector(&a).unwrap(), RpPoint::from_vector(&b).unwrap());
        assert!((pa.distance(&pb) - theta.min(std::f64::consts::PI - theta)).abs() < 1e-15);
    }

    #[test]
    fn geodesic_examples() {
        let start = RealProjectivePair::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let still = geodesic_rpn_product(&start, &TangentPair::zero(2), 3.0).unwrap();
        assert!(still.approx_eq(&start, 0.0));
        let dir = TangentPair { left: vec![0.0, 1.0], right: vec![0.0, 0.0] };
        let end = geodesic_rpn_product(&start, &dir, FRAC_PI_2).unwrap();
        assert!(end.approx_eq(&RealProjectivePair::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap(), 1e-15));
        let bad = TangentPair { left: vec![1.0, 0.0], right: vec![0.0, 0.0] };
        assert!(matches!(geodesic_rpn_product(&start, &bad, 1.0), Err(Error::NotTangent { .. })));
    }

    #[test]
    fn orientability_parity() {
        assert!(!orientable(2));
        assert!(orientable(1));
        assert!(!orientable(4));
        assert!(orientable(3));
    }
}
