//! The paracomplex projective space `ℭ𝒫ⁿ`.
//!
//! A point is a nonzero paracomplex vector modulo invertible paracomplex
//! scalars. Since an invertible scalar rescales the two idempotent sheets
//! independently, a point with both sheets nonzero is the same thing as a
//! pair of real projective points, and `ℭ𝒫ⁿ` away from its special points
//! is `ℝ𝒫ⁿ × ℝ𝒫ⁿ`. Most operations here are computed sheet by sheet.

mod collineation;
mod metric;
mod point;
mod real;

pub use collineation::{apply_collineation, is_unitary, pierce_collineation, pierce_mirror, Collineation};
pub use metric::{
    cross_ratio, cross_ratio_distance, hermitian_cos2, hermitian_distance, hyperquadric_eval,
    ClampedDistance, Hyperquadric,
};
pub use point::{join_pair, split_pair, PointJson, ProjectivePoint, RealProjectivePair};
pub use real::{
    double_cover, geodesic_rpn_product, orientable, sphere_distance, RpPoint, TangentPair,
};

/// Relative threshold below which a sheet coordinate counts as zero.
pub(crate) const SHEET_ZERO_TOL: f64 = 1e-12;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Scales `v` so its first non-negligible entry is `+1`. Returns `false` for
/// a zero vector.
pub(crate) fn normalize_first_nonzero(v: &mut [f64]) -> bool {
    let scale = max_abs(v);
    if scale == 0.0 || !scale.is_finite() {
        return false;
    }
    let Some(&lead) = v.iter().find(|x| x.abs() > SHEET_ZERO_TOL * scale) else {
        return false;
    };
    for x in v.iter_mut() {
        *x /= lead;
    }
    true
}

/// `|a ∧ b| / (|a||b|)`, the sine of the angle between two lines.
pub(crate) fn line_sine(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let mut wedge = 0.0;
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let w = a[i] * b[j] - a[j] * b[i];
            wedge += w * w;
        }
    }
    wedge.sqrt() / (na * nb)
}
