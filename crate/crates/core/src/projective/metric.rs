use serde::Serialize;

use super::point::ProjectivePoint;
use super::{dot, norm};
use crate::error::{check_dim, Error, Result};
use crate::paracomplex::{hermitian_inner, PcMatrix, PcVector, Sheet};
use crate::Pc;

/// Relative threshold for a vanishing Hermitian norm `{x,x}`.
const NULL_NORM_TOL: f64 = 1e-12;

fn sheet_scale(x: &PcVector<f64>) -> f64 {
    x.iter().map(|z| z.plus() * z.plus() + z.minus() * z.minus()).sum::<f64>() * 0.5
}

fn checked_norm(x: &PcVector<f64>, value: Pc) -> Result<f64> {
    let n = value.x();
    if n.abs() <= NULL_NORM_TOL * sheet_scale(x) {
        return Err(Error::NullNorm);
    }
    Ok(n)
}

/// `{x,y}{y,x} / ({x,x}{y,y})`, before any clamping.
pub fn hermitian_cos2(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    let (u, v) = (x.coords(), y.coords());
    let uu = checked_norm(u, hermitian_inner(u, u)?)?;
    let vv = checked_norm(v, hermitian_inner(v, v)?)?;
    let uv = hermitian_inner(u, v)?;
    // {x,y}{y,x} = {x,y} times its conjugate = uv₊ uv₋, a real number.
    Ok(uv.norm() / (uu * vv))
}

fn distance_from_cos2(cos2: f64, radius: f64) -> ClampedDistance {
    let clamped = cos2.clamp(0.0, 1.0);
    ClampedDistance {
        value: radius * clamped.sqrt().acos(),
        cos2,
        clamp: clamped - cos2,
    }
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")))
    }
}

/// `ω = r · arccos √(clamp₀¹({x,y}{y,x} / ({x,x}{y,y})))`.
pub fn hermitian_distance(x: &ProjectivePoint, y: &ProjectivePoint, radius: f64) -> Result<f64> {
    check_radius(radius)?;
    Ok(distance_from_cos2(hermitian_cos2(x, y)?, radius).value)
}

/// A distance whose cosine-squared argument was clamped into `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClampedDistance {
    pub value: f64,
    /// Raw cosine-squared before clamping.
    pub cos2: f64,
    /// `clamped − raw`; zero when the argument was already in range.
    pub clamp: f64,
}

/// Hermitian hyperquadric `x̄ᵀ Q x + c = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperquadric {
    q: PcMatrix<f64>,
    c: f64,
}

impl Hyperquadric {
    pub fn new(q: PcMatrix<f64>, c: f64) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::DimensionMismatch { expected: q.rows(), found: q.cols() });
        }
        let scale = (0..q.rows())
            .flat_map(|i| (0..q.cols()).map(move |j| (i, j)))
            .fold(0.0f64, |m, (i, j)| m.max(q.get(i, j).plus().abs()).max(q.get(i, j).minus().abs()));
        if q.max_abs_diff(&q.conj_transpose())? > 1e-12 * (1.0 + scale) {
            return Err(Error::NotHermitian);
        }
        Ok(Hyperquadric { q, c })
    }

    /// The absolute `Σ x̄ⁱxⁱ = 0`.
    pub fn identity(n_plus_one: usize) -> Self {
        Hyperquadric { q: PcMatrix::identity(n_plus_one), c: 0.0 }
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn size(&self) -> usize {
        self.q.rows()
    }

    pub fn matrix(&self) -> &PcMatrix<f64> {
        &self.q
    }

    pub fn constant(&self) -> f64 {
        self.c
    }

    /// `x̄ᵀ Q y`.
    pub fn form(&self, x: &PcVector<f64>, y: &PcVector<f64>) -> Result<Pc> {
        hermitian_inner(x, &self.q.mul_vec(y)?)
    }
}

/// Real value of `x̄Qx + c` at the canonical normalization of `p`.
///
/// Only the zero set is invariant under rescaling; the sign at the canonical
/// normalization labels the two complementary domains.
pub fn hyperquadric_eval(q: &Hyperquadric, p: &ProjectivePoint) -> Result<f64> {
    check_dim(q.size(), p.len())?;
    Ok(q.form(p.coords(), p.coords())?.x() + q.c)
}

/// Homogeneous coordinates `(α, β)` of `c ≈ α a + β b` on one sheet,
/// through an orthonormal basis of the line so that nearly coincident
/// `a`, `b` stay well conditioned.
fn line_coordinates(a: &[f64], b: &[f64], c: &[f64], sheet: Sheet) -> Result<(f64, f64)> {
    let na = norm(a);
    let e1: Vec<f64> = a.iter().map(|x| x / na).collect();
    let b1 = dot(&e1, b);
    let w: Vec<f64> = b.iter().zip(&e1).map(|(x, e)| x - b1 * e).collect();
    let nw = norm(&w);
    if !(nw > 1e-12 * norm(b)) {
        return Err(Error::DegenerateConfiguration("first two points coincide on a sheet"));
    }
    let e2: Vec<f64> = w.iter().map(|x| x / nw).collect();
    let c1 = dot(&e1, c);
    let c2 = dot(&e2, c);
    let residual = c
        .iter()
        .zip(e1.iter().zip(&e2))
        .map(|(&ci, (&u, &v))| (ci - c1 * u - c2 * v).powi(2))
        .sum::<f64>()
        .sqrt();
    let scale = norm(c);
    if residual > 1e-10 * scale {
        return Err(Error::NotCollinear { sheet: sheet.name(), residual: residual / scale });
    }
    let beta = c2 / nw;
    let alpha = (c1 - beta * b1) / na;
    Ok((alpha, beta))
}

/// Cross ratio `((t_a − t_c)(t_b − t_d)) / ((t_a − t_d)(t_b − t_c))` of four
/// collinear points, computed sheetwise on homogeneous line parameters.
pub fn cross_ratio(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    d: &ProjectivePoint,
) -> Result<Pc> {
    for p in [b, c, d] {
        check_dim(a.len(), p.len())?;
    }
    let mut parts = [0.0; 2];
    for (slot, sheet) in parts.iter_mut().zip([Sheet::Plus, Sheet::Minus]) {
        let (va, vb) = (a.sheet(sheet), b.sheet(sheet));
        // With a = (1,0) and b = (0,1) on the line, t = β/α and the cross
        // ratio reduces to t_c / t_d = (β_c α_d) / (α_c β_d).
        let (ac, bc) = line_coordinates(&va, &vb, &c.sheet(sheet), sheet)?;
        let (ad, bd) = line_coordinates(&va, &vb, &d.sheet(sheet), sheet)?;
        let den = ac * bd;
        if den.abs() <= 1e-12 * (ac.abs() + bc.abs()) * (ad.abs() + bd.abs()) {
            return Err(Error::DegenerateConfiguration("cross-ratio denominator vanishes"));
        }
        *slot = bc * ad / den;
    }
    Ok(Pc::from_idempotent(parts[0], parts[1]))
}

/// Distance through the cross ratio of `X`, `Y` and the points `α`, `β`
/// where the line `XY` meets the polar hyperplanes of `Y` and `X` with
/// respect to the absolute `x̄Qx = 0`: `cos²(δ/r) = (XY, αβ)`.
///
/// The constant of `q` is ignored; only the matrix defines the polarity.
pub fn cross_ratio_distance(
    x: &ProjectivePoint,
    y: &ProjectivePoint,
    q: &Hyperquadric,
    radius: f64,
) -> Result<ClampedDistance> {
    check_radius(radius)?;
    check_dim(q.size(), x.len())?;
    check_dim(q.size(), y.len())?;
    let (u, v) = (x.coords(), y.coords());
    let uu = q.form(u, u)?;
    let vv = q.form(v, v)?;
    checked_norm(u, uu)?;
    checked_norm(v, vv)?;
    if x.approx_eq(y, 1e-15) {
        return Ok(distance_from_cos2(1.0, radius));
    }
    let uv = q.form(u, v)?;
    let vu = q.form(v, u)?;
    // α on the polar of Y: {y, α} = 0; β on the polar of X: {x, β} = 0.
    let alpha = u.combine(vv, v, -vu)?;
    let beta = u.combine(uv, v, -uu)?;
    for sheet in [Sheet::Plus, Sheet::Minus] {
        let scale = norm(&u.sheet(sheet)).max(norm(&v.sheet(sheet)))
            * (vv.x().abs() + vu.sheet(sheet).abs() + uv.sheet(sheet).abs() + uu.x().abs());
        for w in [&alpha, &beta] {
            if norm(&w.sheet(sheet)) <= 1e-14 * scale {
                return Err(Error::LineMissesQuadric { sheet: sheet.name() });
            }
        }
    }
    let alpha = ProjectivePoint::new(alpha)?;
    let beta = ProjectivePoint::new(beta)?;
    let cr = cross_ratio(x, y, &alpha, &beta)?;
    Ok(distance_from_cos2(cr.x(), radius))
}
