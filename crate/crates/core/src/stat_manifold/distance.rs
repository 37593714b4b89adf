use super::types::ProbDist;
use crate::error::{check_dim, Result};
use crate::projective::ProjectivePoint;

/// `BC = Σ √(pᵢ p*ᵢ)`, capped at 1 against rounding.
pub fn bhattacharyya_affinity(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_dim(p.atoms(), q.atoms())?;
    let bc: f64 = p.probs().iter().zip(q.probs()).map(|(a, b)| (a * b).sqrt()).sum();
    Ok(bc.min(1.0))
}

/// Fisher–Rao distance `2 · arccos(BC)`: the great-circle distance between
/// `2√p` and `2√p*` on the sphere of radius 2.
pub fn fisher_rao_distance(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    Ok(2.0 * bhattacharyya_affinity(p, q)?.acos())
}

/// Real diagonal embedding `zᵢ = √pᵢ` into `ℭ𝒫ⁿ⁻¹` (both sheets equal).
pub fn embed_projective(p: &ProbDist) -> Result<ProjectivePoint> {
    p.require_interior()?;
    let roots: Vec<f64> = p.probs().iter().map(|v| v.sqrt()).collect();
    ProjectivePoint::from_real(&roots)
}
