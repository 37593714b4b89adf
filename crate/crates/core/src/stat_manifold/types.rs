use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// Tolerance on `Σ pᵢ = 1`.
pub const SUM_TOL: f64 = 1e-12;

/// Atoms of a finite measurable space, with the ideal already removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpace {
    atoms: usize,
    labels: Option<Vec<String>>,
}

impl SampleSpace {
    pub fn new(atoms: usize) -> Result<Self> {
        if atoms < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 atoms, got {atoms}")));
        }
        Ok(SampleSpace { atoms, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut space = Self::new(labels.len())?;
        space.labels = Some(labels);
        Ok(space)
    }

    /// Drops the atoms listed in `ideal` (null for every measure considered).
    pub fn without_ideal(total: usize, ideal: &[usize]) -> Result<Self> {
        if let Some(&bad) = ideal.iter().find(|&&i| i >= total) {
            return Err(Error::InvalidArgument(format!("ideal atom {bad} out of range")));
        }
        let kept = (0..total).filter(|i| !ideal.contains(i)).count();
        Self::new(kept)
    }

    pub fn atoms(&self) -> usize {
        self.atoms
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// Finite measure; an element of the positive cone when every weight is
/// strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure(Vec<f64>);

impl Measure {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Measure(weights))
    }

    /// Like [`Measure::new`] but requires cone membership.
    pub fn positive(weights: Vec<f64>) -> Result<Self> {
        let m = Self::new(weights)?;
        if !m.in_cone() {
            return Err(Error::NotInCone);
        }
        Ok(m)
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_cone(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&w| w > 0.0)
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn normalize(&self) -> Result<ProbDist> {
        if !self.in_cone() {
            return Err(Error::NotInCone);
        }
        let total = self.total();
        ProbDist::new(self.0.iter().map(|w| w / total).collect())
    }
}

/// Probability vector on the atoms. Zeros are allowed (closure of the
/// simplex) and reported by [`ProbDist::is_interior`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistJson", into = "DistJson")]
pub struct ProbDist(Vec<f64>);

/// Wire format `{"atoms": n, "p": [p₁, …, pₙ]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistJson {
    pub atoms: usize,
    pub p: Vec<f64>,
}

impl TryFrom<DistJson> for ProbDist {
    type Error = Error;
    fn try_from(json: DistJson) -> Result<Self> {
        check_dim(json.atoms, json.p.len())?;
        ProbDist::new(json.p)
    }
}

impl From<ProbDist> for DistJson {
    fn from(p: ProbDist) -> Self {
        DistJson { atoms: p.0.len(), p: p.0 }
    }
}

impl ProbDist {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.len() < 2 {
            return Err(Error::NotADistribution(format!("need at least 2 atoms, got {}", p.len())));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if let Some(v) = p.iter().find(|&&v| v < 0.0) {
            return Err(Error::NotADistribution(format!("negative mass {v}")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotADistribution(format!("masses sum to {sum}")));
        }
        Ok(ProbDist(p))
    }

    /// Uniform distribution on `atoms` atoms.
    pub fn uniform(atoms: usize) -> Result<Self> {
        Self::new(vec![1.0 / atoms as f64; atoms])
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn atoms(&self) -> usize {
        self.0.len()
    }

    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&v| v > 0.0)
    }

    pub fn require_interior(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::NotInterior)
        }
    }

    pub fn as_measure(&self) -> Measure {
        Measure(self.0.clone())
    }

    /// `E_p[f]`.
    pub fn expectation(&self, f: &[f64]) -> Result<f64> {
        check_dim(self.0.len(), f.len())?;
        Ok(self.0.iter().zip(f).map(|(p, v)| p * v).sum())
    }

    pub(crate) fn from_raw(p: Vec<f64>) -> Self {
        ProbDist(p)
    }
}

/// Covector of a one-parameter subgroup of cone automorphisms.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Direction(h))
    }

    pub fn zero(atoms: usize) -> Self {
        Direction(vec![0.0; atoms])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, s: f64) -> Direction {
        Direction(self.0.iter().map(|v| v * s).collect())
    }

    pub fn add(&self, other: &Direction) -> Result<Direction> {
        check_dim(self.len(), other.len())?;
        Ok(Direction(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Shift by a constant so that `E_p[q] = 0`. On the simplex, `q` and
    /// `q + c` generate the same geodesic; this picks the representative.
    pub fn centered(&self, p: &ProbDist) -> Result<Direction> {
        let mean = p.expectation(&self.0)?;
        Ok(Direction(self.0.iter().map(|v| v - mean).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_space() {
        assert!(SampleSpace::new(1).is_err());
        assert_eq!(SampleSpace::without_ideal(5, &[1, 3]).unwrap().atoms(), 3);
        assert!(SampleSpace::without_ideal(3, &[0, 1]).is_err());
        let s = SampleSpace::with_labels(vec!["heads".into(), "tails".into()]).unwrap();
        assert_eq!(s.labels().unwrap()[1], "tails");
    }

    #[test]
    fn distribution_validation() {
        assert!(ProbDist::new(vec![0.5, 0.5]).unwrap().is_interior());
        assert!(!ProbDist::new(vec![1.0, 0.0]).unwrap().is_interior());
        assert!(ProbDist::new(vec![0.5, 0.6]).is_err());
        assert!(ProbDist::new(vec![1.5, -0.5]).is_err());
        assert!(ProbDist::new(vec![1.0]).is_err());
        assert!(ProbDist::new(vec![0.1, 0.2, 0.3, 0.4]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let p: ProbDist = serde_json::from_str(r#"{"atoms": 3, "p": [0.2, 0.3, 0.5]}"#).unwrap();
        assert_eq!(p.probs(), &[0.2, 0.3, 0.5]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"atoms":3,"p":[0.2,0.3,0.5]}"#);
        assert!(serde_json::from_str::<ProbDist>(r#"{"atoms": 2, "p": [0.2, 0.3, 0.5]}"#).is_err());
    }

    #[test]
    fn centering() {
        let p = ProbDist::new(vec![0.25, 0.75]).unwrap();
        let q = Direction::new(vec![1.0, 3.0]).unwrap().centered(&p).unwrap();
        assert_eq!(q.values(), &[-1.5, 0.5]);
        assert_eq!(p.expectation(q.values()).unwrap(), 0.0);
    }

    #[test]
    fn measures() {
        assert!(Measure::positive(vec![1.0, 0.0]).is_err());
        let m = Measure::positive(vec![1.0, 3.0]).unwrap();
        assert_eq!(m.normalize().unwrap().probs(), &[0.25, 0.75]);
    }
}
