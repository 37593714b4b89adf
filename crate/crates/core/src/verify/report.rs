use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};

/// The tolerance table shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Exact (rational or bitwise) identities.
    pub exact: f64,
    /// Residuals built from closed-form derivatives.
    pub analytic: f64,
    /// Residuals involving finite differences.
    pub finite_difference: f64,
    /// Isometry defects of sign-flip maps.
    pub isometry: f64,
    /// Group-action and invariance defects under general collineations.
    pub invariance: f64,
    /// Distance of a geodesic from a submanifold that should contain it.
    pub containment: f64,
    /// Quotient-metric defects on the double cover.
    pub quotient: f64,
    /// Minimum residual a negative control must reach.
    pub separation: f64,
    /// Minimum curvature a curved control connection must show.
    pub curvature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: 0.0,
            analytic: 1e-8,
            finite_difference: 1e-5,
            isometry: 1e-12,
            invariance: 1e-10,
            containment: 1e-9,
            quotient: 1e-10,
            separation: 1e-2,
            curvature: 0.1,
        }
    }
}

impl Tolerances {
    pub fn with_overrides(mut self, overrides: &BTreeMap<String, f64>) -> Result<Self> {
        for (key, &value) in overrides {
            if !(value >= 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance `{key}` must be non-negative")));
            }
            let slot = match key.as_str() {
                "exact" => &mut self.exact,
                "analytic" => &mut self.analytic,
                "finite_difference" => &mut self.finite_difference,
                "isometry" => &mut self.isometry,
                "invariance" => &mut self.invariance,
                "containment" => &mut self.containment,
                "quotient" => &mut self.quotient,
                "separation" => &mut self.separation,
                "curvature" => &mut self.curvature,
                _ => return Err(Error::InvalidArgument(format!("unknown tolerance `{key}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    /// Worst residual must be `≤ tol`.
    Check,
    /// Smallest residual must be `≥ tol`; the property is violated on
    /// purpose.
    NegativeControl,
    /// A comparison reported for information and expected to exceed `tol`;
    /// it does not affect the suite verdict.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub kind: PropertyKind,
    /// Worst case over all cases: the largest residual for checks and
    /// discrepancies, the smallest for negative controls.
    pub max_residual: f64,
    pub tol: f64,
    pub cases: usize,
    pub pass: bool,
    /// The input that produced the worst residual, when it is on the wrong
    /// side of the tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Accumulates residuals for one property.
#[derive(Debug)]
pub(crate) struct Tracker {
    name: &'static str,
    kind: PropertyKind,
    tol: f64,
    worst: Option<f64>,
    witness: Option<String>,
    cases: usize,
}

impl Tracker {
    pub(crate) fn check(name: &'static str, tol: f64) -> Self {
        Self::new(name, PropertyKind::Check, tol)
    }

    pub(crate) fn control(name: &'static str, tol: f64) -> Self {
        Self::new(name, PropertyKind::NegativeControl, tol)
    }

    pub(crate) fn discrepancy(name: &'static str, tol: f64) -> Self {
        Self::new(name, PropertyKind::Discrepancy, tol)
    }

    fn new(name: &'static str, kind: PropertyKind, tol: f64) -> Self {
        Tracker { name, kind, tol, worst: None, witness: None, cases: 0 }
    }

    fn ok(&self, residual: f64) -> bool {
        match self.kind {
            PropertyKind::NegativeControl => residual >= self.tol,
            _ => residual <= self.tol,
        }
    }

    fn worse(&self, residual: f64, than: f64) -> bool {
        match self.kind {
            PropertyKind::NegativeControl => residual < than,
            _ => residual > than,
        }
    }

    /// Records one case. `input` is rendered only if the case becomes the
    /// failing worst case. NaN counts as a failure.
    pub(crate) fn record(&mut self, residual: f64, input: impl FnOnce() -> String) {
        self.cases += 1;
        let replace = match self.worst {
            None => true,
            Some(w) => residual.is_nan() && !w.is_nan() || !w.is_nan() && self.worse(residual, w),
        };
        if replace {
            self.worst = Some(residual);
            self.witness = if self.ok(residual) { None } else { Some(input()) };
        }
    }

    /// Records a computation that failed outright.
    pub(crate) fn record_error(&mut self, err: &Error, input: impl FnOnce() -> String) {
        self.record(f64::NAN, || format!("{} ({err})", input()));
    }

    pub(crate) fn finish(self) -> PropertyResult {
        let worst = self.worst.unwrap_or(0.0);
        let pass = self.cases > 0 && self.ok(worst);
        PropertyResult {
            name: self.name.to_string(),
            kind: self.kind,
            max_residual: worst,
            tol: self.tol,
            cases: self.cases,
            pass,
            witness: self.witness,
        }
    }
}

/// Result of one suite. Serializes to
/// `{suite, seed, cases, pass, tolerances, properties}`; the wall time is
/// kept out of the JSON so reports are byte-identical across runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub pass: bool,
    pub tolerances: Tolerances,
    pub properties: Vec<PropertyResult>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub(crate) fn new(
        suite: &str,
        seed: u64,
        tolerances: Tolerances,
        properties: Vec<PropertyResult>,
        wall_time: Duration,
    ) -> Self {
        let pass = properties.iter().all(|p| p.pass || p.kind == PropertyKind::Discrepancy);
        SuiteReport {
            suite: suite.to_string(),
            seed,
            cases: properties.iter().map(|p| p.cases).sum(),
            pass,
            tolerances,
            properties,
            wall_time,
        }
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
