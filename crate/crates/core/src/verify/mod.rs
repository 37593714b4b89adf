//! Seeded verification suites.
//!
//! Each suite checks one structural fact numerically over many random
//! instances and reports the worst residual per property against a
//! tolerance from a single table. Negative controls run alongside: inputs
//! that violate a hypothesis must produce a large residual, so a suite that
//! passes is known to be able to fail.

pub mod fd;
mod report;
mod submanifold;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

pub use report::{PropertyKind, PropertyResult, SuiteReport, Tolerances};
pub use submanifold::{totally_geodesic_check, PierceFixedSet, ProbeSet, SheetCouplingHyperplane, Shot};

use crate::error::{Error, Result};

/// Names accepted by [`run_suite`], in report order.
pub const SUITES: [&str; 7] = ["algebra", "causal", "cover", "flatness", "maurer_cartan", "metric_equivalence", "mirror"];

/// Runs one suite. `overrides` replaces entries of the tolerance table by
/// name (see [`Tolerances`]).
pub fn run_suite(name: &str, seed: u64, overrides: &BTreeMap<String, f64>) -> Result<SuiteReport> {
    let tol = Tolerances::default().with_overrides(overrides)?;
    let start = Instant::now();
    let properties = match name {
        "algebra" => suites::algebra(seed),
        "maurer_cartan" => suites::maurer_cartan(seed, &tol),
        "metric_equivalence" => suites::metric_equivalence(seed, &tol),
        "mirror" => suites::mirror(seed, &tol),
        "cover" => suites::cover(seed, &tol),
        "flatness" => suites::flatness(seed, &tol),
        "causal" => suites::causal(seed, &tol),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }?;
    Ok(SuiteReport::new(name, seed, tol, properties, start.elapsed()))
}

/// Runs every suite concurrently, one thread each, and returns the reports
/// ordered by suite name.
pub fn run_all(seed: u64, overrides: &BTreeMap<String, f64>) -> Result<Vec<SuiteReport>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES.iter().map(|name| scope.spawn(move || run_suite(name, seed, overrides))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}
