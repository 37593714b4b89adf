use std::fmt::Write as _;

use super::types::{Direction, ProbDist};
use crate::error::{check_dim, Error, Result};

/// Exponential tilt `p(s) = p₀ · exp(s q) / a(s)`, `a(s) = Σ p₀ exp(s q)`.
///
/// `q` is centered under `p₀` first (the path only depends on `q` modulo
/// constants) and `a(s)` is evaluated by log-sum-exp, so large `|s q|` does
/// not overflow. Masses that would underflow are floored at the smallest
/// normal `f64`, keeping the path in the open simplex.
pub fn simplex_geodesic(p0: &ProbDist, q: &Direction, s: f64) -> Result<ProbDist> {
    p0.require_interior()?;
    check_dim(p0.atoms(), q.len())?;
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    if s == 0.0 {
        return Ok(p0.clone());
    }
    let q = q.centered(p0)?;
    let logits: Vec<f64> =
        p0.probs().iter().zip(q.values()).map(|(p, v)| p.ln() + s * v).collect();
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    let p = logits.iter().map(|l| (l - lse).exp().max(f64::MIN_POSITIVE)).collect();
    Ok(ProbDist::from_raw(p))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub s: f64,
    pub p: ProbDist,
}

/// `steps + 1` samples at `s = k · s_max / steps`, `k = 0..=steps`.
pub fn geodesic_trace(p0: &ProbDist, q: &Direction, s_max: f64, steps: usize) -> Result<Vec<TraceRow>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    (0..=steps)
        .map(|k| {
            let s = s_max * k as f64 / steps as f64;
            Ok(TraceRow { s, p: simplex_geodesic(p0, q, s)? })
        })
        .collect()
}

/// Renders a trace as CSV with header `s,p_1,…,p_n` and 17 significant
/// digits per value.
pub fn trace_to_csv(rows: &[TraceRow]) -> String {
    let atoms = rows.first().map_or(0, |r| r.p.atoms());
    let mut out = String::from("s");
    for i in 1..=atoms {
        let _ = write!(out, ",p_{i}");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{:.16e}", row.s);
        for v in row.p.probs() {
            let _ = write!(out, ",{v:.16e}");
        }
        out.push('\n');
    }
    out
}

/// Parses the output of [`trace_to_csv`].
pub fn parse_trace_csv(text: &str) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty trace".into()))?;
    let cols = header.split(',').count();
    if !header.starts_with("s,") || cols < 3 {
        return Err(Error::Parse(format!("bad trace header `{header}`")));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let vals = line
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|_| Error::Parse(format!("bad number `{f}`"))))
                .collect::<Result<Vec<f64>>>()?;
            check_dim(cols, vals.len())?;
            Ok((vals[0], vals[1..].to_vec()))
        })
        .collect()
}
