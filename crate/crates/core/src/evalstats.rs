//! Post-hoc evaluation of subgroups with an empirical Chebyshev lower
//! confidence bound.
//!
//! For a sample `Q` of size `m` with sample variance `var`, the mean of
//! unseen members exceeds `mean(Q) - ε(Q)` with probability at least `1 - δ`,
//! where `ε = sqrt((m² - 1) var / (m² δ - m))`. The bound needs `m ≥ 2` and
//! `m δ > 1`; the product is evaluated in floating point, so for decimal `δ`
//! such as 0.05 the size `m = 1/δ` itself is excluded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stats;

/// Default confidence parameter.
pub const DEFAULT_DELTA: f64 = 0.05;

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )))
    }
}

/// Whether the Chebyshev bound is defined for a sample of `m` values.
pub fn epsilon_defined(m: usize, delta: f64) -> bool {
    m >= 2 && m as f64 * delta > 1.0
}

/// `ε` from a size and a sample variance, or `None` when undefined.
pub fn chebyshev_epsilon_from(m: usize, variance: f64, delta: f64) -> Result<Option<f64>> {
    check_delta(delta)?;
    if !epsilon_defined(m, delta) {
        return Ok(None);
    }
    let mf = m as f64;
    let numerator = mf.mul_add(mf, -1.0) * variance;
    let denominator = (mf * mf).mul_add(delta, -mf);
    Ok(Some((numerator / denominator).sqrt()))
}

/// `ε(q)`, or `None` when `q` is too small for the given `delta`.
pub fn chebyshev_epsilon(q: &[f64], delta: f64) -> Result<Option<f64>> {
    check_delta(delta)?;
    match stats::sample_variance(q) {
        Some(var) => chebyshev_epsilon_from(q.len(), var, delta),
        None => Ok(None),
    }
}

/// Lower confidence bound of the population, used to standardize subgroup bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalLcb {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub epsilon: f64,
    pub lcb: f64,
    pub delta: f64,
}

impl GlobalLcb {
    pub fn from_targets(p: &[f64], delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let mean = stats::mean(p)?;
        let variance = stats::sample_variance(p)
            .filter(|v| *v > 0.0)
            .ok_or_else(|| Error::DegenerateTarget("target has zero variance".into()))?;
        let epsilon = chebyshev_epsilon_from(p.len(), variance, delta)?.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "population of {} rows is too small for delta = {delta}",
                p.len()
            ))
        })?;
        Ok(GlobalLcb {
            n: p.len(),
            mean,
            variance,
            epsilon,
            lcb: mean - epsilon,
            delta,
        })
    }

    /// `l(q)`: `mean(q) - ε(q)`, or the population bound when `ε(q)` is undefined.
    pub fn lcb(&self, q: &[f64]) -> Result<f64> {
        Ok(match chebyshev_epsilon(q, self.delta)? {
            Some(eps) => stats::mean(q)? - eps,
            None => self.lcb,
        })
    }

    /// `((l(q) - l(P)) / sqrt(var(P)))+`.
    pub fn score(&self, q: &[f64]) -> Result<f64> {
        Ok(((self.lcb(q)? - self.lcb) / self.variance.sqrt()).max(0.0))
    }
}

/// Standardized lower confidence bound score of `q` relative to `global`.
pub fn lcb_score(q: &[f64], global: &[f64], delta: f64) -> Result<f64> {
    GlobalLcb::from_targets(global, delta)?.score(q)
}

/// Summary statistics of one subgroup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub selector: String,
    pub value: f64,
    pub size: usize,
    pub coverage: f64,
    pub median: f64,
    pub amd: f64,
    pub mean: f64,
    pub variance: Option<f64>,
    pub epsilon: Option<f64>,
    /// Absent when the population itself admits no bound.
    pub lcb: Option<f64>,
    pub lcb_score: Option<f64>,
}

impl SubgroupReport {
    /// Report for the ascending, non-empty multiset `q`.
    pub fn new(
        selector: impl Into<String>,
        value: f64,
        q: &[f64],
        global: &GlobalLcb,
    ) -> Result<Self> {
        let mut report = Self::without_bound(selector, value, q, global.n, global.delta)?;
        report.lcb = Some(global.lcb(q)?);
        report.lcb_score = Some(global.score(q)?);
        Ok(report)
    }

    /// Report for a population of `n` rows too small or too uniform for a bound.
    pub fn without_bound(
        selector: impl Into<String>,
        value: f64,
        q: &[f64],
        n: usize,
        delta: f64,
    ) -> Result<Self> {
        Ok(SubgroupReport {
            selector: selector.into(),
            value,
            size: q.len(),
            coverage: q.len() as f64 / n as f64,
            median: stats::median(q)?,
            amd: stats::amd(q)?,
            mean: stats::mean(q)?,
            variance: stats::sample_variance(q),
            epsilon: chebyshev_epsilon(q, delta)?,
            lcb: None,
            lcb_score: None,
        })
    }
}
