//! Objective functions on target multisets.
//!
//! Every median-based objective is evaluated from the triple
//! (size, median, sum of absolute deviations), so the evaluator and the
//! optimistic estimators in [`crate::bounds`] share one arithmetic path.

use std::fmt;
use std::sync::Arc;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Dd;
use crate::stats::{self, Dispersion};

/// Constants of the global population that objectives are normalized by.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalStats {
    pub n: usize,
    pub max: f64,
    pub mean: f64,
    pub median: f64,
    pub amd: f64,
    pub smd: f64,
}

impl GlobalStats {
    pub fn from_targets(targets: &[f64]) -> Result<Self> {
        let q = stats::build_sorted(targets)?;
        let values = q.values();
        let smd = stats::smd(values)?;
        Ok(GlobalStats {
            n: values.len(),
            max: values[values.len() - 1],
            mean: stats::mean(values)?,
            median: q.median(),
            amd: smd / values.len() as f64,
            smd,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralTendency {
    Mean,
    Median,
}

/// `g(size, central tendency)`, non-decreasing in both arguments.
pub type Level1Fn = Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>;
/// `g(size, median, dispersion)`, non-decreasing in size and non-increasing in dispersion.
pub type Level2Fn = Arc<dyn Fn(usize, f64, f64) -> f64 + Send + Sync>;
/// `g(dcc, median)`, non-decreasing in the dispersion-corrected coverage.
pub type DccFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum ObjectiveKind {
    /// Coverage times positive relative mean shift.
    Impact,
    /// `cov · mds+` (called f0).
    CovMds,
    /// `dcc · mds+` (called f1).
    DccMds,
    /// `sqrt(dcc) · (med(Q) - med(P))+`.
    Dcb,
    Level1 {
        name: String,
        tendency: CentralTendency,
        g: Level1Fn,
    },
    Level2 {
        name: String,
        dispersion: Dispersion,
        g: Level2Fn,
    },
    DccBased {
        name: String,
        g: DccFn,
    },
}

impl ObjectiveKind {
    pub fn name(&self) -> &str {
        match self {
            ObjectiveKind::Impact => "impact",
            ObjectiveKind::CovMds => "f0",
            ObjectiveKind::DccMds => "f1",
            ObjectiveKind::Dcb => "dcb",
            ObjectiveKind::Level1 { name, .. }
            | ObjectiveKind::Level2 { name, .. }
            | ObjectiveKind::DccBased { name, .. } => name,
        }
    }
}

impl fmt::Debug for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coverage `size / n`.
pub fn cov(size: usize, global: &GlobalStats) -> f64 {
    size as f64 / global.n as f64
}

/// Impact: `cov(Q) · ((mean(Q) - mean(P)) / (max(P) - mean(P)))+`; 0 when `max(P) = mean(P)`.
pub fn ipa(q: &[f64], global: &GlobalStats) -> f64 {
    if q.is_empty() {
        return 0.0;
    }
    let mean = stats::mean(q).unwrap_or(global.mean);
    cov(q.len(), global) * mean_shift(mean, global)
}

fn mean_shift(mean: f64, global: &GlobalStats) -> f64 {
    let span = global.max - global.mean;
    if span <= 0.0 {
        return 0.0;
    }
    ((mean - global.mean) / span).max(0.0)
}

/// Positive relative median shift `((med(Q) - med(P)) / (max(P) - med(P)))+`.
pub fn mds_plus(median: f64, global: &GlobalStats) -> f64 {
    let span = global.max - global.median;
    if span <= 0.0 {
        return 0.0;
    }
    ((median - global.median) / span).max(0.0)
}

/// `size · smd(P) - n · smd(Q)`, the dispersion-corrected coverage scaled by `n · smd(P)`.
#[inline]
pub(crate) fn dcc_scaled(size: usize, smd: f64, global: &GlobalStats) -> Dd {
    Dd::mul_f64(size as f64, global.smd) - Dd::mul_f64(global.n as f64, smd)
}

#[inline]
pub(crate) fn dcc_from_scaled(scaled: Dd, global: &GlobalStats) -> f64 {
    (scaled.to_f64() / (global.n as f64 * global.smd)).max(0.0)
}

/// Dispersion-corrected coverage `(size / n - smd(Q) / smd(P))+`.
pub fn dcc(size: usize, smd: f64, global: &GlobalStats) -> f64 {
    if global.smd <= 0.0 {
        return 0.0;
    }
    dcc_from_scaled(dcc_scaled(size, smd, global), global)
}

/// An objective bound to the global statistics of a population.
#[derive(Clone, Debug)]
pub struct Objective {
    kind: ObjectiveKind,
    global: GlobalStats,
}

impl Objective {
    /// Validates the objective against the population.
    ///
    /// Objectives built on dispersion-corrected coverage need `smd(P) > 0`
    /// and fail with [`Error::DegenerateTarget`] otherwise. Degenerate shift
    /// normalizers (`max(P) = med(P)` or `max(P) = mean(P)`) only warn; the
    /// shift is then identically 0.
    pub fn new(kind: ObjectiveKind, global: GlobalStats) -> Result<Self> {
        if global.n == 0 {
            return Err(Error::EmptyInput);
        }
        let uses_dcc = matches!(
            kind,
            ObjectiveKind::DccMds | ObjectiveKind::Dcb | ObjectiveKind::DccBased { .. }
        );
        if uses_dcc && global.smd <= 0.0 {
            return Err(Error::DegenerateTarget(format!(
                "objective `{}` needs a target with positive deviation from its median",
                kind.name()
            )));
        }
        match kind {
            ObjectiveKind::Impact if global.max <= global.mean => {
                warn!("max(P) equals mean(P); impact is identically 0")
            }
            ObjectiveKind::CovMds | ObjectiveKind::DccMds if global.max <= global.median => {
                warn!("max(P) equals med(P); median shift is identically 0")
            }
            _ => {}
        }
        Ok(Objective { kind, global })
    }

    pub fn kind(&self) -> &ObjectiveKind {
        &self.kind
    }

    pub fn global(&self) -> &GlobalStats {
        &self.global
    }

    pub fn name(&self) -> &str {
        self.kind.name()
    }

    /// 1 for functions of (size, central tendency), 2 for dispersion-aware ones.
    pub fn level(&self) -> u8 {
        match self.kind {
            ObjectiveKind::Impact | ObjectiveKind::CovMds | ObjectiveKind::Level1 { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn tendency(&self) -> Option<CentralTendency> {
        match &self.kind {
            ObjectiveKind::Impact => Some(CentralTendency::Mean),
            ObjectiveKind::CovMds => Some(CentralTendency::Median),
            ObjectiveKind::Level1 { tendency, .. } => Some(*tendency),
            _ => None,
        }
    }

    /// Whether the objective depends only on size, median and a dispersion
    /// around the median, so that the median sequence contains a maximizer.
    pub fn is_median_based(&self) -> bool {
        !matches!(self.tendency(), Some(CentralTendency::Mean))
    }

    /// Whether the objective has the form `g(dcc(Q), med(Q))`.
    pub fn is_dcc_form(&self) -> bool {
        matches!(
            self.kind,
            ObjectiveKind::DccMds | ObjectiveKind::Dcb | ObjectiveKind::DccBased { .. }
        )
    }

    /// The dispersion measure the objective reads, if any.
    pub fn dispersion(&self) -> Option<Dispersion> {
        match &self.kind {
            ObjectiveKind::DccMds | ObjectiveKind::Dcb | ObjectiveKind::DccBased { .. } => {
                Some(Dispersion::Smd)
            }
            ObjectiveKind::Level2 { dispersion, .. } => Some(*dispersion),
            _ => None,
        }
    }

    /// A level-1 objective that is pointwise at least this one, usable with
    /// the top-sequence estimator.
    pub fn dominating_level1(&self) -> Option<Objective> {
        let kind = match &self.kind {
            ObjectiveKind::Impact | ObjectiveKind::CovMds | ObjectiveKind::Level1 { .. } => {
                self.kind.clone()
            }
            ObjectiveKind::DccMds => ObjectiveKind::CovMds,
            ObjectiveKind::Dcb => {
                let global = self.global;
                ObjectiveKind::Level1 {
                    name: "sqrt(cov)*shift".into(),
                    tendency: CentralTendency::Median,
                    g: Arc::new(move |size, med| {
                        cov(size, &global).sqrt() * (med - global.median).max(0.0)
                    }),
                }
            }
            ObjectiveKind::Level2 { .. } | ObjectiveKind::DccBased { .. } => return None,
        };
        Some(Objective {
            kind,
            global: self.global,
        })
    }

    /// Objective value of an ascending multiset; 0 for the empty set.
    pub fn evaluate(&self, q: &[f64]) -> f64 {
        if q.is_empty() {
            return 0.0;
        }
        let med = q[stats::median_index(q.len())];
        let smd = match self.dispersion() {
            Some(Dispersion::Smd | Dispersion::Amd) => stats::smd(q).unwrap_or(0.0),
            _ => 0.0,
        };
        self.evaluate_parts(q.len(), med, smd, q)
    }

    /// Objective value from precomputed size, median and deviation sum.
    ///
    /// `q` is the ascending multiset itself; it is only read by mean-based
    /// objectives and by dispersions other than smd/amd.
    pub(crate) fn evaluate_parts(&self, size: usize, median: f64, smd: f64, q: &[f64]) -> f64 {
        if size == 0 {
            return 0.0;
        }
        let g = &self.global;
        match &self.kind {
            ObjectiveKind::Impact => ipa(q, g),
            ObjectiveKind::CovMds => cov(size, g) * mds_plus(median, g),
            ObjectiveKind::DccMds => dcc(size, smd, g) * mds_plus(median, g),
            ObjectiveKind::Dcb => dcc(size, smd, g).sqrt() * (median - g.median).max(0.0),
            ObjectiveKind::Level1 { tendency, g: f, .. } => {
                let c = match tendency {
                    CentralTendency::Median => median,
                    CentralTendency::Mean => stats::mean(q).unwrap_or(0.0),
                };
                f(size, c)
            }
            ObjectiveKind::Level2 {
                dispersion, g: f, ..
            } => {
                let d = match dispersion {
                    Dispersion::Smd => smd,
                    Dispersion::Amd => smd / size as f64,
                    other => other.compute(q).unwrap_or(0.0),
                };
                f(size, median, d)
            }
            ObjectiveKind::DccBased { g: f, .. } => f(dcc(size, smd, g), median),
        }
    }

    /// `g(size, c)` for level-1 objectives, with `c` the objective's central tendency.
    #[inline]
    pub(crate) fn evaluate_level1(&self, size: usize, tendency_value: f64) -> f64 {
        let g = &self.global;
        match &self.kind {
            ObjectiveKind::Impact => cov(size, g) * mean_shift(tendency_value, g),
            ObjectiveKind::CovMds => cov(size, g) * mds_plus(tendency_value, g),
            ObjectiveKind::Level1 { g: f, .. } => f(size, tendency_value),
            _ => unreachable!("not a level-1 objective"),
        }
    }

    /// `g(dcc, median)` for objectives of dcc form.
    #[inline]
    pub(crate) fn evaluate_dcc_form(&self, dcc: f64, median: f64) -> f64 {
        let g = &self.global;
        match &self.kind {
            ObjectiveKind::DccMds => dcc * mds_plus(median, g),
            ObjectiveKind::Dcb => dcc.sqrt() * (median - g.median).max(0.0),
            ObjectiveKind::DccBased { g: f, .. } => f(dcc, median),
            _ => unreachable!("not a dcc-form objective"),
        }
    }
}
