//! Tight optimistic estimators.
//!
//! For an ascending multiset `q` each estimator returns `max { f(R) : R ⊆ q }`
//! for its class of objectives:
//!
//! * [`top_sequence_estimate`]: level-1 objectives `g(|Q|, c(Q))`; the
//!   maximum is attained on a suffix of `q` (the `i` largest values).
//! * [`median_sequence_estimate_general`]: median-based level-2 objectives;
//!   the maximum is attained on a consecutive segment `Q^k_z` of `q`, so all
//!   `O(m²)` segments are scanned.
//! * [`median_sequence_estimate_linear`]: objectives `g(dcc(Q), med(Q))`.
//!   The dcc-optimal size `k*_z` of a segment around median index `z` moves
//!   by at most 3 between consecutive `z`, so a window of at most seven sizes
//!   is checked per median index.
//! * [`brute_force_estimate`]: enumerates all `2^m` sub-multisets.
//!
//! Segment `Q^k_z` holds the `k` consecutive values
//! `y[z - floor((k-1)/2)] ..= y[z + ceil((k-1)/2)]` (1-based), whose lower
//! median is `y_z`; `k` ranges over `1..=m_z` with `m_z = min(2z, 2(m-z)+1)`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::Dd;
use crate::objectives::{dcc_from_scaled, dcc_scaled, CentralTendency, Objective};
use crate::stats::{median_index, Dispersion, SortedTargets};

/// Default size limit for the quadratic estimator.
pub const DEFAULT_GENERAL_CAP: usize = 5_000;
/// Default size limit for exhaustive subset enumeration.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;
/// Half-width of the candidate window in the linear-time estimator.
pub const WINDOW_RADIUS: usize = 3;

/// `m_z`: the largest size of a consecutive segment with median index `z`.
#[inline]
pub fn max_segment_size(m: usize, z: usize) -> usize {
    debug_assert!(1 <= z && z <= m);
    (2 * z).min(2 * (m - z) + 1)
}

/// 1-based bounds `(a, b)` of the segment `Q^k_z`.
#[inline]
pub fn segment_bounds(z: usize, k: usize) -> (usize, usize) {
    debug_assert!(k >= 1);
    (z - (k - 1) / 2, z + k / 2)
}

/// Per-median-index state of the linear-time scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MedianSequenceState {
    /// Median index, 1-based.
    pub z: usize,
    /// Smallest size maximizing the dispersion-corrected coverage among `Q^k_z`.
    pub k_star: usize,
    /// Objective value of `Q^{k*}_z`.
    pub best_value: f64,
    /// Candidate sizes that were examined.
    pub window: (usize, usize),
}

fn mismatch(estimator: &'static str, objective: &Objective) -> Error {
    Error::EstimatorMismatch {
        estimator,
        objective: objective.name().to_owned(),
    }
}

/// Maximum of a level-1 objective over the top sequence of `q`, in O(m).
pub fn top_sequence_estimate(objective: &Objective, q: &[f64]) -> Result<f64> {
    let tendency = match objective.tendency() {
        Some(t) if objective.level() == 1 => t,
        _ => return Err(mismatch("top_sequence", objective)),
    };
    let m = q.len();
    let mut best = 0.0f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in 1..=m {
        let c = match tendency {
            CentralTendency::Median => q[m - i + median_index(i)],
            CentralTendency::Mean => {
                let x = q[m - i];
                let t = sum + x;
                if sum.abs() >= x.abs() {
                    comp += (sum - t) + x;
                } else {
                    comp += (x - t) + sum;
                }
                sum = t;
                (sum + comp) / i as f64
            }
        };
        best = best.max(objective.evaluate_level1(i, c));
    }
    Ok(best)
}

/// Maximum of a median-based objective over all consecutive segments, in O(m²)
/// evaluations (O(1) each for smd/amd dispersions, O(k) otherwise).
pub fn median_sequence_estimate_general(
    objective: &Objective,
    q: &[f64],
    cap: usize,
) -> Result<f64> {
    if !objective.is_median_based() {
        return Err(mismatch("median_general", objective));
    }
    let m = q.len();
    if m > cap {
        return Err(Error::CapExceeded { size: m, cap });
    }
    if m == 0 {
        return Ok(0.0);
    }
    let st = SortedTargets::from_sorted(q.to_vec())?;
    let needs_segment_sum = objective
        .dispersion()
        .is_some_and(Dispersion::is_deviation_sum);
    let mut best = f64::NEG_INFINITY;
    for z in 1..=m {
        let yz = st.value(z);
        for k in 1..=max_segment_size(m, z) {
            let (a, b) = segment_bounds(z, k);
            let smd = if needs_segment_sum {
                st.segment_smd_dd(a, z, b).to_f64()
            } else {
                0.0
            };
            let v = objective.evaluate_parts(k, yz, smd, &q[a - 1..b]);
            best = best.max(v);
        }
    }
    Ok(best)
}

/// Linear-time maximum of an objective `g(dcc(Q), med(Q))` over the median sequence.
pub fn median_sequence_estimate_linear(objective: &Objective, q: &[f64]) -> Result<f64> {
    median_sequence_estimate_linear_with_radius(objective, q, WINDOW_RADIUS)
}

/// [`median_sequence_estimate_linear`] with a configurable window half-width.
///
/// Only radii of at least 3 are guaranteed to give the exact estimate; other
/// values exist for self-checks.
#[doc(hidden)]
pub fn median_sequence_estimate_linear_with_radius(
    objective: &Objective,
    q: &[f64],
    radius: usize,
) -> Result<f64> {
    if !objective.is_dcc_form() {
        return Err(mismatch("median_linear", objective));
    }
    if q.is_empty() {
        return Ok(0.0);
    }
    let st = SortedTargets::from_sorted(q.to_vec())?;
    let mut best = f64::NEG_INFINITY;
    scan_median_sequence(objective, &st, radius, |state| {
        best = best.max(state.best_value)
    });
    Ok(best)
}

/// The median sequence computed by the linear-time scan, ordered by descending `z`.
pub fn median_sequence(objective: &Objective, q: &[f64]) -> Result<Vec<MedianSequenceState>> {
    median_sequence_with_radius(objective, q, WINDOW_RADIUS)
}

/// [`median_sequence`] with a configurable window half-width.
#[doc(hidden)]
pub fn median_sequence_with_radius(
    objective: &Objective,
    q: &[f64],
    radius: usize,
) -> Result<Vec<MedianSequenceState>> {
    if !objective.is_dcc_form() {
        return Err(mismatch("median_linear", objective));
    }
    if q.is_empty() {
        return Ok(Vec::new());
    }
    let st = SortedTargets::from_sorted(q.to_vec())?;
    let mut out = Vec::with_capacity(q.len());
    scan_median_sequence(objective, &st, radius, |state| out.push(state));
    Ok(out)
}

fn scan_median_sequence(
    objective: &Objective,
    st: &SortedTargets,
    radius: usize,
    mut visit: impl FnMut(MedianSequenceState),
) {
    let global = objective.global();
    let m = st.len();
    // z = m admits only the singleton {y_m}
    let scaled = dcc_scaled(1, 0.0, global);
    let mut k_prev: usize = 1;
    visit(MedianSequenceState {
        z: m,
        k_star: 1,
        best_value: objective.evaluate_dcc_form(dcc_from_scaled(scaled, global), st.value(m)),
        window: (1, 1),
    });
    for z in (1..m).rev() {
        let lo = k_prev.saturating_sub(radius).max(1);
        let hi = max_segment_size(m, z).min(k_prev + radius);
        let mut best: Option<(Dd, usize)> = None;
        for k in lo..=hi {
            let (a, b) = segment_bounds(z, k);
            let smd = st.segment_smd_dd(a, z, b).to_f64();
            let s = dcc_scaled(k, smd, global);
            // strict improvement keeps the smallest maximizer
            if best.is_none_or(|(bs, _)| s.cmp(&bs) == Ordering::Greater) {
                best = Some((s, k));
            }
        }
        let (s, k_star) = best.expect("window is never empty");
        k_prev = k_star;
        visit(MedianSequenceState {
            z,
            k_star,
            best_value: objective.evaluate_dcc_form(dcc_from_scaled(s, global), st.value(z)),
            window: (lo, hi),
        });
    }
}

/// Exact maximum of `f` over all `2^m` sub-multisets of `q`.
pub fn brute_force_estimate(objective: &Objective, q: &[f64], cap: usize) -> Result<f64> {
    let m = q.len();
    if m > cap {
        return Err(Error::CapExceeded { size: m, cap });
    }
    let mut best = 0.0f64;
    let mut subset = Vec::with_capacity(m);
    for mask in 1u64..(1u64 << m) {
        subset.clear();
        subset.extend((0..m).filter(|i| mask & (1 << i) != 0).map(|i| q[i]));
        best = best.max(objective.evaluate(&subset));
    }
    Ok(best)
}

/// Estimator selection for branch-and-bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    /// Top-sequence estimate of the dominating level-1 objective.
    TopSequence,
    MedianGeneral,
    MedianLinear,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::TopSequence => "top_sequence",
            EstimatorKind::MedianGeneral => "median_general",
            EstimatorKind::MedianLinear => "median_linear",
        }
    }

    /// The tightest estimator available for `objective`.
    pub fn best_for(objective: &Objective) -> EstimatorKind {
        if objective.is_dcc_form() {
            EstimatorKind::MedianLinear
        } else if objective.level() == 1 {
            EstimatorKind::TopSequence
        } else {
            EstimatorKind::MedianGeneral
        }
    }
}

/// An estimator bound to an objective, ready to be applied to subgroups.
#[derive(Debug, Clone)]
pub struct Estimator {
    kind: EstimatorKind,
    objective: Objective,
    general_cap: usize,
}

impl Estimator {
    /// Checks that `kind` yields a valid optimistic estimator for `objective`.
    pub fn new(kind: EstimatorKind, objective: &Objective, general_cap: usize) -> Result<Self> {
        let objective = match kind {
            EstimatorKind::TopSequence => objective
                .dominating_level1()
                .ok_or_else(|| mismatch("top_sequence", objective))?,
            EstimatorKind::MedianGeneral if objective.is_median_based() => objective.clone(),
            EstimatorKind::MedianLinear if objective.is_dcc_form() => objective.clone(),
            _ => return Err(mismatch(kind.name(), objective)),
        };
        Ok(Estimator {
            kind,
            objective,
            general_cap,
        })
    }

    pub fn kind(&self) -> EstimatorKind {
        self.kind
    }

    /// Upper bound on the objective over all sub-multisets of the ascending `q`.
    pub fn estimate(&self, q: &[f64]) -> Result<f64> {
        match self.kind {
            EstimatorKind::TopSequence => top_sequence_estimate(&self.objective, q),
            EstimatorKind::MedianGeneral => {
                median_sequence_estimate_general(&self.objective, q, self.general_cap)
            }
            EstimatorKind::MedianLinear => median_sequence_estimate_linear(&self.objective, q),
        }
    }
}
