//! Randomized comparisons of the fast algorithms against exhaustive references.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    brute_force_estimate, max_segment_size, median_sequence_estimate_general,
    median_sequence_estimate_linear_with_radius, median_sequence_with_radius, segment_bounds,
    top_sequence_estimate, WINDOW_RADIUS,
};
use crate::error::Result;
use crate::fixtures::random_instance;
use crate::lang::{closed_conjunctions_brute_force, closure, refine_ccj, Conjunction};
use crate::objectives::{GlobalStats, Objective, ObjectiveKind};
use crate::search::{exhaustive_optimum, Language, Search, SearchConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckParams {
    pub trials: usize,
    /// Largest multiset compared against subset enumeration.
    pub max_size: usize,
    /// Largest multiset in the linear-versus-quadratic comparison.
    pub window_max_size: usize,
    pub seed: u64,
    /// Window half-width handed to the linear estimator.
    pub window_radius: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            trials: 500,
            max_size: 12,
            window_max_size: 200,
            seed: 0,
            window_radius: WINDOW_RADIUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    /// First failing input, if any.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "pass  {} ({} trials)", self.name, self.trials),
            Some(c) => write!(f, "FAIL  {} after {} trials: {c}", self.name, self.trials),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

fn sorted_ints<R: Rng>(rng: &mut R, len: usize, max: i32) -> Vec<f64> {
    let mut v: Vec<f64> = (0..len)
        .map(|_| f64::from(rng.random_range(0..=max)))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Multiset `q` and a population containing it with positive deviation.
fn random_pair<R: Rng>(rng: &mut R, max_size: usize) -> (Vec<f64>, Vec<f64>) {
    loop {
        let m = rng.random_range(1..=max_size.max(1));
        let q = sorted_ints(rng, m, 30);
        let extra = rng.random_range(1..=10);
        let mut p = q.clone();
        p.extend(sorted_ints(rng, extra, 40));
        p.sort_by(f64::total_cmp);
        if GlobalStats::from_targets(&p).is_ok_and(|g| g.smd > 0.0) {
            return (q, p);
        }
    }
}

/// Smallest dcc-maximizing segment size per median index, in integer arithmetic.
fn smallest_dcc_maximizers(q: &[f64], p: &[f64]) -> Vec<usize> {
    let y: Vec<i64> = q.iter().map(|&v| v as i64).collect();
    let med_p = p[(p.len() - 1) / 2] as i64;
    let smd_p: i128 = p
        .iter()
        .map(|&v| i128::from((v as i64 - med_p).abs()))
        .sum();
    let n = p.len() as i128;
    let m = y.len();
    (1..=m)
        .map(|z| {
            let mut best = (i128::MIN, 0);
            for k in 1..=max_segment_size(m, z) {
                let (a, b) = segment_bounds(z, k);
                let smd: i128 = y[a - 1..b]
                    .iter()
                    .map(|v| i128::from((v - y[z - 1]).abs()))
                    .sum();
                let h = k as i128 * smd_p - n * smd;
                if h > best.0 {
                    best = (h, k);
                }
            }
            best.1
        })
        .collect()
}

fn objective(kind: ObjectiveKind, p: &[f64]) -> Result<Objective> {
    Objective::new(kind, GlobalStats::from_targets(p)?)
}

fn run_suite(
    name: &'static str,
    trials: usize,
    mut trial: impl FnMut() -> Result<Option<String>>,
) -> Result<SuiteResult> {
    for t in 0..trials {
        if let Some(c) = trial()? {
            return Ok(SuiteResult {
                name,
                trials: t + 1,
                counterexample: Some(c),
            });
        }
    }
    Ok(SuiteResult {
        name,
        trials,
        counterexample: None,
    })
}

/// Runs every suite with `params.trials` random cases each.
pub fn run_checks(params: &CheckParams) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut suites = Vec::new();
    let radius = params.window_radius;

    suites.push(run_suite(
        "median-sequence estimators vs subset enumeration",
        params.trials,
        || {
            let (q, p) = random_pair(&mut rng, params.max_size);
            for kind in [ObjectiveKind::DccMds, ObjectiveKind::Dcb] {
                let o = objective(kind, &p)?;
                let brute = brute_force_estimate(&o, &q, 20)?;
                let general = median_sequence_estimate_general(&o, &q, usize::MAX)?;
                let linear = median_sequence_estimate_linear_with_radius(&o, &q, radius)?;
                if brute != general || brute != linear {
                    return Ok(Some(format!(
                    "{}: q = {q:?}, P = {p:?}: brute {brute}, general {general}, linear {linear}",
                    o.name()
                )));
                }
            }
            Ok(None)
        },
    )?);

    suites.push(run_suite(
        "top-sequence estimator vs subset enumeration",
        params.trials,
        || {
            let (q, p) = random_pair(&mut rng, params.max_size);
            for kind in [ObjectiveKind::CovMds, ObjectiveKind::Impact] {
                let o = objective(kind, &p)?;
                let brute = brute_force_estimate(&o, &q, 20)?;
                let top = top_sequence_estimate(&o, &q)?;
                if brute != top {
                    return Ok(Some(format!(
                        "{}: q = {q:?}, P = {p:?}: brute {brute}, top {top}",
                        o.name()
                    )));
                }
            }
            Ok(None)
        },
    )?);

    suites.push(run_suite(
        "linear vs quadratic median-sequence estimator",
        params.trials,
        || {
            let (q, p) = random_pair(&mut rng, params.window_max_size);
            let o = objective(ObjectiveKind::DccMds, &p)?;
            let general = median_sequence_estimate_general(&o, &q, usize::MAX)?;
            let linear = median_sequence_estimate_linear_with_radius(&o, &q, radius)?;
            Ok((general != linear)
                .then(|| format!("q = {q:?}, P = {p:?}: general {general}, linear {linear}")))
        },
    )?);

    suites.push(run_suite(
        "median-sequence sizes vs exhaustive maximizers",
        params.trials,
        || {
            let (q, p) = random_pair(&mut rng, params.window_max_size.min(120));
            let o = objective(ObjectiveKind::DccMds, &p)?;
            let scanned = median_sequence_with_radius(&o, &q, radius)?;
            let expected = smallest_dcc_maximizers(&q, &p);
            for s in &scanned {
                if s.k_star != expected[s.z - 1] {
                    return Ok(Some(format!(
                        "q = {q:?}, P = {p:?}: size {} at median index {}, expected {}",
                        s.k_star,
                        s.z,
                        expected[s.z - 1]
                    )));
                }
            }
            Ok(None)
        },
    )?);

    suites.push(run_suite(
        "closed enumeration vs closure of all subsets",
        params.trials.div_ceil(10),
        || {
            let rows = rng.random_range(1..=12);
            let props = rng.random_range(0..=8);
            let (pool, _) = random_instance(&mut rng, rows, props, 1);
            let mut visited = Vec::new();
            let mut stack = vec![closure(&Conjunction::bottom(&pool), &pool)];
            while let Some(c) = stack.pop() {
                if !c.extension().is_empty() {
                    stack.extend(refine_ccj(&c, &pool)?);
                }
                visited.push(c.props().to_vec());
            }
            let mut expected: Vec<Vec<usize>> = closed_conjunctions_brute_force(&pool)?
                .into_iter()
                .map(|c| c.props().to_vec())
                .collect();
            visited.sort();
            expected.sort();
            Ok((visited != expected)
                .then(|| format!("pool {pool:?}: visited {visited:?}, expected {expected:?}")))
        },
    )?);

    suites.push(run_suite(
        "branch-and-bound vs exhaustive search",
        params.trials.div_ceil(10),
        || {
            let rows = rng.random_range(2..=20);
            let props = rng.random_range(0..=6);
            let (pool, y) = random_instance(&mut rng, rows, props, 9);
            let Ok(o) = objective(ObjectiveKind::DccMds, &y) else {
                return Ok(None);
            };
            for language in [Language::Cnj, Language::Ccj] {
                let exhaustive = exhaustive_optimum(&pool, &y, &o, language, None);
                let cfg = SearchConfig {
                    language,
                    ..SearchConfig::default()
                };
                let (res, _) = Search::new(&pool, &y, &o, cfg)?.run()?;
                if res[0].value != exhaustive {
                    return Ok(Some(format!(
                    "{language:?} on y = {y:?}, pool {pool:?}: search {}, exhaustive {exhaustive}",
                    res[0].value
                )));
                }
            }
            Ok(None)
        },
    )?);

    Ok(CheckReport {
        seed: params.seed,
        suites,
    })
}
