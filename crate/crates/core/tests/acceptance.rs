//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! Run with `cargo test --release --test acceptance`.

mod common;

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{Frac, Pop};
use subdisc::bounds::{
    brute_force_estimate, max_segment_size, median_sequence, median_sequence_estimate_general,
    median_sequence_estimate_linear, top_sequence_estimate, EstimatorKind,
};
use subdisc::dataset::{build_propositions, load_csv, Binning, PropositionPool};
use subdisc::evalstats::{chebyshev_epsilon, GlobalLcb};
use subdisc::fixtures::{bundled_fixtures, dispersion_contrast_table, planted_table};
use subdisc::lang::{closure, refine_ccj, Conjunction};
use subdisc::objectives::{GlobalStats, Objective, ObjectiveKind};
use subdisc::rowset::RowSet;
use subdisc::search::{Language, Search, SearchConfig};
use subdisc::stats::{self, SortedTargets};

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn to_f64s(v: &[i64]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

fn sorted_ints(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.random_range(lo..=hi)).collect();
    v.sort();
    v
}

/// Random multiset `q` and a population containing it with positive deviation.
fn int_pair(rng: &mut ChaCha8Rng, m_lo: usize, m_hi: usize) -> (Vec<i64>, Vec<i64>) {
    loop {
        let hi = *[3, 10, 30, 100, 1000].get(rng.random_range(0..5)).unwrap();
        let m = rng.random_range(m_lo..=m_hi);
        let q = sorted_ints(rng, m, 0, hi);
        let mut p = q.clone();
        let extra = rng.random_range(1..=3 * m_hi.min(40));
        p.extend(sorted_ints(rng, extra, -hi / 2, hi + hi / 3));
        p.sort();
        if Pop::new(&p).smd > 0 {
            return (q, p);
        }
    }
}

fn real_pair(rng: &mut ChaCha8Rng, m_hi: usize) -> (Vec<f64>, Vec<f64>) {
    let scale = 10f64.powi(rng.random_range(-3..4));
    let mut gen = |len: usize| {
        let mut v: Vec<f64> = (0..len).map(|_| rng.random::<f64>() * scale).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let m = 1 + (gen(1)[0] / scale * m_hi as f64) as usize % m_hi;
    let q = gen(m);
    let mut p = q.clone();
    p.extend(gen(m + 5));
    p.sort_by(f64::total_cmp);
    (q, p)
}

fn objective(kind: ObjectiveKind, p: &[f64]) -> Objective {
    Objective::new(kind, GlobalStats::from_targets(p).unwrap()).unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || a == b
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let trials = 10_000;
    let mut library = Duration::ZERO;
    for _ in 0..trials {
        let (qi, pi) = int_pair(&mut rng, 1, 16);
        let (q, p) = (to_f64s(&qi), to_f64s(&pi));
        let o = objective(ObjectiveKind::DccMds, &p);
        let t = Instant::now();
        let linear = median_sequence_estimate_linear(&o, &q).unwrap();
        let general = median_sequence_estimate_general(&o, &q, 5000).unwrap();
        let brute = brute_force_estimate(&o, &q, 20).unwrap();
        library += t.elapsed();
        let pop = Pop::new(&pi);
        let exact = common::best_subset(&qi, |s| common::f1(s, &pop));
        // the library's value must be the correctly rounded product of two correctly rounded factors
        if linear != general
            || linear != brute
            || !rel_close(linear, exact.to_f64(), 4.0 * f64::EPSILON)
        {
            return Outcome::Fail(format!(
                "integer q = {qi:?}, P = {pi:?}: linear {linear}, general {general}, brute {brute}, exact {}",
                exact.to_f64()
            ));
        }
        // the exact maximizer value is attained by one of the library's candidates
        if exact == Frac::ZERO && linear != 0.0 {
            return Outcome::Fail(format!(
                "q = {qi:?}, P = {pi:?}: exact optimum 0, library {linear}"
            ));
        }
    }
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (q, p) = real_pair(&mut rng, 16);
        let o = objective(ObjectiveKind::DccMds, &p);
        let t = Instant::now();
        let linear = median_sequence_estimate_linear(&o, &q).unwrap();
        let general = median_sequence_estimate_general(&o, &q, 5000).unwrap();
        let brute = brute_force_estimate(&o, &q, 20).unwrap();
        library += t.elapsed();
        let reference = common::real::best_subset(&q, |s| common::real::f1(s, &p));
        for v in [linear, general, brute] {
            if !rel_close(v, reference, 1e-9) {
                return Outcome::Fail(format!(
                    "real q = {q:?}, P = {p:?}: {linear} {general} {brute} vs {reference}"
                ));
            }
            if reference > 0.0 {
                worst = worst.max((v - reference).abs() / reference);
            }
        }
    }
    verdict(
        library < Duration::from_secs(60),
        format!(
            "{trials} integer + {trials} real multisets, m in [1,16]; integer: linear = general = brute bitwise and within 4 ulp of the exact rational optimum; real: max rel. deviation {worst:.1e} <= 1e-9; estimators {:.1}s < 60s (oracle time excluded)",
            library.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let trials = 10_000;
    let mut library = Duration::ZERO;
    for _ in 0..trials {
        let (qi, pi) = int_pair(&mut rng, 1, 16);
        let (q, p) = (to_f64s(&qi), to_f64s(&pi));
        let pop = Pop::new(&pi);
        for (kind, exact_fn) in [
            (
                ObjectiveKind::CovMds,
                common::f0 as fn(&[i64], &Pop) -> Frac,
            ),
            (ObjectiveKind::Impact, common::impact),
        ] {
            let o = objective(kind, &p);
            let t = Instant::now();
            let top = top_sequence_estimate(&o, &q).unwrap();
            let brute = brute_force_estimate(&o, &q, 20).unwrap();
            library += t.elapsed();
            let exact = common::best_subset(&qi, |s| exact_fn(s, &pop)).to_f64();
            // a mean shift cancels, so rounding is measured against the magnitude of the targets
            let magnitude = pi.iter().map(|v| v.abs()).max().unwrap() as f64;
            let close = rel_close(top, exact, 8.0 * f64::EPSILON)
                || (top - exact).abs() <= 8.0 * f64::EPSILON * magnitude;
            if top != brute || !close {
                return Outcome::Fail(format!(
                    "{}: q = {qi:?}, P = {pi:?}: top {top}, brute {brute}, exact {exact}",
                    o.name()
                ));
            }
        }
    }
    verdict(
        library < Duration::from_secs(60),
        format!(
            "{trials} integer multisets, m in [1,16], f0 and impact: top sequence = brute force bitwise, within 8 ulp (of the target magnitude for mean shifts) of the exact rational optimum; estimators {:.1}s < 60s (oracle time excluded)",
            library.as_secs_f64()
        ),
    )
}

/// `n * smd(P) * h_z(k)` for all valid `(z, k)`, using prefix sums; `h[z][0] = 0`.
fn scaled_h_table(y: &[i64], pop: &Pop) -> Vec<Vec<i128>> {
    let m = y.len();
    let mut prefix = vec![0i128; m + 1];
    for i in 0..m {
        prefix[i + 1] = prefix[i] + i128::from(y[i]);
    }
    let sum = |a: usize, b: usize| prefix[b] - prefix[a - 1]; // 1-based inclusive
    let mut table = vec![Vec::new(); m + 1];
    for z in 1..=m {
        let yz = i128::from(y[z - 1]);
        let mz = max_segment_size(m, z);
        let mut row = vec![0i128; mz + 1];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let (a, b) = (z - (k - 1) / 2, z + k / 2);
            let left = yz * (z - a) as i128 - if a < z { sum(a, z - 1) } else { 0 };
            let right = if b > z { sum(z + 1, b) } else { 0 } - yz * (b - z) as i128;
            *slot = k as i128 * pop.smd - pop.n * (left + right);
        }
        table[z] = row;
    }
    table
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let trials = 1_000;
    let mut max_jump = 0;
    let mut total_steps = 0usize;
    for t in 0..trials {
        let (y, p) = int_pair(&mut rng, 2, 500);
        let pop = Pop::new(&p);
        let h = scaled_h_table(&y, &pop);
        let m = y.len();
        let k_star: Vec<usize> = (1..=m)
            .map(|z| {
                let row = &h[z];
                let best = row[1..].iter().max().unwrap();
                row[1..].iter().position(|v| v == best).unwrap() + 1
            })
            .collect();
        for z in 1..m {
            let jump = k_star[z - 1].abs_diff(k_star[z]);
            max_jump = max_jump.max(jump);
            total_steps += 1;
            if jump > 3 {
                return Outcome::Fail(format!(
                    "trial {t}: |k*_{z} - k*_{}| = {jump} for y = {y:?}",
                    z + 1
                ));
            }
        }
        if t % 10 == 0 {
            // the library's scan reports the same optimal sizes
            let o = objective(ObjectiveKind::DccMds, &to_f64s(&p));
            for s in median_sequence(&o, &to_f64s(&y)).unwrap() {
                if s.k_star != k_star[s.z - 1] {
                    return Outcome::Fail(format!(
                        "library size {} != exhaustive {} at z = {}",
                        s.k_star,
                        k_star[s.z - 1],
                        s.z
                    ));
                }
            }
        }
    }
    Outcome::Pass(format!(
        "{trials} integer multisets, m in [2,500]: {total_steps} consecutive pairs, largest |k*_z - k*_(z+1)| = {max_jump} <= 3, 0 violations"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let trials = 1_000;
    let (mut alternations, mut smoothed, mut link, mut segments) = (0usize, 0usize, 0usize, 0usize);
    for t in 0..trials {
        let (y, p) = int_pair(&mut rng, 2, 60);
        let pop = Pop::new(&p);
        let h = scaled_h_table(&y, &pop);
        let m = y.len();
        let gain = |z: usize, k: usize| h[z][k] - h[z][k - 1];
        for z in 1..=m {
            let mz = max_segment_size(m, z);
            for k in 3..=mz {
                alternations += 1;
                if gain(z, k) > gain(z, k - 2) {
                    return Outcome::Fail(format!(
                        "trial {t}: alternating concavity fails at z={z}, k={k}, y={y:?}"
                    ));
                }
            }
            for k in 2..mz {
                smoothed += 1;
                if gain(z, k) + gain(z, k - 1) < gain(z, k + 1) + gain(z, k) {
                    return Outcome::Fail(format!(
                        "trial {t}: smoothed concavity fails at z={z}, k={k}, y={y:?}"
                    ));
                }
            }
            if z >= 2 {
                for k in 4..=max_segment_size(m, z - 1).min(mz) {
                    link += 1;
                    let upper =
                        gain(z - 1, k - 2) + gain(z - 1, k - 3) >= gain(z, k) + gain(z, k - 1);
                    let lower =
                        gain(z - 1, k) + gain(z - 1, k - 1) <= gain(z, k - 2) + gain(z, k - 3);
                    if !(upper && lower) {
                        return Outcome::Fail(format!(
                            "trial {t}: gain link fails at z={z}, k={k}, y={y:?}"
                        ));
                    }
                }
            }
        }
        let st = SortedTargets::from_sorted(to_f64s(&y)).unwrap();
        for _ in 0..20 {
            let z = rng.random_range(1..=m);
            let a = rng.random_range(1..=z);
            let b = rng.random_range(z..=m);
            let direct: i64 = y[a - 1..b].iter().map(|v| (v - y[z - 1]).abs()).sum();
            segments += 1;
            if st.segment_smd(a, z, b).unwrap() != direct as f64 {
                return Outcome::Fail(format!(
                    "segment identity fails for y={y:?}, (a,z,b)=({a},{z},{b})"
                ));
            }
        }
    }
    Outcome::Pass(format!(
        "{trials} integer multisets, exact arithmetic: {alternations} alternation, {smoothed} smoothed-concavity, {link} gain-link and {segments} segment-identity checks, 0 violations"
    ))
}

struct Instance {
    rows: usize,
    exts: Vec<Vec<bool>>,
    y: Vec<i64>,
}

impl Instance {
    fn random(rng: &mut ChaCha8Rng) -> Instance {
        loop {
            let rows = rng.random_range(2..=30);
            let props = rng.random_range(0..=10);
            let exts: Vec<Vec<bool>> = (0..props)
                .map(|_| {
                    let d = rng.random_range(0.2..0.95);
                    (0..rows).map(|_| rng.random_bool(d)).collect()
                })
                .collect();
            let hi = rng.random_range(1..=20);
            let y: Vec<i64> = (0..rows).map(|_| rng.random_range(0..=hi)).collect();
            if Pop::new(&y).smd > 0 {
                return Instance { rows, exts, y };
            }
        }
    }

    fn pool(&self) -> PropositionPool {
        let props = self
            .exts
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (
                    format!("p{}", i + 1),
                    RowSet::from_predicate(self.rows, |r| e[r]),
                )
            })
            .collect();
        PropositionPool::from_extensions(self.rows, props).unwrap()
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let trials = 150;
    let start = Instant::now();
    let mut searches = 0;
    for t in 0..trials {
        let inst = Instance::random(&mut rng);
        let pool = inst.pool();
        let y = to_f64s(&inst.y);
        let pop = Pop::new(&inst.y);
        let extensions = common::all_extensions(&inst.exts, inst.rows);
        for (kind, exact_fn) in [
            (
                ObjectiveKind::DccMds,
                common::f1 as fn(&[i64], &Pop) -> Frac,
            ),
            (ObjectiveKind::CovMds, common::f0),
        ] {
            let o = objective(kind, &y);
            let optimum = extensions
                .iter()
                .map(|e| exact_fn(&common::select(e, &inst.y), &pop))
                .max()
                .unwrap();
            for language in [Language::Ccj, Language::Cnj] {
                for a in [1.0, 0.3, 0.5, 0.8] {
                    let cfg = SearchConfig {
                        approximation: a,
                        language,
                        ..SearchConfig::default()
                    };
                    let (res, trace) = Search::new(&pool, &y, &o, cfg).unwrap().run().unwrap();
                    searches += 1;
                    let ext: Vec<bool> = (0..inst.rows)
                        .map(|r| res[0].selector.extension().contains(r))
                        .collect();
                    let found = exact_fn(&common::select(&ext, &inst.y), &pop);
                    let a_num = (a * 10.0).round() as i128;
                    let ok = if a == 1.0 {
                        found == optimum
                    } else {
                        found.num * 10 * optimum.den >= a_num * optimum.num * found.den
                    };
                    if !ok || !trace.complete {
                        return Outcome::Fail(format!(
                            "trial {t}, {} {language:?} a={a}: found {} vs optimum {}",
                            o.name(),
                            found.to_f64(),
                            optimum.to_f64()
                        ));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        elapsed < Duration::from_secs(120),
        format!(
            "{trials} random instances (<= 30 rows, <= 10 propositions), {searches} searches: a = 1 optimum equals exhaustive enumeration for f1 and f0 over closed and all conjunctions; a in {{0.3, 0.5, 0.8}} within factor; {:.1}s < 120s",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let trials = 60;
    let mut total = 0;
    for t in 0..trials {
        let rows = rng.random_range(1..=24);
        let props = rng.random_range(0..=12);
        let exts: Vec<Vec<bool>> = (0..props)
            .map(|_| {
                let d = rng.random_range(0.3..0.95);
                (0..rows).map(|_| rng.random_bool(d)).collect()
            })
            .collect();
        let inst = Instance {
            rows,
            exts,
            y: vec![0; rows],
        };
        let pool = inst.pool();
        let mut visited = Vec::new();
        let mut stack = vec![closure(&Conjunction::bottom(&pool), &pool)];
        while let Some(c) = stack.pop() {
            if !c.extension().is_empty() {
                stack.extend(refine_ccj(&c, &pool).unwrap());
            }
            visited.push(c.props().to_vec());
        }
        let n_visited = visited.len();
        visited.sort();
        visited.dedup();
        let expected = common::closed_sets(&inst.exts, rows);
        total += expected.len();
        if visited.len() != n_visited {
            return Outcome::Fail(format!("trial {t}: a closed conjunction was visited twice"));
        }
        if visited != expected {
            return Outcome::Fail(format!(
                "trial {t}: visited {visited:?}, expected {expected:?}"
            ));
        }
    }
    Outcome::Pass(format!(
        "{trials} random pools with <= 12 propositions: {total} closed conjunctions, each visited exactly once"
    ))
}

fn median_time(q: &[f64], o: &Objective, runs: usize) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let start = Instant::now();
            let v = median_sequence_estimate_linear(o, q).unwrap();
            std::hint::black_box(v);
            start.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let big: usize = 1_000_000;
    let mut q: Vec<f64> = (0..big).map(|_| rng.random::<f64>() * 100.0).collect();
    q.sort_by(f64::total_cmp);
    let mut p = q.clone();
    p.extend((0..1000).map(|i| i as f64 * 0.01));
    p.sort_by(f64::total_cmp);
    let o = objective(ObjectiveKind::DccMds, &p);
    let small: Vec<f64> = q.iter().step_by(10).copied().collect();
    median_time(&small, &o, 1);
    median_time(&q, &o, 1);
    let t_small = median_time(&small, &o, 5);
    let t_big = median_time(&q, &o, 5);
    let ratio = t_big.as_secs_f64() / t_small.as_secs_f64();
    verdict(
        ratio <= 15.0 && t_big < Duration::from_secs(1),
        format!(
            "median of 5 runs: m = 1e5 {:.1} ms, m = 1e6 {:.1} ms, ratio {ratio:.2} <= 15, 1e6 under 1 s",
            t_small.as_secs_f64() * 1e3,
            t_big.as_secs_f64() * 1e3
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, spec) in bundled_fixtures() {
        let table = planted_table(&spec).unwrap();
        let pool = build_propositions(&table, 5, Binning::EqualFrequency).unwrap();
        let o = objective(ObjectiveKind::DccMds, table.target());
        let run = |est| {
            let cfg = SearchConfig {
                estimator: Some(est),
                ..SearchConfig::default()
            };
            Search::new(&pool, table.target(), &o, cfg)
                .unwrap()
                .run()
                .unwrap()
        };
        let (r0, t0) = run(EstimatorKind::TopSequence);
        let (r1, t1) = run(EstimatorKind::MedianLinear);
        let fine = r0[0].value == r1[0].value
            && t1.nodes_expanded <= t0.nodes_expanded
            && t0.complete
            && t1.complete;
        ok &= fine;
        lines.push(format!(
            "{name}: {} vs {}{}",
            t1.nodes_expanded,
            t0.nodes_expanded,
            if fine { "" } else { " (!)" }
        ));
    }
    verdict(
        ok,
        format!("5 planted fixtures, f1 over closed conjunctions, equal optima; expanded nodes tight vs top-sequence bound: {}", lines.join(", ")),
    )
}

fn criterion_9() -> Outcome {
    let candidates = [
        std::env::var_os("ABALONE_CSV").map(PathBuf::from),
        Some(PathBuf::from(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/data/abalone.csv"
        ))),
    ];
    let Some(path) = candidates.into_iter().flatten().find(|p| p.exists()) else {
        return Outcome::Skip(
            "abalone data not available offline; set ABALONE_CSV to a CSV with a `Rings` column"
                .into(),
        );
    };
    let mut loaded = None;
    for target in ["Rings", "rings"] {
        if let Ok(t) = load_csv(&path, target, &HashMap::new()) {
            loaded = Some(t.0);
            break;
        }
    }
    let Some(table) = loaded else {
        return Outcome::Fail(format!("{} has no `Rings` column", path.display()));
    };
    let g = GlobalStats::from_targets(table.target()).unwrap();
    verdict(
        table.rows() == 4177 && g.median == 9.0 && (g.amd - 2.359).abs() <= 0.001,
        format!(
            "{} rows, med(P) = {}, amd(P) = {:.4} (expected 4177, 9, 2.359 +- 0.001)",
            table.rows(),
            g.median,
            g.amd
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for seed in 0..5 {
        let table = dispersion_contrast_table(seed).unwrap();
        let pool = build_propositions(&table, 4, Binning::EqualFrequency).unwrap();
        let amd_of = |kind| {
            let o = objective(kind, table.target());
            let (res, _) = Search::new(&pool, table.target(), &o, SearchConfig::default())
                .unwrap()
                .run()
                .unwrap();
            stats::amd(&res[0].selector.extension().sorted_values(table.target())).unwrap()
        };
        let (a0, a1) = (amd_of(ObjectiveKind::CovMds), amd_of(ObjectiveKind::DccMds));
        ok &= a1 < a0;
        lines.push(format!("seed {seed}: {a1:.3} < {a0:.3}"));
    }
    verdict(
        ok,
        format!(
            "amd of f1 optimum below amd of f0 optimum on the two-group fixture: {}",
            lines.join(", ")
        ),
    )
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn exact_variance(q: &[f64]) -> BigRational {
    let n = BigRational::from_integer(BigInt::from(q.len()));
    let mean = q
        .iter()
        .map(|&v| rational(v))
        .fold(BigRational::zero(), |a, b| a + b)
        / &n;
    let ss = q
        .iter()
        .map(|&v| {
            let d = rational(v) - &mean;
            &d * &d
        })
        .fold(BigRational::zero(), |a, b| a + b);
    ss / (n - BigRational::from_integer(BigInt::from(1)))
}

fn exact_mean(q: &[f64]) -> BigRational {
    q.iter()
        .map(|&v| rational(v))
        .fold(BigRational::zero(), |a, b| a + b)
        / BigRational::from_integer(BigInt::from(q.len()))
}

/// `ε` from exact variance and radicand, rounded once before the square root.
fn oracle_epsilon(q: &[f64], delta: f64) -> Option<f64> {
    let m = q.len();
    if m < 2 || m as f64 * delta <= 1.0 {
        return None;
    }
    let mr = BigRational::from_integer(BigInt::from(m));
    let one = BigRational::from_integer(BigInt::from(1));
    let radicand = (&mr * &mr - &one) * exact_variance(q) / (&mr * &mr * rational(delta) - &mr);
    Some(radicand.to_f64().unwrap().sqrt())
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let trials = 1_000;
    let deltas = [0.01, 0.02, 0.05, 0.1, 0.125, 0.2, 0.25, 0.5];
    let mut worst = 0.0f64;
    let mut defined = 0;
    for t in 0..trials {
        let n = rng.random_range(120..400);
        let scale = 10f64.powi(rng.random_range(-2..4));
        let p: Vec<f64> = (0..n)
            .map(|_| (rng.random::<f64>() * scale * 100.0).round() / 100.0)
            .collect();
        let mut q: Vec<f64> = p.iter().copied().filter(|_| rng.random_bool(0.3)).collect();
        q.push(p[0] + scale);
        q.sort_by(f64::total_cmp);
        let delta = deltas[rng.random_range(0..deltas.len())];

        let eps = chebyshev_epsilon(&q, delta).unwrap();
        let eps_ref = oracle_epsilon(&q, delta);
        match (eps, eps_ref) {
            (None, None) => {}
            (Some(a), Some(b)) if rel_close(a, b, 1e-9) => {
                defined += 1;
                if b > 0.0 {
                    worst = worst.max((a - b).abs() / b);
                }
            }
            _ => return Outcome::Fail(format!("trial {t}: epsilon {eps:?} vs oracle {eps_ref:?}")),
        }

        let global = GlobalLcb::from_targets(&p, delta).unwrap();
        let score = global.score(&q).unwrap();
        let eps_p = oracle_epsilon(&p, delta).unwrap();
        let var_p = exact_variance(&p).to_f64().unwrap();
        let l_p = exact_mean(&p).to_f64().unwrap() - eps_p;
        let l_q = match eps_ref {
            Some(e) => exact_mean(&q).to_f64().unwrap() - e,
            None => l_p,
        };
        let score_ref = ((l_q - l_p) / var_p.sqrt()).max(0.0);
        if !rel_close(score, score_ref, 1e-9) {
            return Outcome::Fail(format!("trial {t}: score {score} vs oracle {score_ref}"));
        }
        if score_ref > 0.0 {
            worst = worst.max((score - score_ref).abs() / score_ref);
        }
    }
    // boundary m = 1/delta exactly for decimal delta
    let mut boundary = 0;
    for (delta, inv) in [
        (0.05, 20usize),
        (0.1, 10),
        (0.02, 50),
        (0.01, 100),
        (0.2, 5),
        (0.25, 4),
        (0.5, 2),
        (0.125, 8),
    ] {
        for m in inv.saturating_sub(2).max(2)..=inv + 2 {
            let q: Vec<f64> = (0..m).map(|i| (i % 3) as f64).collect();
            let expect_defined = m > inv;
            boundary += 1;
            if chebyshev_epsilon(&q, delta).unwrap().is_some() != expect_defined {
                return Outcome::Fail(format!("definedness wrong at m = {m}, delta = {delta}"));
            }
        }
    }
    Outcome::Pass(format!(
        "{trials} random subgroups ({defined} with defined epsilon): epsilon and standardized score within {worst:.1e} <= 1e-9 of exact-rational oracle; {boundary} boundary cases, |Q| > 1/delta enforced strictly"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("tight-estimator exactness", criterion_1),
        ("top-sequence exactness", criterion_2),
        ("optimal-size window", criterion_3),
        ("gain-function properties", criterion_4),
        ("search exactness", criterion_5),
        ("closed-enumeration completeness", criterion_6),
        ("linear-time scaling", criterion_7),
        ("estimator pruning benefit", criterion_8),
        ("reproducible global statistics", criterion_9),
        ("dispersion-correction behavior", criterion_10),
        ("Chebyshev formulas", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("{tag} [{:>2}] {name} ({secs:.1}s): {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
