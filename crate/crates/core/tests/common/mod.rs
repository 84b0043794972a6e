//! Reference implementations in exact arithmetic, written independently of the library.
#![allow(dead_code)]

use std::cmp::Ordering;

/// Non-negative fraction `num / den` with `den > 0`.
#[derive(Debug, Clone, Copy)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub const ZERO: Frac = Frac { num: 0, den: 1 };

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Frac {}
impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Frac {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// Population constants of an integer target.
#[derive(Debug, Clone, Copy)]
pub struct Pop {
    pub n: i128,
    pub max: i128,
    pub med: i128,
    pub smd: i128,
    pub sum: i128,
}

pub fn lower_median(sorted: &[i64]) -> i64 {
    sorted[(sorted.len() - 1) / 2]
}

pub fn deviation_sum(sorted: &[i64]) -> i128 {
    let med = lower_median(sorted);
    sorted.iter().map(|&v| i128::from((v - med).abs())).sum()
}

impl Pop {
    pub fn new(p: &[i64]) -> Pop {
        let mut s = p.to_vec();
        s.sort();
        Pop {
            n: s.len() as i128,
            max: i128::from(*s.last().unwrap()),
            med: i128::from(lower_median(&s)),
            smd: deviation_sum(&s),
            sum: s.iter().map(|&v| i128::from(v)).sum(),
        }
    }
}

/// Dispersion-corrected coverage times normalized median shift.
pub fn f1(q: &[i64], g: &Pop) -> Frac {
    if q.is_empty() {
        return Frac::ZERO;
    }
    let k = q.len() as i128;
    let med = i128::from(lower_median(q));
    let dcc = k * g.smd - g.n * deviation_sum(q);
    if dcc <= 0 || med <= g.med || g.max <= g.med {
        return Frac::ZERO;
    }
    Frac {
        num: dcc * (med - g.med),
        den: g.n * g.smd * (g.max - g.med),
    }
}

/// Coverage times normalized median shift.
pub fn f0(q: &[i64], g: &Pop) -> Frac {
    if q.is_empty() {
        return Frac::ZERO;
    }
    let k = q.len() as i128;
    let med = i128::from(lower_median(q));
    if med <= g.med || g.max <= g.med {
        return Frac::ZERO;
    }
    Frac {
        num: k * (med - g.med),
        den: g.n * (g.max - g.med),
    }
}

/// Coverage times normalized mean shift.
pub fn impact(q: &[i64], g: &Pop) -> Frac {
    if q.is_empty() {
        return Frac::ZERO;
    }
    let k = q.len() as i128;
    let sum: i128 = q.iter().map(|&v| i128::from(v)).sum();
    let shift = g.n * sum - k * g.sum;
    let span = g.n * g.max - g.sum;
    if shift <= 0 || span <= 0 {
        return Frac::ZERO;
    }
    Frac {
        num: shift,
        den: g.n * span,
    }
}

/// Maximum of `f` over all sub-multisets of the ascending `q`.
pub fn best_subset(q: &[i64], f: impl Fn(&[i64]) -> Frac) -> Frac {
    let mut best = Frac::ZERO;
    let mut buf = Vec::with_capacity(q.len());
    for mask in 1u32..(1u32 << q.len()) {
        buf.clear();
        buf.extend((0..q.len()).filter(|i| mask >> i & 1 == 1).map(|i| q[i]));
        best = best.max(f(&buf));
    }
    best
}

/// Floating-point versions for real-valued targets.
pub mod real {
    pub fn lower_median(s: &[f64]) -> f64 {
        s[(s.len() - 1) / 2]
    }

    pub fn deviation_sum(s: &[f64]) -> f64 {
        let med = lower_median(s);
        s.iter().map(|v| (v - med).abs()).sum()
    }

    pub fn f1(q: &[f64], p: &[f64]) -> f64 {
        if q.is_empty() {
            return 0.0;
        }
        let n = p.len() as f64;
        let (med_p, max_p) = (lower_median(p), p[p.len() - 1]);
        let dcc = (q.len() as f64 / n - deviation_sum(q) / deviation_sum(p)).max(0.0);
        dcc * ((lower_median(q) - med_p) / (max_p - med_p)).max(0.0)
    }

    pub fn best_subset(q: &[f64], f: impl Fn(&[f64]) -> f64) -> f64 {
        let mut best = 0.0f64;
        let mut buf = Vec::with_capacity(q.len());
        for mask in 1u32..(1u32 << q.len()) {
            buf.clear();
            buf.extend((0..q.len()).filter(|i| mask >> i & 1 == 1).map(|i| q[i]));
            best = best.max(f(&buf));
        }
        best
    }
}

/// Row sets as boolean vectors.
pub fn intersect(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

/// Sorted id lists of all closed conjunctions: for every subset of
/// propositions, the ids whose extension covers the subset's extension.
pub fn closed_sets(exts: &[Vec<bool>], rows: usize) -> Vec<Vec<usize>> {
    let k = exts.len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let mut ext = vec![true; rows];
        for (i, e) in exts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                ext = intersect(&ext, e);
            }
        }
        let ids: Vec<usize> = (0..k)
            .filter(|&i| (0..rows).all(|r| !ext[r] || exts[i][r]))
            .map(|i| i + 1)
            .collect();
        out.push(ids);
    }
    out.sort();
    out.dedup();
    out
}

/// Extensions of every conjunction of the pool, one per subset of ids.
pub fn all_extensions(exts: &[Vec<bool>], rows: usize) -> Vec<Vec<bool>> {
    let k = exts.len();
    (0u32..(1u32 << k))
        .map(|mask| {
            let mut ext = vec![true; rows];
            for (i, e) in exts.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    ext = intersect(&ext, e);
                }
            }
            ext
        })
        .collect()
}

pub fn select(ext: &[bool], y: &[i64]) -> Vec<i64> {
    let mut q: Vec<i64> = y
        .iter()
        .zip(ext)
        .filter(|(_, in_ext)| **in_ext)
        .map(|(v, _)| *v)
        .collect();
    q.sort();
    q
}
