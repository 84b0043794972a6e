//! Order statistics over target multisets.
//!
//! The median is the lower median `y[ceil(m/2)]` (1-based) and never an
//! average of two values. All dispersion measures are taken around that
//! median. [`SortedTargets`] additionally keeps the cumulative left and right
//! error arrays so that the sum of absolute deviations of any consecutive
//! segment from any of its members is available in constant time.
//!
//! Public indices are 1-based. Ties in sorting are irrelevant: only the
//! multiset of values enters any statistic.

use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, Dd};

/// Dispersion measures around the median.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dispersion {
    /// Sum of absolute deviations from the median.
    Smd,
    /// Mean absolute deviation from the median.
    Amd,
    /// Median of the absolute deviations from the median.
    Mad,
    /// Root mean squared deviation from the median.
    Rmsd,
}

impl Dispersion {
    pub fn compute(self, sorted: &[f64]) -> Result<f64> {
        match self {
            Dispersion::Smd => smd(sorted),
            Dispersion::Amd => amd(sorted),
            Dispersion::Mad => mad(sorted),
            Dispersion::Rmsd => rmsd(sorted),
        }
    }

    /// Whether the measure is determined by the segment sum of absolute
    /// deviations (and therefore has an O(1) formula on consecutive sets).
    pub fn is_deviation_sum(self) -> bool {
        matches!(self, Dispersion::Smd | Dispersion::Amd)
    }
}

#[inline]
pub(crate) fn median_index(m: usize) -> usize {
    debug_assert!(m > 0);
    (m - 1) / 2
}

/// Lower median of an ascending slice.
pub fn median(sorted: &[f64]) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(sorted[median_index(sorted.len())])
}

/// Sum of absolute deviations from the median.
pub fn smd(sorted: &[f64]) -> Result<f64> {
    let med = median(sorted)?;
    Ok(compensated_sum(sorted.iter().map(|y| (y - med).abs())))
}

pub fn amd(sorted: &[f64]) -> Result<f64> {
    Ok(smd(sorted)? / sorted.len() as f64)
}

pub fn mad(sorted: &[f64]) -> Result<f64> {
    let med = median(sorted)?;
    let mut dev: Vec<f64> = sorted.iter().map(|y| (y - med).abs()).collect();
    dev.sort_unstable_by(f64::total_cmp);
    Ok(dev[median_index(dev.len())])
}

pub fn rmsd(sorted: &[f64]) -> Result<f64> {
    let med = median(sorted)?;
    let sq = compensated_sum(sorted.iter().map(|y| (y - med) * (y - med)));
    Ok((sq / sorted.len() as f64).sqrt())
}

pub fn mean(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(compensated_sum(values.iter().copied()) / values.len() as f64)
}

/// Sample variance with denominator `m - 1`; `None` for fewer than two values.
pub fn sample_variance(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let mu = mean(values).ok()?;
    let ss = compensated_sum(values.iter().map(|y| (y - mu) * (y - mu)));
    Some(ss / (values.len() - 1) as f64)
}

/// Ascending target multiset with cumulative left/right error arrays.
///
/// `left_error(i) = sum_{j<i} (y_i - y_j)` and
/// `right_error(i) = sum_{j>i} (y_j - y_i)`, both stored in double-double
/// precision so that differences of large prefix sums stay accurate.
#[derive(Debug, Clone)]
pub struct SortedTargets {
    values: Vec<f64>,
    left: Vec<Dd>,
    right: Vec<Dd>,
}

/// Sorts `targets` and builds the error arrays.
pub fn build_sorted(targets: &[f64]) -> Result<SortedTargets> {
    let mut values = targets.to_vec();
    values.sort_unstable_by(f64::total_cmp);
    SortedTargets::from_sorted(values)
}

impl SortedTargets {
    /// Builds from values that are already in ascending order.
    pub fn from_sorted(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = values.iter().find(|y| !y.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite target value {bad}"
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("values are not sorted".into()));
        }
        let m = values.len();
        let mut left = vec![Dd::ZERO; m];
        for i in 1..m {
            let step = Dd::diff(values[i], values[i - 1]).scale(i as f64);
            left[i] = left[i - 1] + step;
        }
        let mut right = vec![Dd::ZERO; m];
        for i in (0..m - 1).rev() {
            let step = Dd::diff(values[i + 1], values[i]).scale((m - 1 - i) as f64);
            right[i] = right[i + 1] + step;
        }
        Ok(SortedTargets {
            values,
            left,
            right,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `y_i`, 1-based.
    pub fn value(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    /// `e_l(i)`, 1-based.
    pub fn left_error(&self, i: usize) -> f64 {
        self.left[i - 1].to_f64()
    }

    /// `e_r(i)`, 1-based.
    pub fn right_error(&self, i: usize) -> f64 {
        self.right[i - 1].to_f64()
    }

    pub fn median(&self) -> f64 {
        self.values[median_index(self.values.len())]
    }

    /// `sum_{i=a}^{b} |y_z - y_i|` for `1 <= a <= z <= b <= m`, in O(1).
    pub fn segment_smd(&self, a: usize, z: usize, b: usize) -> Result<f64> {
        let m = self.len();
        if !(1 <= a && a <= z && z <= b && b <= m) {
            return Err(Error::IndexOutOfRange(format!(
                "segment (a={a}, z={z}, b={b}) with m={m}"
            )));
        }
        Ok(self.segment_smd_dd(a, z, b).to_f64())
    }

    /// Unchecked double-double variant of [`Self::segment_smd`].
    #[inline]
    pub(crate) fn segment_smd_dd(&self, a: usize, z: usize, b: usize) -> Dd {
        let m = self.values.len();
        let (ya, yz, yb) = (self.values[a - 1], self.values[z - 1], self.values[b - 1]);
        let left = self.left[z - 1] - self.left[a - 1] - Dd::diff(yz, ya).scale((a - 1) as f64);
        let right = self.right[z - 1] - self.right[b - 1] - Dd::diff(yb, yz).scale((m - b) as f64);
        left + right
    }
}
