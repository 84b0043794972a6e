//! Seeded synthetic datasets with planted subgroups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::{Attribute, AttributeColumn, DataTable, PropositionPool};
use crate::error::Result;
use crate::rowset::RowSet;

/// Parameters of [`planted_table`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedSpec {
    pub rows: usize,
    /// Numeric attributes `x0, x1, ...`, uniform on `[0, 1)`.
    pub numeric: usize,
    /// Categorical attributes `c0, c1, ...` over labels `a, b, c, ...`.
    pub categorical: usize,
    pub categories: usize,
    /// Standard deviation of the background target.
    pub noise: f64,
    /// Target shift of the planted group `x0 >= threshold & c0 = a`.
    pub shift: f64,
    /// Standard deviation inside the planted group.
    pub group_noise: f64,
    pub threshold: f64,
    pub seed: u64,
}

impl Default for PlantedSpec {
    fn default() -> Self {
        PlantedSpec {
            rows: 400,
            numeric: 3,
            categorical: 2,
            categories: 3,
            noise: 1.0,
            shift: 3.0,
            group_noise: 0.5,
            threshold: 0.6,
            seed: 0,
        }
    }
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn label(i: usize) -> String {
    char::from(b'a' + (i % 26) as u8).to_string()
}

/// Random table whose target is shifted on `x0 >= threshold & c0 = a`.
///
/// Target values are rounded to two decimals.
pub fn planted_table(spec: &PlantedSpec) -> Result<DataTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let background = Normal::new(0.0, spec.noise).expect("noise must be finite and non-negative");
    let inside = Normal::new(spec.shift, spec.group_noise)
        .expect("group noise must be finite and non-negative");
    let numeric: Vec<Vec<f64>> = (0..spec.numeric)
        .map(|_| {
            (0..spec.rows)
                .map(|_| round2(rng.random::<f64>()))
                .collect()
        })
        .collect();
    let categorical: Vec<Vec<usize>> = (0..spec.categorical)
        .map(|_| {
            (0..spec.rows)
                .map(|_| rng.random_range(0..spec.categories.max(1)))
                .collect()
        })
        .collect();
    let target = (0..spec.rows)
        .map(|r| {
            let planted = numeric.first().is_some_and(|x| x[r] >= spec.threshold)
                && categorical.first().is_none_or(|c| c[r] == 0);
            round2(if planted {
                inside.sample(&mut rng)
            } else {
                background.sample(&mut rng)
            })
        })
        .collect();
    let mut attributes: Vec<Attribute> = numeric
        .into_iter()
        .enumerate()
        .map(|(i, x)| Attribute {
            name: format!("x{i}"),
            column: AttributeColumn::Numeric(x.into_iter().map(Some).collect()),
        })
        .collect();
    attributes.extend(categorical.into_iter().enumerate().map(|(i, c)| Attribute {
        name: format!("c{i}"),
        column: AttributeColumn::Categorical(c.into_iter().map(|v| Some(label(v))).collect()),
    }));
    DataTable::new("y", target, attributes)
}

/// Five planted-pattern variants of increasing difficulty.
pub fn bundled_fixtures() -> Vec<(String, PlantedSpec)> {
    let base = PlantedSpec::default();
    vec![
        (
            "planted-easy".into(),
            PlantedSpec {
                seed: 1,
                ..base.clone()
            },
        ),
        (
            "planted-noisy-group".into(),
            PlantedSpec {
                seed: 2,
                group_noise: 1.5,
                ..base.clone()
            },
        ),
        (
            "planted-small-shift".into(),
            PlantedSpec {
                seed: 3,
                shift: 1.5,
                group_noise: 0.3,
                ..base.clone()
            },
        ),
        (
            "planted-wide".into(),
            PlantedSpec {
                seed: 4,
                numeric: 5,
                categorical: 3,
                rows: 600,
                ..base.clone()
            },
        ),
        (
            "planted-rare".into(),
            PlantedSpec {
                seed: 5,
                threshold: 0.85,
                categories: 4,
                ..base
            },
        ),
    ]
}

/// Population with two high-valued groups: `wide = yes` covers many rows with
/// a large spread, `tight = yes` covers few rows with a small spread.
pub fn dispersion_contrast_table(seed: u64) -> Result<DataTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = 1000;
    let background = Normal::new(0.0, 1.0).expect("valid");
    let wide = Normal::new(4.0, 6.0).expect("valid");
    let tight = Normal::new(3.0, 0.2).expect("valid");
    let mut wide_col = Vec::with_capacity(rows);
    let mut tight_col = Vec::with_capacity(rows);
    let mut noise_col = Vec::with_capacity(rows);
    let mut target = Vec::with_capacity(rows);
    for r in 0..rows {
        let (in_wide, in_tight) = (r % 5 < 2, r % 25 == 2);
        wide_col.push(Some(if in_wide { "yes" } else { "no" }.to_owned()));
        tight_col.push(Some(if in_tight { "yes" } else { "no" }.to_owned()));
        noise_col.push(Some(round2(rng.random::<f64>())));
        let y = if in_wide {
            wide.sample(&mut rng)
        } else if in_tight {
            tight.sample(&mut rng)
        } else {
            background.sample(&mut rng)
        };
        target.push(round2(y));
    }
    let attributes = vec![
        Attribute {
            name: "wide".into(),
            column: AttributeColumn::Categorical(wide_col),
        },
        Attribute {
            name: "tight".into(),
            column: AttributeColumn::Categorical(tight_col),
        },
        Attribute {
            name: "noise".into(),
            column: AttributeColumn::Numeric(noise_col),
        },
    ];
    DataTable::new("y", target, attributes)
}

/// Random proposition pool with integer targets, for oracle comparisons.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    rows: usize,
    props: usize,
    max_target: i32,
) -> (PropositionPool, Vec<f64>) {
    let extensions = (0..props)
        .map(|i| {
            let density = rng.random_range(0.2..0.9);
            (
                format!("p{}", i + 1),
                RowSet::from_predicate(rows, |_| rng.random_bool(density)),
            )
        })
        .collect();
    let pool =
        PropositionPool::from_extensions(rows, extensions).expect("extensions span the row count");
    let targets = (0..rows)
        .map(|_| f64::from(rng.random_range(0..=max_target)))
        .collect();
    (pool, targets)
}
