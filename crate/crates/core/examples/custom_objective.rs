//! User-defined objectives: any level-2 function is bounded by the quadratic
//! median-sequence estimator, functions of dcc and median by the linear one.

use std::sync::Arc;

use subdisc::bounds::{brute_force_estimate, DEFAULT_GENERAL_CAP};
use subdisc::prelude::*;
use subdisc::stats::Dispersion;

fn main() -> Result<()> {
    let population = [3.0, 4.0, 4.0, 5.0, 6.0, 6.0, 7.0, 9.0, 12.0, 20.0];
    let global = GlobalStats::from_targets(&population)?;
    let q = [4.0, 6.0, 7.0, 9.0, 12.0, 20.0];

    // size-weighted median shift, penalized by the median absolute deviation
    let robust = Objective::new(
        ObjectiveKind::Level2 {
            name: "robust-shift".into(),
            dispersion: Dispersion::Mad,
            g: Arc::new(move |size, med, mad| {
                (size as f64 / global.n as f64) * (med - global.median).max(0.0) / (1.0 + mad)
            }),
        },
        global,
    )?;
    println!(
        "{}: estimate {:.4}, exhaustive {:.4}",
        robust.name(),
        median_sequence_estimate_general(&robust, &q, DEFAULT_GENERAL_CAP)?,
        brute_force_estimate(&robust, &q, 20)?
    );

    // squared dispersion-corrected coverage times the raw median shift
    let dcc_squared = Objective::new(
        ObjectiveKind::DccBased {
            name: "dcc^2*shift".into(),
            g: Arc::new(move |dcc, med| dcc * dcc * (med - global.median).max(0.0)),
        },
        global,
    )?;
    println!(
        "{}: estimate {:.4}, exhaustive {:.4}",
        dcc_squared.name(),
        median_sequence_estimate_linear(&dcc_squared, &q)?,
        brute_force_estimate(&dcc_squared, &q, 20)?
    );
    Ok(())
}
