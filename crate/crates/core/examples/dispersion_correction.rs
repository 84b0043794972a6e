//! Coverage times median shift prefers a large spread-out group; correcting
//! coverage for dispersion prefers a small coherent one.

use subdisc::fixtures::dispersion_contrast_table;
use subdisc::prelude::*;
use subdisc::stats::amd;

fn main() -> Result<()> {
    let table = dispersion_contrast_table(0)?;
    let pool = build_propositions(&table, 4, Binning::EqualFrequency)?;
    let global = GlobalStats::from_targets(table.target())?;
    println!(
        "population: median {:.2}, amd {:.3}",
        global.median, global.amd
    );
    for kind in [ObjectiveKind::CovMds, ObjectiveKind::DccMds] {
        let objective = Objective::new(kind, global)?;
        let (results, _) = run_search(&table, &pool, &objective, SearchConfig::default())?;
        let best = &results[0];
        let q = best.selector.extension().sorted_values(table.target());
        println!(
            "{}: {}  size {}  median {:.2}  amd {:.3}",
            objective.name(),
            best.description,
            best.size,
            q[(q.len() - 1) / 2],
            amd(&q)?
        );
    }
    Ok(())
}
