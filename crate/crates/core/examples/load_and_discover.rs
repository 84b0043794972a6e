//! Load a CSV file and find the best subgroup under the dispersion-corrected objective.
//!
//! cargo run --example load_and_discover -- [path.csv target]

use std::collections::HashMap;

use subdisc::evalstats::{GlobalLcb, SubgroupReport, DEFAULT_DELTA};
use subdisc::prelude::*;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy.csv").to_owned());
    let target = args.next().unwrap_or_else(|| "y".to_owned());

    let (table, summary) = load_csv(&path, &target, &HashMap::new())?;
    println!("{} rows ({} dropped)", table.rows(), summary.dropped_rows);

    let pool = build_propositions(&table, 1, Binning::EqualFrequency)?;
    for p in pool.iter() {
        println!("  {:>2}: {}", p.id, p.label);
    }

    let global = GlobalStats::from_targets(table.target())?;
    println!("median {}  amd {:.4}", global.median, global.amd);

    let objective = Objective::new(ObjectiveKind::DccMds, global)?;
    let config = SearchConfig {
        top_k: 3,
        ..SearchConfig::default()
    };
    let (results, trace) = run_search(&table, &pool, &objective, config)?;

    let lcb = GlobalLcb::from_targets(table.target(), DEFAULT_DELTA).ok();
    for r in &results {
        println!("{:.4}  {}  (size {})", r.value, r.description, r.size);
        if let Some(lcb) = &lcb {
            let q = r.selector.extension().sorted_values(table.target());
            println!(
                "{:#?}",
                SubgroupReport::new(r.description.clone(), r.value, &q, lcb)?
            );
        }
    }
    println!(
        "{} nodes expanded in {:?}",
        trace.nodes_expanded, trace.wall_time
    );
    Ok(())
}
