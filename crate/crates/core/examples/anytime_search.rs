//! Driving the search step by step and watching incumbent and bound converge.

use std::time::Duration;

use subdisc::fixtures::{planted_table, PlantedSpec};
use subdisc::prelude::*;

fn main() -> Result<()> {
    let table = planted_table(&PlantedSpec {
        rows: 800,
        numeric: 6,
        categorical: 3,
        seed: 11,
        ..PlantedSpec::default()
    })?;
    let pool = build_propositions(&table, 6, Binning::EqualFrequency)?;
    let f1 = Objective::new(
        ObjectiveKind::DccMds,
        GlobalStats::from_targets(table.target())?,
    )?;

    let config = SearchConfig {
        language: Language::Cnj,
        time_budget: Some(Duration::from_secs(10)),
        ..SearchConfig::default()
    };
    let mut search = Search::new(&pool, table.target(), &f1, config)?;
    let mut step: u64 = 0;
    while search.step()? {
        step += 1;
        if step.is_power_of_two() {
            let p = search.snapshot();
            println!(
                "after {:>5} expansions: incumbent {:.5}, best open bound {}",
                p.nodes_expanded,
                p.incumbent_value,
                p.queue_top_bound.map_or("-".into(), |b| format!("{b:.5}"))
            );
        }
    }
    let done = search.snapshot();
    println!(
        "finished (complete: {}) with {:.5}: {}",
        done.complete,
        done.incumbent_value,
        search.results()[0].description
    );

    let mut lines = Vec::new();
    search
        .trace()
        .write_json_lines(&mut lines)
        .expect("in-memory write");
    let text = String::from_utf8(lines).expect("utf-8");
    println!(
        "first trace lines:\n{}",
        text.lines().take(3).collect::<Vec<_>>().join("\n")
    );
    Ok(())
}
