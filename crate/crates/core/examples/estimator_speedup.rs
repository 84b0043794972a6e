//! Node counts of branch-and-bound with the top-sequence bound versus the
//! tight dispersion-aware bound, on the bundled planted-pattern datasets.

use subdisc::fixtures::{bundled_fixtures, planted_table};
use subdisc::prelude::*;

fn main() -> Result<()> {
    println!(
        "{:<22} {:>10} {:>10} {:>10}",
        "dataset", "optimum", "top-seq", "tight"
    );
    for (name, spec) in bundled_fixtures() {
        let table = planted_table(&spec)?;
        let pool = build_propositions(&table, 5, Binning::EqualFrequency)?;
        let f1 = Objective::new(
            ObjectiveKind::DccMds,
            GlobalStats::from_targets(table.target())?,
        )?;
        let mut runs = Vec::new();
        for estimator in [EstimatorKind::TopSequence, EstimatorKind::MedianLinear] {
            let config = SearchConfig {
                estimator: Some(estimator),
                depth_limit: Some(4),
                ..SearchConfig::default()
            };
            runs.push(run_search(&table, &pool, &f1, config)?);
        }
        assert_eq!(runs[0].0[0].value, runs[1].0[0].value);
        println!(
            "{:<22} {:>10.5} {:>10} {:>10}",
            name, runs[0].0[0].value, runs[0].1.nodes_expanded, runs[1].1.nodes_expanded
        );
    }
    Ok(())
}
