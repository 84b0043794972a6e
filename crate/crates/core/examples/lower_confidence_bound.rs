//! Chebyshev lower confidence bounds and the standardized score of a subgroup.

use subdisc::evalstats::{chebyshev_epsilon, GlobalLcb, SubgroupReport};
use subdisc::prelude::*;

fn main() -> Result<()> {
    let mut population: Vec<f64> = (0..300).map(|i| f64::from(i % 13)).collect();
    let group: Vec<f64> = (0..40).map(|i| 15.0 + f64::from(i % 3)).collect();
    population.extend(&group);

    for delta in [0.2, 0.1, 0.05] {
        match chebyshev_epsilon(&group, delta)? {
            Some(eps) => println!("delta {delta}: epsilon {eps:.4}"),
            None => println!("delta {delta}: group too small"),
        }
    }
    println!(
        "10 values at delta 0.05: {:?}",
        chebyshev_epsilon(&group[..10], 0.05)?
    );

    let global = GlobalLcb::from_targets(&population, 0.05)?;
    println!("population bound {:.4}", global.lcb);
    let mut sorted = group.clone();
    sorted.sort_by(f64::total_cmp);
    let report = SubgroupReport::new("planted", 0.0, &sorted, &global)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    Ok(())
}
