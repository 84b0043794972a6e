//! Tight optimistic estimators against exhaustive subset enumeration.

use subdisc::bounds::{brute_force_estimate, DEFAULT_GENERAL_CAP};
use subdisc::prelude::*;

fn main() -> Result<()> {
    let population = [1.0, 2.0, 2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 8.0, 12.0];
    let subgroup = [2.0, 4.0, 5.0, 7.0, 8.0, 12.0];
    let global = GlobalStats::from_targets(&population)?;

    let f0 = Objective::new(ObjectiveKind::CovMds, global)?;
    let f1 = Objective::new(ObjectiveKind::DccMds, global)?;
    let dcb = Objective::new(ObjectiveKind::Dcb, global)?;

    println!("f0 value {:.4}", f0.evaluate(&subgroup));
    println!(
        "  top sequence   {:.4}",
        top_sequence_estimate(&f0, &subgroup)?
    );
    println!(
        "  all subsets    {:.4}",
        brute_force_estimate(&f0, &subgroup, 20)?
    );

    for o in [&f1, &dcb] {
        println!("{} value {:.4}", o.name(), o.evaluate(&subgroup));
        println!(
            "  median sequence, quadratic  {:.4}",
            median_sequence_estimate_general(o, &subgroup, DEFAULT_GENERAL_CAP)?
        );
        println!(
            "  median sequence, linear     {:.4}",
            median_sequence_estimate_linear(o, &subgroup)?
        );
        println!(
            "  all subsets                 {:.4}",
            brute_force_estimate(o, &subgroup, 20)?
        );
    }

    // the top-sequence bound of f0 also bounds f1, but more loosely
    println!(
        "bounds for f1: {:.4} (via f0) vs {:.4}",
        top_sequence_estimate(&f0, &subgroup)?,
        median_sequence_estimate_linear(&f1, &subgroup)?
    );
    Ok(())
}
