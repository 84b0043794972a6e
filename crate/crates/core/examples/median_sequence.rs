//! The median sequence: best consecutive segment per median index.

use subdisc::bounds::median_sequence;
use subdisc::prelude::*;
use subdisc::stats::SortedTargets;

fn main() -> Result<()> {
    let q = vec![1.0, 3.0, 4.0, 4.0, 5.0, 6.0, 9.0, 10.0, 10.0, 11.0, 15.0];
    let mut population = q.clone();
    population.extend([0.0, 0.0, 2.0, 2.0, 3.0]);
    let f1 = Objective::new(
        ObjectiveKind::DccMds,
        GlobalStats::from_targets(&population)?,
    )?;

    println!(
        "{:>3} {:>6} {:>4} {:>9} {:>8}",
        "z", "y_z", "k*", "window", "f"
    );
    for s in median_sequence(&f1, &q)? {
        println!(
            "{:>3} {:>6} {:>4} {:>4}..{:<3} {:>8.4}",
            s.z,
            q[s.z - 1],
            s.k_star,
            s.window.0,
            s.window.1,
            s.best_value
        );
    }

    // deviation sums of any segment in constant time
    let st = SortedTargets::from_sorted(q.clone())?;
    println!(
        "sum |y_i - y_5| for i in 3..=8: {}",
        st.segment_smd(3, 5, 8)?
    );
    Ok(())
}
