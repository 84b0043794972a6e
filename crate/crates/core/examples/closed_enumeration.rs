//! Closed conjunctions: one selector per distinct extension.

use subdisc::lang::{
    closed_conjunctions_brute_force, closure, refine_ccj, refine_cnj, Conjunction,
};
use subdisc::prelude::*;

fn main() -> Result<()> {
    let rows = 6;
    let ext = |r: &[usize]| RowSet::from_indices(rows, r.iter().copied());
    let pool = PropositionPool::from_extensions(
        rows,
        vec![
            ("a".into(), ext(&[0, 1, 2, 3])),
            ("b".into(), ext(&[0, 1, 2])),
            ("c".into(), ext(&[2, 3, 4])),
            ("d".into(), ext(&[0, 1, 2, 5])),
        ],
    )?;

    let b = Conjunction::new(&[2], &pool)?;
    println!(
        "closure of {} is {}",
        b.describe(&pool),
        closure(&b, &pool).describe(&pool)
    );

    // every closed conjunction is reached exactly once from the closure of the empty conjunction
    let mut stack = vec![(closure(&Conjunction::bottom(&pool), &pool), 0)];
    let mut closed = 0;
    while let Some((c, depth)) = stack.pop() {
        closed += 1;
        println!(
            "{}{:<12} {:?}",
            "  ".repeat(depth),
            c.describe(&pool),
            c.extension()
        );
        if !c.extension().is_empty() {
            for child in refine_ccj(&c, &pool)?.into_iter().rev() {
                stack.push((child, depth + 1));
            }
        }
    }

    let mut all = 0;
    let mut stack = vec![Conjunction::bottom(&pool)];
    while let Some(c) = stack.pop() {
        all += 1;
        stack.extend(refine_cnj(&c, &pool));
    }
    println!("{closed} closed conjunctions, {all} conjunctions");
    assert_eq!(closed, closed_conjunctions_brute_force(&pool)?.len());
    Ok(())
}
