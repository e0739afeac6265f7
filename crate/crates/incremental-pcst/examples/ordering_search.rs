//! Exhaustive search over all incremental solutions: which ordering has the
//! least worst-case factor at a given slack, and when is no finite factor
//! possible at all?
//!
//! Run with `cargo run --example ordering_search`.

use incremental_pcst::instances::{gen_fork, gen_steep_fork};
use incremental_pcst::rational::{format_rational, rat, rat_int};
use incremental_pcst::verify::best_incremental_ordering;
use incremental_pcst::DEFAULT_ORDERING_SEARCH_BOUND;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Steep fork: cheap unit-prize leaf vs. unit-cost leaf of prize 5.
    // Below slack 1/2 the best any ordering achieves is factor 5: taking
    // the cheap leaf first loses the big prize at budget 1, taking the big
    // leaf first leaves budget 1/2 with nothing at all.
    let steep = gen_steep_fork(&rat_int(5))?;
    for alpha in [rat(1, 4), rat(1, 2), rat_int(1)] {
        let (solution, mu) = best_incremental_ordering(&steep, &alpha, DEFAULT_ORDERING_SEARCH_BOUND)?;
        println!(
            "steep fork, alpha = {}: best ordering {:?} with factor {}",
            format_rational(&alpha),
            solution.order(),
            mu
        );
    }

    // Fork with a tiny first prize: with zero slack the best factor is
    // 1/delta, which blows up as delta shrinks; no zero-slack ordering is
    // uniformly competitive.
    for delta in [rat(1, 10), rat(1, 100), rat(1, 1000)] {
        let fork = gen_fork(&rat_int(1), &delta)?;
        let (_, mu) = best_incremental_ordering(&fork, &rat_int(0), DEFAULT_ORDERING_SEARCH_BOUND)?;
        println!(
            "fork with delta = {}: best zero-slack factor {}",
            format_rational(&delta),
            mu
        );
    }
    Ok(())
}
