//! The exact optimum profile: nondominated (cost, prize) pairs over all
//! rooted subtrees, exported in the frontier CSV format.
//!
//! Run with `cargo run --example pareto_frontier`.

use incremental_pcst::format::write_frontier_csv;
use incremental_pcst::instances::gen_fork;
use incremental_pcst::rational::{format_rational, rat, rat_int};
use incremental_pcst::scaling::pareto_frontier;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Fork: a half-cost leaf with prize 1/100 against a full-cost leaf with
    // prize 1. All four rooted subtrees are nondominated.
    let inst = gen_fork(&rat_int(1), &rat(1, 100))?;
    let frontier = pareto_frontier(&inst, 20)?;

    println!("{}", write_frontier_csv(&frontier).trim_end());
    for budget in [rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1), rat_int(2)] {
        println!(
            "p(OPT({})) = {}",
            format_rational(&budget),
            format_rational(&frontier.opt_prize(&budget))
        );
    }
    Ok(())
}
