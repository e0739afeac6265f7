//! Competitiveness verification: check `mu * p(ALG(B + alpha)) >= p(OPT(B))`
//! for all budgets, and search for the least factor and least slack.
//!
//! Run with `cargo run --example verify_competitive`.

use incremental_pcst::format::write_report_json;
use incremental_pcst::instances::gen_random_tree;
use incremental_pcst::rational::{format_rational, rat_int};
use incremental_pcst::tree_greedy::density_greedy_tree;
use incremental_pcst::verify::{min_alpha, min_mu, verify_competitive};
use num::One;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random_tree(9, 2024)?;
    let (solution, _) = density_greedy_tree(&inst)?;
    let chi = inst.eccentricity();
    println!("random tree with chi = {}", format_rational(&chi));

    // With slack chi the greedy matches the optimum exactly (factor 1).
    let report = verify_competitive(&inst, &solution, &chi, &incremental_pcst::Rational::one(), 20)?;
    println!("{}", write_report_json(&report));

    // The least factor at a few slacks; the sentinel marks slacks at which
    // some positive optimum faces an empty prefix.
    for alpha in [rat_int(0), &chi / rat_int(2), chi.clone()] {
        println!(
            "min mu at alpha = {}: {}",
            format_rational(&alpha),
            min_mu(&inst, &solution, &alpha, 20)?
        );
    }

    // The least slack that makes factor 1 hold on this instance; never more
    // than chi for the tree greedy.
    let needed = min_alpha(&inst, &solution, &incremental_pcst::Rational::one(), 20)?;
    println!("min alpha at mu = 1: {}", format_rational(&needed));
    assert!(needed <= chi);
    Ok(())
}
