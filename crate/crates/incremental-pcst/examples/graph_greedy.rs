//! Density-greedy ordering on a general graph. The exact oracle enumerates
//! all rooted subtrees of the contracted graph; each fixed tree is laid
//! down completely before the next one is chosen.
//!
//! Run with `cargo run --example graph_greedy`.

use incremental_pcst::graph_greedy::{density_greedy_graph, min_max_subtree_exact};
use incremental_pcst::instances::gen_hub_bypass;
use incremental_pcst::rational::{format_rational, rat};
use incremental_pcst::verify::alg_profile;
use incremental_pcst::DEFAULT_ENUMERATION_BOUND;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Hub construction: three prize-2 leaves behind a cost-3 hub edge, each
    // also reachable directly at cost 3+eps, plus a tiny side prize.
    let eps = rat(1, 10);
    let inst = gen_hub_bypass(&eps)?;
    println!(
        "eccentricity chi = {}, longest root path gamma = {}",
        format_rational(&inst.eccentricity()),
        format_rational(&inst.longest_root_path(DEFAULT_ENUMERATION_BOUND)?)
    );

    let mm = min_max_subtree_exact(&inst, DEFAULT_ENUMERATION_BOUND)?;
    println!(
        "densest rooted subtree: {:?} at density {}",
        mm.edges(),
        format_rational(&inst.density_rooted(&mm))
    );

    let (solution, trace) = density_greedy_graph(&inst, DEFAULT_ENUMERATION_BOUND)?;
    println!("ordering: {:?}", solution.order());
    for block in &trace.blocks {
        println!(
            "  block {:?} density {} anchored at {}",
            block.extension,
            format_rational(&block.density),
            block.anchor
        );
    }

    // The whole hub tree (cost 6) is laid down before anything pays off:
    // the profile stays at zero below budget 4.
    let profile = alg_profile(&inst, &solution);
    for (budget, prize) in profile.points() {
        println!(
            "  budget {} -> prize {}",
            format_rational(budget),
            format_rational(prize)
        );
    }
    Ok(())
}
