//! Density-greedy ordering on a tree: min-max subtrees, the trace with its
//! block structure, and the resulting prize profile.
//!
//! Run with `cargo run --example tree_greedy`.

use incremental_pcst::instances::gen_heavy_star;
use incremental_pcst::rational::{format_rational, rat_int};
use incremental_pcst::tree_greedy::{density_greedy_tree, min_max_subtree_tree};
use incremental_pcst::verify::alg_profile;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A star: one heavy arm of cost 1 and prize 2, four light arms of cost
    // and prize 1/4 each. The heavy arm is twice as dense.
    let inst = gen_heavy_star(&rat_int(1), 4)?;

    let mm = min_max_subtree_tree(&inst)?;
    println!(
        "min-max subtree: edges {:?}, density {}",
        mm.edges(),
        format_rational(&inst.density_rooted(&mm))
    );

    let (solution, trace) = density_greedy_tree(&inst)?;
    println!("ordering: {:?}", solution.order());
    for step in &trace.steps {
        println!(
            "  step {}: append edge {} (fixed subtree density {})",
            step.index,
            step.edge,
            format_rational(&step.density)
        );
    }
    println!("blocks (density never increases):");
    for block in &trace.blocks {
        println!(
            "  extension {:?} at density {} anchored at vertex {}",
            block.extension,
            format_rational(&block.density),
            block.anchor
        );
    }

    let profile = alg_profile(&inst, &solution);
    println!("prize profile (budget -> prize):");
    for (budget, prize) in profile.points() {
        println!("  {} -> {}", format_rational(budget), format_rational(prize));
    }
    Ok(())
}
