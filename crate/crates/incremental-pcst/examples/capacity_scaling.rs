//! Capacity scaling: exact budgeted optima at budgets doubling from the
//! eccentricity, concatenated with duplicate and cycle skipping.
//!
//! Run with `cargo run --example capacity_scaling`.

use incremental_pcst::instances::gen_diamonds;
use incremental_pcst::rational::format_rational;
use incremental_pcst::scaling::{capacity_scaling, optimal_budget_subtree};
use incremental_pcst::rational::rat_int;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two diamond components: collecting one prize fast (cost 3) and
    // collecting both prizes cheaply (cost 7) exclude each other.
    let inst = gen_diamonds(2)?;
    println!("eccentricity chi = {}", format_rational(&inst.eccentricity()));

    // The exact budget oracle the algorithm calls per iteration:
    for budget in [rat_int(3), rat_int(7), rat_int(10)] {
        let tree = optimal_budget_subtree(&inst, &budget, 20)?;
        println!(
            "best tree within budget {}: {:?} (prize {})",
            format_rational(&budget),
            tree.edges(),
            format_rational(tree.prize())
        );
    }

    let (solution, trace) = capacity_scaling(&inst, 20)?;
    println!("ordering: {:?}", solution.order());
    for step in &trace.steps {
        println!(
            "  iteration {}: budget {}, tree {:?} (prize {}), appended {:?}",
            step.iteration,
            format_rational(&step.budget),
            step.tree,
            format_rational(&step.prize),
            step.appended
        );
    }
    Ok(())
}
