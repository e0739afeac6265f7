//! Forest extraction: inside any tree there is a cheap forest with few
//! components collecting a guaranteed share of the prize — at most
//! `lambda * c(T)` cost, at most `k` components, and at least
//! `(1 - 2^(1-k)) * lambda * p(T)` prize. The subset search certifies the
//! bound by finding the best such forest.
//!
//! Run with `cargo run --example forest_extraction`.

use std::collections::BTreeSet;

use incremental_pcst::instances::gen_random_tree;
use incremental_pcst::rational::{format_rational, rat};
use incremental_pcst::verify::forest_extraction;
use incremental_pcst::{EdgeId, TreeView, DEFAULT_FOREST_SEARCH_BOUND};
use num::One;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = gen_random_tree(9, 7)?;
    let edges: BTreeSet<EdgeId> = inst.edges().map(|e| e.id).collect();
    let tree = TreeView::new(&inst, &edges, inst.root())?;
    let total_prize = inst.total_prize();
    let total_cost = inst.edge_set_cost(&edges);
    println!(
        "tree with cost {} and prize {}",
        format_rational(&total_cost),
        format_rational(&total_prize)
    );

    let lambda = rat(1, 2);
    for k in 1..=4usize {
        let forest = forest_extraction(&inst, &tree, &lambda, k, DEFAULT_FOREST_SEARCH_BOUND)?;
        let guarantee = (incremental_pcst::Rational::one() - rat(1, 1 << (k - 1)))
            * &lambda
            * &total_prize;
        println!(
            "k = {k}: {} components, cost {}, prize {} (guaranteed at least {})",
            forest.component_count(),
            format_rational(&forest.cost(&inst)),
            format_rational(&forest.prize(&inst)),
            format_rational(&guarantee)
        );
        assert!(forest.prize(&inst) >= guarantee);
    }
    Ok(())
}
