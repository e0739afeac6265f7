//! Build an instance from the text format and inspect the core quantities:
//! root metrics, subtree densities, and a contraction with its extension.
//!
//! Run with `cargo run --example build_and_inspect`.

use std::collections::BTreeSet;

use incremental_pcst::format::{parse_instance, serialize_instance};
use incremental_pcst::rational::format_rational_short;
use incremental_pcst::EdgeId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
root 0
v 0 0
v 1 0
v 2 3
v 3 2
e 0 0 1 1
e 1 1 2 1
e 2 0 3 2
e 3 1 3 1
";
    let inst = parse_instance(text)?;
    println!("vertices: {}, edges: {}", inst.vertex_count(), inst.edge_count());
    println!("positive-prize vertices: {:?}", inst.prize_vertices());
    println!("eccentricity chi = {}", format_rational_short(&inst.eccentricity()));
    println!(
        "longest root path gamma = {}",
        format_rational_short(&inst.longest_root_path(20)?)
    );

    // A rooted subtree and its density p(T)/c(T).
    let tree = inst.rooted_subtree(&[EdgeId(0), EdgeId(1)].into_iter().collect())?;
    println!(
        "subtree {{0,1}}: cost {} prize {} density {}",
        format_rational_short(tree.cost()),
        format_rational_short(tree.prize()),
        format_rational_short(&inst.density_rooted(&tree))
    );

    // Contract it: edge ids survive, endpoints inside the tree collapse to
    // the root, so edge 3 becomes parallel to edge 2.
    let cg = inst.contract(&tree)?;
    println!(
        "after contraction: {} vertices, {} edges",
        cg.vertex_count(),
        cg.edge_count()
    );
    for edge in cg.surviving_edges() {
        println!(
            "  surviving edge {}: {} - {} (cost {})",
            edge.id,
            edge.u,
            edge.v,
            format_rational_short(&edge.cost)
        );
    }
    // Extension is the identity on ids: the same edges, read back in the
    // original graph.
    let extended = cg.extend(&[EdgeId(2), EdgeId(3)].into_iter().collect::<BTreeSet<_>>())?;
    println!("extension of {{2,3}} back in the base graph: {extended:?}");

    // The canonical serialization round-trips byte for byte.
    assert_eq!(serialize_instance(&parse_instance(&serialize_instance(&inst))?), serialize_instance(&inst));
    Ok(())
}
