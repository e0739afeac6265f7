//! Structural invariants of greedy and scaling traces.
//!
//! These checkers replay a trace against the instance and fail with a
//! message naming the violated condition. They are deliberately written
//! against the recorded data (not the algorithms' internals), so property
//! tests and the acceptance suite can use them as independent referees.

use std::collections::BTreeSet;

use num::{One, Signed};

use crate::graph::{EdgeId, IncrementalSolution, Instance, TreeView};
use crate::rational::{pow2, Rational};
use crate::scaling::{ParetoFrontier, ScalingTrace};
use crate::tree_greedy::GreedyTrace;
use crate::verify::alg_profile;

pub type CheckResult = std::result::Result<(), String>;

fn fail(msg: String) -> CheckResult {
    Err(msg)
}

/// Replays a greedy trace (tree or graph variant) and checks, per step,
/// that the recorded extension is a rooted subtree of the contracted graph
/// with the recorded density and a single root-incident edge (the appended
/// one), that every branch of the extension is at least as dense as the
/// whole (strictly for proper branches), and that the block structure is
/// consistent: each fixed extension is consumed consecutively, and
/// intermediate extensions are strictly denser subtrees of the open block.
pub fn check_greedy_trace(
    inst: &Instance,
    sol: &IncrementalSolution,
    trace: &GreedyTrace,
) -> CheckResult {
    if trace.steps.len() != sol.len() {
        return fail(format!(
            "trace has {} steps but the ordering has {} edges",
            trace.steps.len(),
            sol.len()
        ));
    }
    let mut blocks = trace.blocks.iter();
    let mut open_density: Option<Rational> = None;
    let mut remaining: BTreeSet<EdgeId> = BTreeSet::new();
    let mut appended: Vec<EdgeId> = Vec::new();

    for (i, step) in trace.steps.iter().enumerate() {
        if step.index != i {
            return fail(format!("step {i} records index {}", step.index));
        }
        if step.edge != sol.order()[i] {
            return fail(format!(
                "step {i} records edge {} but the ordering has {}",
                step.edge,
                sol.order()[i]
            ));
        }
        let prefix: BTreeSet<EdgeId> = appended.iter().copied().collect();
        let tbar = inst
            .rooted_subtree(&prefix)
            .map_err(|e| format!("prefix before step {i} is not a rooted subtree: {e}"))?;
        let cg = inst
            .contract(&tbar)
            .map_err(|e| format!("contraction failed before step {i}: {e}"))?;
        let contracted = cg.to_instance();

        let ext = contracted
            .rooted_subtree(&step.extension)
            .map_err(|e| format!("extension at step {i} is not rooted after contraction: {e}"))?;
        let density = contracted.density_rooted(&ext);
        if density != step.density {
            return fail(format!(
                "step {i} records density {} but the extension has {}",
                step.density, density
            ));
        }
        let root_edges: Vec<EdgeId> = ext
            .edges()
            .iter()
            .copied()
            .filter(|&e| contracted.edge(e).unwrap().touches(contracted.root()))
            .collect();
        if root_edges.len() != 1 {
            return fail(format!(
                "extension at step {i} has {} root-incident edges",
                root_edges.len()
            ));
        }
        if root_edges[0] != step.edge {
            return fail(format!(
                "step {i} appends {} but the extension's root edge is {}",
                step.edge, root_edges[0]
            ));
        }

        // Branch-density inequality for the fixed subtree.
        let tv = match TreeView::new(&contracted, &step.extension, contracted.root()) {
            Ok(t) => t,
            Err(e) => return fail(format!("extension at step {i} is not a tree: {e}")),
        };
        for &e in &step.extension {
            let branch = tv
                .branch_at_edge(e)
                .map_err(|err| format!("branch lookup failed at step {i}: {err}"))?;
            let branch_density = contracted
                .density_in_tree(&tv, &branch)
                .map_err(|err| format!("branch density failed at step {i}: {err}"))?;
            if branch.len() == step.extension.len() {
                if branch_density != step.density {
                    return fail(format!(
                        "whole-tree branch at step {i} has density {branch_density}, expected {}",
                        step.density
                    ));
                }
            } else if branch_density <= step.density {
                return fail(format!(
                    "proper branch at edge {e} of step {i} has density {branch_density}, \
                     not strictly above {}",
                    step.density
                ));
            }
        }

        // Block bookkeeping.
        if remaining.is_empty() {
            let block = match blocks.next() {
                Some(b) => b,
                None => return fail(format!("step {i} opens a block beyond the recorded ones")),
            };
            if block.extension != step.extension {
                return fail(format!(
                    "block opened at step {i} records a different extension than the step"
                ));
            }
            if block.density != step.density {
                return fail(format!("block density mismatch at step {i}"));
            }
            let edge = inst.edge(step.edge).unwrap();
            let anchor = if tbar.contains_vertex(edge.u) {
                edge.u
            } else {
                edge.v
            };
            if block.anchor != anchor {
                return fail(format!(
                    "block at step {i} records anchor {} but the edge attaches at {anchor}",
                    block.anchor
                ));
            }
            remaining = block.extension.clone();
            open_density = Some(block.density.clone());
        } else {
            if !step.extension.is_subset(&remaining) {
                return fail(format!(
                    "intermediate extension at step {i} leaves the open block"
                ));
            }
            let block_density = open_density.as_ref().unwrap();
            if &step.density <= block_density {
                return fail(format!(
                    "intermediate extension at step {i} has density {} not strictly above \
                     the block density {block_density}",
                    step.density
                ));
            }
        }
        if !remaining.remove(&step.edge) {
            return fail(format!(
                "step {i} appends edge {} outside the open block",
                step.edge
            ));
        }
        appended.push(step.edge);
    }
    if !remaining.is_empty() {
        return fail("the last block was not consumed completely".into());
    }
    if blocks.next().is_some() {
        return fail("trace records more blocks than the steps open".into());
    }
    Ok(())
}

/// Block densities never increase along the trace.
pub fn check_block_densities(trace: &GreedyTrace) -> CheckResult {
    for (i, pair) in trace.blocks.windows(2).enumerate() {
        if pair[0].density < pair[1].density {
            return fail(format!(
                "block {} has density {} below its successor's {}",
                i, pair[0].density, pair[1].density
            ));
        }
    }
    Ok(())
}

/// The first fixed tree's budget guarantee: for every `B <= c(T1)`,
/// `p(ALG(B + slack)) >= d(T1) * B`, with exact equality
/// `p(ALG(c(T1))) = d(T1) * c(T1)` at the full block cost. The slack is the
/// root eccentricity on trees and the longest root path on graphs.
pub fn check_first_block_bound(
    inst: &Instance,
    sol: &IncrementalSolution,
    trace: &GreedyTrace,
    slack: &Rational,
) -> CheckResult {
    let Some(first) = trace.blocks.first() else {
        return Ok(());
    };
    let c1 = inst.edge_set_cost(&first.extension);
    let d1 = &first.density;
    let profile = alg_profile(inst, sol);

    let at_c1 = profile.value_at(&c1);
    if at_c1 != d1 * &c1 {
        return fail(format!(
            "p(ALG(c(T1))) = {at_c1} differs from d(T1) * c(T1) = {}",
            d1 * &c1
        ));
    }
    // The step function only tightens against the linear bound just before
    // its jumps and at B = c(T1), so those points decide all budgets.
    let mut candidates: Vec<Rational> = vec![c1.clone()];
    for b in profile.budgets() {
        let shifted = b - slack;
        if shifted.is_positive() && shifted <= c1 {
            candidates.push(shifted);
        }
    }
    for b in candidates {
        // value just below the jump: strictly smaller budgets only
        let eps_below = |target: &Rational| -> Rational {
            let idx = profile
                .points()
                .partition_point(|(budget, _)| budget < target);
            if idx == 0 {
                Rational::from_integer(0.into())
            } else {
                profile.points()[idx - 1].1.clone()
            }
        };
        let value = if b == c1 {
            profile.value_at(&(&b + slack))
        } else {
            // b = jump - slack: the binding value is the one before the jump
            eps_below(&(&b + slack))
        };
        if value < d1 * &b {
            return fail(format!(
                "p(ALG({b} + slack)) = {value} is below d(T1) * {b} = {}",
                d1 * &b
            ));
        }
    }
    Ok(())
}

/// Graph-greedy block chain: the extensions partition the ordering, are
/// pairwise disjoint trees, and their densities over the final union tree
/// are nonincreasing and match the recorded values.
pub fn check_block_chain_over_final_tree(
    inst: &Instance,
    sol: &IncrementalSolution,
    trace: &GreedyTrace,
) -> CheckResult {
    let mut union: BTreeSet<EdgeId> = BTreeSet::new();
    for (i, block) in trace.blocks.iter().enumerate() {
        for &e in &block.extension {
            if !union.insert(e) {
                return fail(format!("blocks {i} and an earlier one share edge {e}"));
            }
        }
    }
    if union != sol.edge_set() {
        return fail("blocks do not partition the ordering's edge set".into());
    }
    if union.is_empty() {
        return Ok(());
    }
    let final_tv = TreeView::new(inst, &union, inst.root())
        .map_err(|e| format!("final union is not a rooted tree: {e}"))?;
    let mut last: Option<Rational> = None;
    for (i, block) in trace.blocks.iter().enumerate() {
        let density = inst
            .density_in_tree(&final_tv, &block.extension)
            .map_err(|e| format!("block {i} density over the final tree failed: {e}"))?;
        if density != block.density {
            return fail(format!(
                "block {i} records density {} but measures {density} over the final tree",
                block.density
            ));
        }
        let verts = inst.edge_set_vertices(&block.extension);
        if final_tv.anchor_of(&verts) != block.anchor {
            return fail(format!("block {i} anchor mismatch over the final tree"));
        }
        if let Some(prev) = &last {
            if &density > prev {
                return fail(format!(
                    "block {i} density {density} exceeds its predecessor's {prev}"
                ));
            }
        }
        last = Some(density);
    }
    Ok(())
}

/// Scaling-trace invariants: budgets double from the eccentricity, each
/// tree obeys its budget and attains the exact optimum prize, the appended
/// edges concatenate to the ordering, and the proof chain
/// `p(ALG((2^(k+1) - 1) chi)) >= p(OPT(2^k chi))` holds at every iteration.
pub fn check_scaling_trace(
    inst: &Instance,
    sol: &IncrementalSolution,
    trace: &ScalingTrace,
    frontier: &ParetoFrontier,
) -> CheckResult {
    let chi = inst.eccentricity();
    let profile = alg_profile(inst, sol);
    let mut concat: Vec<EdgeId> = Vec::new();
    for (k, step) in trace.steps.iter().enumerate() {
        if step.iteration != k {
            return fail(format!("scaling step {k} records iteration {}", step.iteration));
        }
        let budget = pow2(k as u32) * &chi;
        if step.budget != budget {
            return fail(format!(
                "scaling step {k} records budget {} instead of {budget}",
                step.budget
            ));
        }
        let cost = inst.edge_set_cost(&step.tree);
        if cost > budget {
            return fail(format!(
                "scaling step {k} tree costs {cost}, above its budget {budget}"
            ));
        }
        let opt = frontier.opt_prize(&budget);
        if step.prize != opt {
            return fail(format!(
                "scaling step {k} tree collects {} but the optimum at its budget is {opt}",
                step.prize
            ));
        }
        concat.extend(step.appended.iter().copied());

        let horizon = (pow2(k as u32 + 1) - Rational::one()) * &chi;
        let reached = profile.value_at(&horizon);
        if reached < opt {
            return fail(format!(
                "p(ALG({horizon})) = {reached} falls below p(OPT({budget})) = {opt} \
                 at iteration {k}"
            ));
        }
    }
    if concat != sol.order() {
        return fail("appended scaling edges do not concatenate to the ordering".into());
    }
    Ok(())
}

/// Frontier self-bound under budget scaling: for every budget `B`,
/// `p(OPT(B + h * chi)) >= (1 - 2^(-h)) / delta * p(OPT(delta * B))`.
/// Checked at all frontier costs and their `1/delta` multiples, which are
/// exactly the jump points of the two sides.
pub fn check_frontier_scaling_bound(
    frontier: &ParetoFrontier,
    chi: &Rational,
    delta: &Rational,
    h: u32,
) -> CheckResult {
    let factor = (Rational::one() - Rational::new(1.into(), (1i64 << h).into())) / delta;
    let mut budgets: BTreeSet<Rational> = BTreeSet::new();
    for f in frontier.costs() {
        budgets.insert(f.clone());
        budgets.insert(f / delta);
    }
    for b in budgets {
        let lhs = frontier.opt_prize(&(&b + &(chi * Rational::from_integer(h.into()))));
        let rhs = &factor * frontier.opt_prize(&(delta * &b));
        if lhs < rhs {
            return fail(format!(
                "p(OPT({b} + {h} chi)) = {lhs} is below {rhs} for delta = {delta}"
            ));
        }
    }
    Ok(())
}
