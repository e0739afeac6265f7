//! Capacity scaling: exact budgeted subproblems at doubling budgets.
//!
//! Iteration `i` solves the budget problem at `2^i * chi` exactly (by
//! enumeration), orders the winning tree with the tree greedy, and appends
//! that ordering while skipping duplicates and cycle-closing edges, so the
//! overall ordering keeps the prefix-subtree property. The loop stops once
//! all positive-prize vertices are spanned.

use std::collections::BTreeSet;

use num::Zero;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, IncrementalSolution, Instance, RootedSubtree, UnionFind};
use crate::graph_greedy::enumerate_rooted_subtrees;
use crate::rational::{pow2, Rational};
use crate::tree_greedy::density_greedy_tree;

/// One scaling iteration: the budget, the exact budgeted optimum, and the
/// edges that actually survived the de-duplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingStep {
    pub iteration: usize,
    pub budget: Rational,
    pub tree: BTreeSet<EdgeId>,
    pub prize: Rational,
    pub appended: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalingTrace {
    pub steps: Vec<ScalingStep>,
}

/// The nondominated (cost, prize) pairs over all rooted subtrees: the graph
/// of the exact budget-to-optimal-prize function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFrontier {
    points: Vec<(Rational, Rational)>,
}

impl ParetoFrontier {
    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// `p(OPT(b))`: the best prize available within budget `b`.
    pub fn opt_prize(&self, b: &Rational) -> Rational {
        let idx = self.points.partition_point(|(cost, _)| cost <= b);
        if idx == 0 {
            Rational::zero()
        } else {
            self.points[idx - 1].1.clone()
        }
    }

    /// Budgets at which the optimum jumps; sufficient for checking any
    /// `for all budgets` inequality against a nondecreasing left-hand side.
    pub fn costs(&self) -> impl Iterator<Item = &Rational> {
        self.points.iter().map(|(c, _)| c)
    }

    pub fn max_cost(&self) -> &Rational {
        &self.points.last().unwrap().0
    }

    pub fn max_prize(&self) -> &Rational {
        &self.points.last().unwrap().1
    }
}

/// A rooted subtree of maximum prize among those of cost at most `budget`.
/// Ties prefer minimal cost, then lexicographic edge ids.
pub fn optimal_budget_subtree(
    inst: &Instance,
    budget: &Rational,
    max_edges: usize,
) -> Result<RootedSubtree> {
    let mut best: Option<RootedSubtree> = None;
    for tree in enumerate_rooted_subtrees(inst, max_edges)?.with_cost_cap(budget.clone()) {
        match &best {
            None => best = Some(tree),
            Some(b) => {
                let better = tree
                    .prize()
                    .cmp(b.prize())
                    .then_with(|| b.cost().cmp(tree.cost()))
                    .then_with(|| {
                        let bids: Vec<EdgeId> = b.edges().iter().copied().collect();
                        let ids: Vec<EdgeId> = tree.edges().iter().copied().collect();
                        bids.cmp(&ids)
                    })
                    .is_gt();
                if better {
                    best = Some(tree);
                }
            }
        }
    }
    // The empty tree always fits, even for negative budgets.
    Ok(best.unwrap_or_else(|| inst.empty_subtree()))
}

/// The exact optimum profile by full enumeration.
pub fn pareto_frontier(inst: &Instance, max_edges: usize) -> Result<ParetoFrontier> {
    let mut pairs: Vec<(Rational, Rational)> = enumerate_rooted_subtrees(inst, max_edges)?
        .map(|t| (t.cost().clone(), t.prize().clone()))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let mut points: Vec<(Rational, Rational)> = Vec::new();
    for (cost, prize) in pairs {
        match points.last() {
            None => points.push((cost, prize)),
            Some((_, best)) if prize > *best => points.push((cost, prize)),
            _ => {}
        }
    }
    Ok(ParetoFrontier { points })
}

/// The capacity-scaling ordering. Returns the empty ordering when no prize
/// exists (equivalently when the eccentricity is zero, where the budget
/// ladder never grows).
pub fn capacity_scaling(
    inst: &Instance,
    max_edges: usize,
) -> Result<(IncrementalSolution, ScalingTrace)> {
    if inst.edge_count() > max_edges {
        return Err(Error::InstanceTooLarge {
            edges: inst.edge_count(),
            bound: max_edges,
        });
    }
    let mut trace = ScalingTrace::default();
    let prize_vertices = inst.prize_vertices();
    let chi = inst.eccentricity();
    if prize_vertices.is_empty() || chi.is_zero() {
        return Ok((IncrementalSolution::new(inst, Vec::new())?, trace));
    }

    let mut order: Vec<EdgeId> = Vec::new();
    let mut uf = UnionFind::new();
    let root = inst.root();
    let mut iteration = 0usize;
    loop {
        let budget = pow2(iteration as u32) * &chi;
        let tree = optimal_budget_subtree(inst, &budget, max_edges)?;
        let mut appended = Vec::new();
        if !tree.is_empty() {
            let sub = inst.restrict_to_tree(tree.edges())?;
            let (inner, _) = density_greedy_tree(&sub)?;
            debug_assert_eq!(
                inner.len(),
                tree.edge_count(),
                "a cost-minimal optimum has no zero-prize leaves"
            );
            for &e in inner.order() {
                let edge = inst.edge(e).unwrap();
                // Skip rule: drop edges already present and edges that close
                // a cycle in the prefix forest; everything else attaches.
                if uf.union(edge.u, edge.v) {
                    appended.push(e);
                    order.push(e);
                }
            }
        }
        trace.steps.push(ScalingStep {
            iteration,
            budget,
            tree: tree.edges().clone(),
            prize: tree.prize().clone(),
            appended,
        });
        if prize_vertices.iter().all(|&v| uf.same(root, v)) {
            break;
        }
        iteration += 1;
        assert!(
            iteration <= 2 * inst.edge_count() + 64,
            "budget ladder must span all prize vertices"
        );
    }
    let solution = IncrementalSolution::new(inst, order)?;
    Ok((solution, trace))
}
