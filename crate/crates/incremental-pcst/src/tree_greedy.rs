//! Density-greedy ordering for tree instances.
//!
//! The maximum density of a rooted subtree is found by Dinkelbach iteration:
//! repeatedly maximize `p(T) - d * c(T)` with a bottom-up tree DP and update
//! `d` to the maximizer's density until the optimum over nonempty trees is
//! exactly zero. Exact rationals make the stopping rule tie-exact. The
//! min-max subtree (inclusion-wise minimal tree of maximum density) then
//! falls out of the DP with a strict inclusion rule: a child branch joins
//! only when its contribution is strictly positive, so zero-contribution
//! branches (in particular zero-prize leaves) are never picked up.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, IncrementalSolution, Instance, RootedSubtree, TreeView, VertexId};
use crate::rational::Rational;

/// One appended edge together with the min-max subtree fixed at that moment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    pub edge: EdgeId,
    /// Density of the fixed min-max subtree in the contracted graph of its
    /// iteration; equals the anchored density of its extension.
    pub density: Rational,
    /// Extension of the fixed min-max subtree, as original edge ids.
    pub extension: BTreeSet<EdgeId>,
}

/// A maximal run of iterations that consumes one fixed extension completely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBlock {
    pub extension: BTreeSet<EdgeId>,
    pub density: Rational,
    /// Vertex at which the extension attaches to the earlier prefix.
    pub anchor: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GreedyTrace {
    pub steps: Vec<TraceStep>,
    pub blocks: Vec<TraceBlock>,
}

/// A minimal maximum-density rooted subtree plus the data the greedy loop
/// needs: the attained density and the unique root-incident edge.
struct MinMax {
    edges: BTreeSet<EdgeId>,
    density: Rational,
    root_edge: EdgeId,
}

/// Runs the DP for a fixed density `d`, returning `g(v)` per tree position:
/// the best value `p - d*c` of a subtree hanging at `v` (including `v`),
/// where only strictly positive child contributions are taken.
fn dp_values(tv: &TreeView, d: &Rational) -> Vec<Rational> {
    let n = tv.node_count();
    let mut g = vec![Rational::zero(); n];
    for p in (0..n).rev() {
        let mut val = tv.prize_at(p).clone();
        for &(c, e) in tv.children_at(p) {
            let contrib = &g[c] - d * tv.edge_cost(e).unwrap();
            if contrib.is_positive() {
                val += contrib;
            }
        }
        g[p] = val;
    }
    g
}

/// Collects the strictly-positive-contribution subtree below position `start`.
fn strict_edges_below(
    tv: &TreeView,
    g: &[Rational],
    d: &Rational,
    start: usize,
    acc: &mut BTreeSet<EdgeId>,
) {
    let mut stack = vec![start];
    while let Some(p) = stack.pop() {
        for &(c, e) in tv.children_at(p) {
            if (&g[c] - d * tv.edge_cost(e).unwrap()).is_positive() {
                acc.insert(e);
                stack.push(c);
            }
        }
    }
}

/// The best nonempty rooted subtree for the current density, as
/// (value, edges). Used only while the Dinkelbach iteration is running.
fn best_nonempty(
    tv: &TreeView,
    g: &[Rational],
    d: &Rational,
) -> Option<(Rational, BTreeSet<EdgeId>)> {
    let root_children = tv.children_at(0);
    if root_children.is_empty() {
        return None;
    }
    let vals: Vec<(usize, EdgeId, Rational)> = root_children
        .iter()
        .map(|&(c, e)| (c, e, &g[c] - d * tv.edge_cost(e).unwrap()))
        .collect();
    let mut edges = BTreeSet::new();
    if vals.iter().any(|(_, _, v)| v.is_positive()) {
        let mut total = Rational::zero();
        for (c, e, v) in &vals {
            if v.is_positive() {
                total += v;
                edges.insert(*e);
                strict_edges_below(tv, g, d, *c, &mut edges);
            }
        }
        Some((total, edges))
    } else {
        let (c, e, v) = vals
            .into_iter()
            .min_by(|(_, ea, va), (_, eb, vb)| vb.cmp(va).then(ea.cmp(eb)))
            .unwrap();
        edges.insert(e);
        strict_edges_below(tv, g, d, c, &mut edges);
        Some((v, edges))
    }
}

fn min_max_of_tree(inst: &Instance) -> Result<Option<MinMax>> {
    if !inst.is_tree() {
        return Err(Error::NotATree);
    }
    if !inst.total_prize().is_positive() {
        return Ok(None);
    }
    let all_edges: BTreeSet<EdgeId> = inst.edges().map(|e| e.id).collect();
    let tv = TreeView::new(inst, &all_edges, inst.root())?;

    // Dinkelbach: the densities of the successive maximizers strictly
    // increase and range over the finite set of subtree densities.
    let mut d = Rational::zero();
    loop {
        let g = dp_values(&tv, &d);
        let (value, edges) = best_nonempty(&tv, &g, &d).expect("positive prize needs edges");
        debug_assert!(!value.is_negative());
        if value.is_zero() {
            break;
        }
        let tree = inst.rooted_subtree(&edges).expect("DP yields rooted trees");
        d = tree.prize() / tree.cost();
    }

    // Extraction at d*: root edges with exactly zero slack are the root
    // edges of the min-max subtrees; keep the lowest edge id.
    let g = dp_values(&tv, &d);
    let mut candidate: Option<(EdgeId, usize)> = None;
    for &(c, e) in tv.children_at(0) {
        let slack = &g[c] - &d * tv.edge_cost(e).unwrap();
        debug_assert!(
            !slack.is_positive(),
            "no root branch may beat the maximum density"
        );
        if slack.is_zero() && candidate.is_none_or(|(be, _)| e < be) {
            candidate = Some((e, c));
        }
    }
    let (root_edge, child) = candidate.expect("maximum density is attained");
    let mut edges = BTreeSet::new();
    edges.insert(root_edge);
    strict_edges_below(&tv, &g, &d, child, &mut edges);
    Ok(Some(MinMax {
        edges,
        density: d,
        root_edge,
    }))
}

/// A rooted subtree of maximum density together with that density, for a
/// tree instance. Returns the empty subtree with density zero when the
/// instance carries no prize. Among ties the inclusion-wise minimal tree
/// with the lowest root-incident edge id is returned.
pub fn max_density_rooted_subtree(inst: &Instance) -> Result<(RootedSubtree, Rational)> {
    match min_max_of_tree(inst)? {
        None => Ok((inst.empty_subtree(), Rational::zero())),
        Some(mm) => Ok((inst.rooted_subtree(&mm.edges)?, mm.density)),
    }
}

/// The min-max subtree of a tree instance: an inclusion-wise minimal rooted
/// subtree of maximum density. It has a single branch at the root.
pub fn min_max_subtree_tree(inst: &Instance) -> Result<RootedSubtree> {
    match min_max_of_tree(inst)? {
        None => Err(Error::NoPrizeLeft),
        Some(mm) => inst.rooted_subtree(&mm.edges),
    }
}

/// The density-greedy ordering of a tree instance: while prize remains, fix
/// a min-max subtree of the contracted instance and append the original
/// edge behind its unique root-incident edge.
pub fn density_greedy_tree(inst: &Instance) -> Result<(IncrementalSolution, GreedyTrace)> {
    if !inst.is_tree() {
        return Err(Error::NotATree);
    }
    let mut appended: Vec<EdgeId> = Vec::new();
    let mut trace = GreedyTrace::default();
    let mut block_remaining: BTreeSet<EdgeId> = BTreeSet::new();
    loop {
        let prefix: BTreeSet<EdgeId> = appended.iter().copied().collect();
        let tbar = inst
            .rooted_subtree(&prefix)
            .expect("prefix stays a rooted subtree");
        let cg = inst.contract(&tbar)?;
        if !cg.total_prize().is_positive() {
            break;
        }
        let contracted = cg.to_instance();
        let mm = min_max_of_tree(&contracted)?.expect("prize remains");

        let edge = inst.edge(mm.root_edge).unwrap();
        if block_remaining.is_empty() {
            let anchor = if tbar.contains_vertex(edge.u) {
                edge.u
            } else {
                edge.v
            };
            trace.blocks.push(TraceBlock {
                extension: mm.edges.clone(),
                density: mm.density.clone(),
                anchor,
            });
            block_remaining = mm.edges.clone();
        } else {
            debug_assert!(
                mm.edges.is_subset(&block_remaining),
                "a fixed extension may not leave the open block"
            );
        }
        block_remaining.remove(&mm.root_edge);

        trace.steps.push(TraceStep {
            index: trace.steps.len(),
            edge: mm.root_edge,
            density: mm.density,
            extension: mm.edges,
        });
        appended.push(edge.id);
    }
    let solution = IncrementalSolution::new(inst, appended)?;
    Ok((solution, trace))
}
