//! Density-greedy ordering for general graphs, backed by an exact
//! (exponential) maximum-density oracle.
//!
//! On general graphs min-max subtrees are not closed under union and
//! intersection, so fixing one per appended edge can strand a partially
//! built tree. The loop here therefore fixes a min-max subtree of the
//! contracted graph, orders *all* of its edges at once by running the tree
//! greedy on the extension, appends that run, and only then contracts.
//!
//! The oracle enumerates every rooted subtree, which is exact and viable at
//! desk scale; [`enumerate_rooted_subtrees`] refuses instances above the
//! requested edge bound instead of degrading.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, IncrementalSolution, Instance, RootedSubtree, VertexId};
use crate::rational::Rational;
use crate::tree_greedy::{density_greedy_tree, GreedyTrace, TraceBlock, TraceStep};

struct Frame {
    edges: BTreeSet<EdgeId>,
    vertices: BTreeSet<VertexId>,
    cost: Rational,
    prize: Rational,
    banned: BTreeSet<EdgeId>,
    frontier: Vec<EdgeId>,
    next: usize,
}

/// Streams every rooted subtree of the instance exactly once, the empty
/// tree first, by frontier expansion: each frame branches on the eligible
/// edges in id order, and an edge skipped at a branch point is banned for
/// the rest of that subtree of the search, which kills duplicates.
pub struct SubtreeEnumeration<'a> {
    inst: &'a Instance,
    stack: Vec<Frame>,
    started: bool,
    cost_cap: Option<Rational>,
    max_tree_edges: Option<usize>,
}

impl<'a> SubtreeEnumeration<'a> {
    /// Only emit subtrees of total cost at most `cap`.
    pub fn with_cost_cap(mut self, cap: Rational) -> Self {
        assert!(!self.started, "set caps before iterating");
        self.cost_cap = Some(cap);
        self
    }

    /// Only emit subtrees with at most `cap` edges.
    pub fn with_max_tree_edges(mut self, cap: usize) -> Self {
        assert!(!self.started, "set caps before iterating");
        self.max_tree_edges = Some(cap);
        self
    }

    fn frontier(&self, frame_edges: usize, verts: &BTreeSet<VertexId>, cost: &Rational, banned: &BTreeSet<EdgeId>) -> Vec<EdgeId> {
        if self
            .max_tree_edges
            .is_some_and(|cap| frame_edges >= cap)
        {
            return Vec::new();
        }
        self.inst
            .edges()
            .filter(|e| {
                if banned.contains(&e.id) || e.is_loop() {
                    return false;
                }
                if verts.contains(&e.u) == verts.contains(&e.v) {
                    return false; // either detached or closes a cycle
                }
                match &self.cost_cap {
                    Some(cap) => (cost + &e.cost) <= cap.clone(),
                    None => true,
                }
            })
            .map(|e| e.id)
            .collect()
    }
}

impl<'a> Iterator for SubtreeEnumeration<'a> {
    type Item = RootedSubtree;

    fn next(&mut self) -> Option<RootedSubtree> {
        if !self.started {
            self.started = true;
            let mut vertices = BTreeSet::new();
            vertices.insert(self.inst.root());
            let frontier = self.frontier(0, &vertices, &Rational::zero(), &BTreeSet::new());
            self.stack.push(Frame {
                edges: BTreeSet::new(),
                vertices,
                cost: Rational::zero(),
                prize: Rational::zero(),
                banned: BTreeSet::new(),
                frontier,
                next: 0,
            });
            return Some(self.inst.empty_subtree());
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.next >= top.frontier.len() {
                self.stack.pop();
                continue;
            }
            let eid = top.frontier[top.next];
            top.next += 1;

            let edge = self.inst.edge(eid).unwrap().clone();
            let far = if top.vertices.contains(&edge.u) {
                edge.v
            } else {
                edge.u
            };
            let mut edges = top.edges.clone();
            edges.insert(eid);
            let mut vertices = top.vertices.clone();
            vertices.insert(far);
            let cost = &top.cost + &edge.cost;
            let prize = &top.prize + self.inst.prize(far);
            let mut banned = top.banned.clone();
            banned.extend(top.frontier[..top.next - 1].iter().copied());

            let frontier = self.frontier(edges.len(), &vertices, &cost, &banned);
            let subtree = RootedSubtree::from_parts(
                edges.clone(),
                {
                    let mut vs = vertices.clone();
                    vs.insert(self.inst.root());
                    vs
                },
                cost.clone(),
                prize.clone(),
            );
            self.stack.push(Frame {
                edges,
                vertices,
                cost,
                prize,
                banned,
                frontier,
                next: 0,
            });
            return Some(subtree);
        }
    }
}

/// All rooted subtrees of the instance, each exactly once, empty tree
/// included. Fails when the instance exceeds `max_edges`.
pub fn enumerate_rooted_subtrees(inst: &Instance, max_edges: usize) -> Result<SubtreeEnumeration<'_>> {
    if inst.edge_count() > max_edges {
        return Err(Error::InstanceTooLarge {
            edges: inst.edge_count(),
            bound: max_edges,
        });
    }
    Ok(SubtreeEnumeration {
        inst,
        stack: Vec::new(),
        started: false,
        cost_cap: None,
        max_tree_edges: None,
    })
}

/// An inclusion-wise minimal rooted subtree of maximum density, found by
/// full enumeration. Ties are broken deterministically by lowest
/// root-incident edge id, then fewest edges, then lexicographic edge ids;
/// this refinement always lands on an inclusion-minimal tree and agrees
/// with the tree algorithm's choice on tree instances.
pub fn min_max_subtree_exact(inst: &Instance, max_edges: usize) -> Result<RootedSubtree> {
    if !inst.total_prize().is_positive() {
        return Err(Error::NoPrizeLeft);
    }
    let root = inst.root();
    let mut best: Option<(Rational, EdgeId, usize, Vec<EdgeId>, RootedSubtree)> = None;
    for tree in enumerate_rooted_subtrees(inst, max_edges)? {
        if tree.is_empty() {
            continue;
        }
        let density = inst.density_rooted(&tree);
        if !density.is_positive() {
            continue;
        }
        let root_edge = tree
            .edges()
            .iter()
            .copied()
            .filter(|&e| inst.edge(e).unwrap().touches(root))
            .min()
            .expect("rooted subtree touches the root");
        let replace = match &best {
            None => true,
            Some((bd, bre, bn, bids, _)) => {
                let ids: Vec<EdgeId> = tree.edges().iter().copied().collect();
                density
                    .cmp(bd)
                    .then_with(|| bre.cmp(&root_edge))
                    .then_with(|| bn.cmp(&tree.edge_count()))
                    .then_with(|| bids.cmp(&ids))
                    .is_gt()
            }
        };
        if replace {
            let ids = tree.edges().iter().copied().collect();
            best = Some((density, root_edge, tree.edge_count(), ids, tree));
        }
    }
    best.map(|(_, _, _, _, t)| t).ok_or(Error::NoPrizeLeft)
}

/// The density-greedy ordering for a general graph: fix a min-max subtree
/// of the contracted graph, order its whole extension with the tree greedy,
/// append, contract, repeat until no prize remains.
pub fn density_greedy_graph(
    inst: &Instance,
    max_edges: usize,
) -> Result<(IncrementalSolution, GreedyTrace)> {
    if inst.edge_count() > max_edges {
        return Err(Error::InstanceTooLarge {
            edges: inst.edge_count(),
            bound: max_edges,
        });
    }
    let mut appended: Vec<EdgeId> = Vec::new();
    let mut trace = GreedyTrace::default();
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
        let fixed = min_max_subtree_exact(&contracted, max_edges)?;
        let extension = cg.extend(fixed.edges())?;

        let root_edges: Vec<EdgeId> = fixed
            .edges()
            .iter()
            .copied()
            .filter(|&e| contracted.edge(e).unwrap().touches(contracted.root()))
            .collect();
        debug_assert_eq!(root_edges.len(), 1, "min-max subtree has one root branch");
        let attach = inst.edge(root_edges[0]).unwrap();
        let anchor = if tbar.contains_vertex(attach.u) {
            attach.u
        } else {
            attach.v
        };

        let sub = contracted.restrict_to_tree(fixed.edges())?;
        let (inner, inner_trace) = density_greedy_tree(&sub)?;
        debug_assert_eq!(
            inner.len(),
            fixed.edge_count(),
            "a min-max subtree has no zero-contribution branches"
        );
        for step in inner_trace.steps {
            trace.steps.push(TraceStep {
                index: trace.steps.len(),
                edge: step.edge,
                density: step.density,
                extension: step.extension,
            });
        }
        trace.blocks.push(TraceBlock {
            extension,
            density: contracted.density_rooted(&fixed),
            anchor,
        });
        appended.extend_from_slice(inner.order());
    }
    let solution = IncrementalSolution::new(inst, appended)?;
    Ok((solution, trace))
}

/// Reorders a block sequence so that block densities are nonincreasing,
/// using the switch/merge rule: two consecutive blocks in the wrong order
/// are switched when they attach at the same vertex and merged into one
/// block otherwise. Intended for traces produced by plug-in approximate
/// oracles; exact traces come out already ordered. Merged blocks are
/// ordered by rerunning the tree greedy on the union relative to its
/// prefix, and every block's edge order is re-derived the same way.
pub fn postprocess_density_order(
    inst: &Instance,
    blocks: &[TraceBlock],
) -> Result<(IncrementalSolution, Vec<TraceBlock>)> {
    let mut blocks: Vec<TraceBlock> = blocks.to_vec();
    loop {
        let bad = (0..blocks.len().saturating_sub(1))
            .find(|&i| blocks[i].density < blocks[i + 1].density);
        let Some(i) = bad else { break };
        if blocks[i].anchor == blocks[i + 1].anchor {
            blocks.swap(i, i + 1);
        } else {
            let mut merged: BTreeSet<EdgeId> = blocks[i].extension.clone();
            merged.extend(blocks[i + 1].extension.iter().copied());
            let prefix: BTreeSet<EdgeId> = blocks[..i]
                .iter()
                .flat_map(|b| b.extension.iter().copied())
                .collect();
            let tbar = inst.rooted_subtree(&prefix)?;
            let cg = inst.contract(&tbar)?;
            let contracted = cg.to_instance();
            let tree = contracted.rooted_subtree(&merged)?;
            let density = contracted.density_rooted(&tree);
            let anchor = blocks[i].anchor;
            blocks[i] = TraceBlock {
                extension: merged,
                density,
                anchor,
            };
            blocks.remove(i + 1);
        }
    }

    // Re-derive the edge order of every block relative to its prefix.
    let mut order: Vec<EdgeId> = Vec::new();
    for block in &blocks {
        let prefix: BTreeSet<EdgeId> = order.iter().copied().collect();
        let tbar = inst.rooted_subtree(&prefix)?;
        let cg = inst.contract(&tbar)?;
        let contracted = cg.to_instance();
        let sub = contracted.restrict_to_tree(&block.extension)?;
        let (inner, _) = density_greedy_tree(&sub)?;
        let mut got: BTreeSet<EdgeId> = inner.order().iter().copied().collect();
        // Zero-prize remainders of approximate blocks still have to be laid
        // down to keep later anchors reachable; append them in tree order.
        if got.len() < block.extension.len() {
            for &e in &block.extension {
                if !got.contains(&e) {
                    got.insert(e);
                }
            }
            let tv = crate::graph::TreeView::new(&contracted, &block.extension, contracted.root())?;
            let mut rest: Vec<EdgeId> = Vec::new();
            let mut placed: BTreeSet<EdgeId> = inner.order().iter().copied().collect();
            let mut queue: Vec<EdgeId> = Vec::new();
            loop {
                queue.clear();
                for e in tv.edge_ids() {
                    if !placed.contains(&e) {
                        let upper = tv.upper_endpoint(e)?;
                        let covered = upper == contracted.root()
                            || placed
                                .iter()
                                .any(|&pe| contracted.edge(pe).unwrap().touches(upper));
                        if covered {
                            queue.push(e);
                        }
                    }
                }
                if queue.is_empty() {
                    break;
                }
                for &e in &queue {
                    placed.insert(e);
                    rest.push(e);
                }
            }
            order.extend_from_slice(inner.order());
            order.extend(rest);
        } else {
            order.extend_from_slice(inner.order());
        }
    }
    let solution = IncrementalSolution::new(inst, order)?;
    Ok((solution, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::tree_greedy;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn e(i: u32) -> EdgeId {
        EdgeId(i)
    }

    fn ids(list: &[u32]) -> BTreeSet<EdgeId> {
        list.iter().map(|&i| e(i)).collect()
    }

    fn triangle() -> Instance {
        Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1)), (v(2), rat_int(1))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(2), rat_int(1)),
                (e(2), v(1), v(2), rat_int(1)),
            ],
        )
        .unwrap()
    }

    /// Two overlapping dense trees sharing the root edge: r - m, then from m
    /// a direct edge to hub x (edge 1) or a detour through u (edges 3, 4),
    /// prize 3 behind x (edge 2) and prize 2 behind u (edge 5).
    fn overlapping_min_max(detour_cost: Rational) -> Instance {
        Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(0)), // m
                (v(2), rat_int(0)), // x
                (v(3), rat_int(0)), // u
                (v(4), rat_int(3)),
                (v(5), rat_int(2)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
                (e(2), v(2), v(4), rat_int(1)),
                (e(3), v(1), v(3), detour_cost),
                (e(4), v(3), v(2), rat_int(1)),
                (e(5), v(3), v(5), rat_int(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_six_rooted_subtrees() {
        // Hand enumeration of connected acyclic edge sets containing r:
        // {}, {0}, {1}, {0,1}, {0,2}, {1,2}.
        let inst = triangle();
        let trees: Vec<BTreeSet<EdgeId>> = enumerate_rooted_subtrees(&inst, 20)
            .unwrap()
            .map(|t| t.edges().clone())
            .collect();
        assert_eq!(trees.len(), 6);
        let expect = vec![
            ids(&[]),
            ids(&[0]),
            ids(&[0, 1]),
            ids(&[0, 2]),
            ids(&[1]),
            ids(&[1, 2]),
        ];
        let mut sorted = trees.clone();
        sorted.sort();
        assert_eq!(sorted, expect);
    }

    #[test]
    fn single_edge_has_two_subtrees() {
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![(e(0), v(0), v(1), rat_int(1))],
        )
        .unwrap();
        assert_eq!(enumerate_rooted_subtrees(&inst, 20).unwrap().count(), 2);
    }

    #[test]
    fn enumeration_skips_loops_and_parallel_duplicates() {
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(1), rat_int(2)),
                (e(2), v(0), v(0), rat_int(1)),
            ],
        )
        .unwrap();
        // empty, {0}, {1}: a parallel pair closes a cycle, the loop never
        // becomes eligible.
        let trees: Vec<_> = enumerate_rooted_subtrees(&inst, 20).unwrap().collect();
        assert_eq!(trees.len(), 3);
    }

    #[test]
    fn enumeration_caps() {
        let inst = triangle();
        let within: Vec<_> = enumerate_rooted_subtrees(&inst, 20)
            .unwrap()
            .with_cost_cap(rat_int(1))
            .collect();
        assert_eq!(within.len(), 3); // empty, {0}, {1}
        let small: Vec<_> = enumerate_rooted_subtrees(&inst, 20)
            .unwrap()
            .with_max_tree_edges(1)
            .collect();
        assert_eq!(small.len(), 3);
        assert!(matches!(
            enumerate_rooted_subtrees(&inst, 2),
            Err(Error::InstanceTooLarge { edges: 3, bound: 2 })
        ));
    }

    #[test]
    fn overlapping_unit_costs_picks_smaller_min_max() {
        // With unit costs both the direct tree {0,1,2} and the detour tree
        // {0,2,3,4,5} attain the maximum density 1; the smaller one wins.
        let inst = overlapping_min_max(rat_int(1));
        let trees: Vec<BTreeSet<EdgeId>> = enumerate_rooted_subtrees(&inst, 20)
            .unwrap()
            .map(|t| t.edges().clone())
            .collect();
        assert!(trees.contains(&ids(&[0, 1, 2])));
        assert!(trees.contains(&ids(&[0, 2, 3, 4, 5])));
        let mm = min_max_subtree_exact(&inst, 20).unwrap();
        assert_eq!(mm.edges(), &ids(&[0, 1, 2]));
        assert_eq!(inst.density_rooted(&mm), rat_int(1));
    }

    #[test]
    fn overlapping_discounted_detour_ties_at_higher_density() {
        // Reducing the detour edge to 3/4 lifts the best density to 20/19,
        // attained by exactly two trees; the deterministic tie rule picks
        // the lexicographically smaller one.
        let inst = overlapping_min_max(rat(3, 4));
        let best: Vec<BTreeSet<EdgeId>> = enumerate_rooted_subtrees(&inst, 20)
            .unwrap()
            .filter(|t| !t.is_empty() && inst.density_rooted(t) == rat(20, 19))
            .map(|t| t.edges().clone())
            .collect();
        assert_eq!(best.len(), 2);
        assert!(best.contains(&ids(&[0, 1, 2, 3, 5])));
        assert!(best.contains(&ids(&[0, 2, 3, 4, 5])));
        let mm = min_max_subtree_exact(&inst, 20).unwrap();
        assert_eq!(mm.edges(), &ids(&[0, 1, 2, 3, 5]));
    }

    #[test]
    fn graph_greedy_degenerates_to_tree_greedy_on_trees() {
        // Tie between a two-edge density-1 tree with a low root edge id and
        // a single density-1 edge with a high id: both algorithms must pick
        // the same block first.
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat(1, 2)),
                (v(2), rat(3, 2)),
                (v(3), rat_int(1)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
                (e(5), v(0), v(3), rat_int(1)),
            ],
        )
        .unwrap();
        let (tree_sol, tree_trace) = tree_greedy::density_greedy_tree(&inst).unwrap();
        let (graph_sol, graph_trace) = density_greedy_graph(&inst, 20).unwrap();
        assert_eq!(tree_sol.order(), graph_sol.order());
        assert_eq!(tree_sol.order()[0], e(0));
        assert_eq!(tree_trace.blocks.len(), graph_trace.blocks.len());
        for (a, b) in tree_trace.blocks.iter().zip(graph_trace.blocks.iter()) {
            assert_eq!(a.extension, b.extension);
            assert_eq!(a.density, b.density);
        }
    }

    #[test]
    fn greedy_orders_whole_fixed_tree_before_moving_on() {
        // On the discounted-detour instance the naive per-edge refixing
        // would jump to the direct tree after the shared root edge; the
        // graph greedy must lay down a fixed tree completely.
        let inst = overlapping_min_max(rat(3, 4));
        let (sol, trace) = density_greedy_graph(&inst, 20).unwrap();
        let first_block = &trace.blocks[0];
        let block_len = first_block.extension.len();
        let laid: BTreeSet<EdgeId> = sol.order()[..block_len].iter().copied().collect();
        assert_eq!(&laid, &first_block.extension);
        assert!(IncrementalSolution::new(&inst, sol.order().to_vec()).is_ok());
    }

    #[test]
    fn hub_bypass_fixes_the_hub_tree_first() {
        // The hub tree (cost-3 edge plus the three unit edges) is the unique
        // densest subtree; the greedy lays it down starting with the cost-3
        // edge, then collects the cheap side vertex.
        let inst = crate::instances::gen_hub_bypass(&rat(1, 10)).unwrap();
        let mm = min_max_subtree_exact(&inst, 20).unwrap();
        assert_eq!(mm.edges(), &ids(&[0, 1, 2, 3]));
        assert_eq!(inst.density_rooted(&mm), rat_int(1));
        let (sol, trace) = density_greedy_graph(&inst, 20).unwrap();
        assert_eq!(sol.order(), &[e(0), e(1), e(2), e(3), e(7)]);
        assert_eq!(trace.blocks.len(), 2);
        assert_eq!(trace.blocks[0].extension, ids(&[0, 1, 2, 3]));
        assert_eq!(trace.blocks[1].density, rat(1, 2));
    }

    #[test]
    fn diamond_greedy_starts_with_the_direct_edge() {
        // The direct prize edge has density 1, the detour tree only 6/7.
        let inst = crate::instances::gen_diamonds(1).unwrap();
        let mm = min_max_subtree_exact(&inst, 20).unwrap();
        assert_eq!(mm.edges(), &ids(&[0]));
        let (sol, _) = density_greedy_graph(&inst, 20).unwrap();
        assert_eq!(sol.order()[0], e(0));
    }

    #[test]
    fn min_max_exact_errors() {
        let blank = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(0))],
            vec![(e(0), v(0), v(1), rat_int(1))],
        )
        .unwrap();
        assert_eq!(min_max_subtree_exact(&blank, 20).unwrap_err(), Error::NoPrizeLeft);
    }

    #[test]
    fn postprocess_switches_same_anchor_blocks() {
        // Two leaves at the root with densities 1 and 2 recorded in the
        // wrong order: same anchor, so the blocks are switched.
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1)), (v(2), rat_int(2))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(2), rat_int(1)),
            ],
        )
        .unwrap();
        let blocks = vec![
            TraceBlock {
                extension: ids(&[0]),
                density: rat_int(1),
                anchor: v(0),
            },
            TraceBlock {
                extension: ids(&[1]),
                density: rat_int(2),
                anchor: v(0),
            },
        ];
        let (sol, fixed) = postprocess_density_order(&inst, &blocks).unwrap();
        assert_eq!(sol.order(), &[e(1), e(0)]);
        assert_eq!(fixed[0].density, rat_int(2));
        assert_eq!(fixed[1].density, rat_int(1));
    }

    #[test]
    fn postprocess_keeps_monotone_blocks() {
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(2)), (v(2), rat_int(1))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(2), rat_int(1)),
            ],
        )
        .unwrap();
        let blocks = vec![
            TraceBlock {
                extension: ids(&[0]),
                density: rat_int(2),
                anchor: v(0),
            },
            TraceBlock {
                extension: ids(&[1]),
                density: rat_int(1),
                anchor: v(0),
            },
        ];
        let (sol, fixed) = postprocess_density_order(&inst, &blocks).unwrap();
        assert_eq!(sol.order(), &[e(0), e(1)]);
        assert_eq!(fixed.len(), 2);
    }

    #[test]
    fn postprocess_merges_blocks_with_different_anchors() {
        // Path r - a - b where the denser second block hangs below the
        // first: anchors differ, so the blocks merge into one.
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1)), (v(2), rat_int(2))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
            ],
        )
        .unwrap();
        let blocks = vec![
            TraceBlock {
                extension: ids(&[0]),
                density: rat_int(1),
                anchor: v(0),
            },
            TraceBlock {
                extension: ids(&[1]),
                density: rat_int(2),
                anchor: v(1),
            },
        ];
        let (sol, fixed) = postprocess_density_order(&inst, &blocks).unwrap();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].extension, ids(&[0, 1]));
        assert_eq!(fixed[0].density, rat(3, 2));
        assert_eq!(sol.order(), &[e(0), e(1)]);
    }
}
