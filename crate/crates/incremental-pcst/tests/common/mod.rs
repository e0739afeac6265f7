//! Brute-force oracles shared by the integration tests. These scan all
//! edge subsets directly and deliberately share no code with the library's
//! enumerator, so they can referee it.

use std::collections::{BTreeMap, BTreeSet};

use incremental_pcst::{EdgeId, Instance, Rational, VertexId};
use num::{Signed, Zero};

fn find(parents: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
    let p = *parents.entry(v).or_insert(v);
    if p == v {
        v
    } else {
        let r = find(parents, p);
        parents.insert(v, r);
        r
    }
}

/// Whether the edge set is a tree containing the root (acyclic, connected,
/// every endpoint reaching the root).
pub fn is_rooted_subtree(inst: &Instance, set: &BTreeSet<EdgeId>) -> bool {
    let mut parents: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &e in set {
        let edge = inst.edge(e).unwrap();
        if edge.u == edge.v {
            return false;
        }
        let ru = find(&mut parents, edge.u);
        let rv = find(&mut parents, edge.v);
        if ru == rv {
            return false;
        }
        parents.insert(ru, rv);
    }
    let root = find(&mut parents, inst.root());
    for &e in set {
        let edge = inst.edge(e).unwrap();
        if find(&mut parents, edge.u) != root {
            return false;
        }
    }
    true
}

/// Every rooted subtree, found by scanning all `2^|E|` edge subsets.
pub fn brute_rooted_subtree_sets(inst: &Instance) -> Vec<BTreeSet<EdgeId>> {
    let ids: Vec<EdgeId> = inst.edges().map(|e| e.id).collect();
    assert!(ids.len() <= 20, "brute oracle is for desk-scale instances");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << ids.len()) {
        let set: BTreeSet<EdgeId> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if is_rooted_subtree(inst, &set) {
            out.push(set);
        }
    }
    out
}

pub fn subtree_cost_prize(inst: &Instance, set: &BTreeSet<EdgeId>) -> (Rational, Rational) {
    let mut verts = inst.edge_set_vertices(set);
    verts.insert(inst.root());
    (inst.edge_set_cost(set), inst.vertex_set_prize(&verts))
}

/// Nondominated (cost, prize) pairs over all rooted subtrees.
pub fn brute_frontier(inst: &Instance) -> Vec<(Rational, Rational)> {
    let mut pairs: Vec<(Rational, Rational)> = brute_rooted_subtree_sets(inst)
        .iter()
        .map(|s| subtree_cost_prize(inst, s))
        .collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)));
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    for (c, p) in pairs {
        if out.last().map(|(_, bp)| &p > bp).unwrap_or(true) {
            out.push((c, p));
        }
    }
    out
}

/// Maximum density over nonempty rooted subtrees together with the
/// inclusion-wise minimal trees attaining it.
pub fn brute_min_max(inst: &Instance) -> Option<(Rational, Vec<BTreeSet<EdgeId>>)> {
    let mut best: Option<Rational> = None;
    let mut argmax: Vec<BTreeSet<EdgeId>> = Vec::new();
    for set in brute_rooted_subtree_sets(inst) {
        if set.is_empty() {
            continue;
        }
        let (cost, prize) = subtree_cost_prize(inst, &set);
        let density = prize / cost;
        match &best {
            Some(b) if &density < b => {}
            Some(b) if &density == b => argmax.push(set),
            _ => {
                best = Some(density);
                argmax = vec![set];
            }
        }
    }
    let best = best?;
    if !best.is_positive() {
        return None;
    }
    let minimal: Vec<BTreeSet<EdgeId>> = argmax
        .iter()
        .filter(|s| {
            !argmax
                .iter()
                .any(|other| other.len() < s.len() && other.is_subset(s))
        })
        .cloned()
        .collect();
    Some((best, minimal))
}

/// Maximum cost of a simple path starting in the root, by scanning all
/// edge subsets that form such a path.
pub fn brute_longest_root_path(inst: &Instance) -> Rational {
    let ids: Vec<EdgeId> = inst.edges().map(|e| e.id).collect();
    assert!(ids.len() <= 20);
    let mut best = Rational::zero();
    'subsets: for mask in 0u32..(1u32 << ids.len()) {
        let set: BTreeSet<EdgeId> = ids
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if !is_rooted_subtree(inst, &set) {
            continue;
        }
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &e in &set {
            let edge = inst.edge(e).unwrap();
            *degree.entry(edge.u).or_default() += 1;
            *degree.entry(edge.v).or_default() += 1;
        }
        if degree.get(&inst.root()).copied().unwrap_or(0) > 1 {
            continue;
        }
        for d in degree.values() {
            if *d > 2 {
                continue 'subsets;
            }
        }
        let cost = inst.edge_set_cost(&set);
        if cost > best {
            best = cost;
        }
    }
    best
}
