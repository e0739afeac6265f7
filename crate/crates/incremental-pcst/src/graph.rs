//! Instance representation and the contraction/extension calculus.
//!
//! An [`Instance`] is an undirected multigraph with exact rational edge costs,
//! rational vertex prizes and a distinguished root. Contraction of a rooted
//! subtree keeps parallel edges and self-loops and preserves edge identity:
//! an edge id means the same edge before and after contracting, which is what
//! makes extension of contracted subgraphs a checked identity on ids.

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub cost: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `at`. For a self-loop this is `at` itself.
    pub fn other(&self, at: VertexId) -> VertexId {
        if at == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.u == v || self.v == v
    }
}

/// A prize-collecting Steiner-tree instance.
///
/// Parallel edges and self-loops are permitted (contraction produces them);
/// a self-loop can never be part of any rooted subtree. The root prize is
/// normalized to zero on construction. Every vertex with a positive prize
/// must be reachable from the root; unreachable zero-prize vertices are
/// tolerated and ignored by the root metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    root: VertexId,
    prizes: BTreeMap<VertexId, Rational>,
    edges: BTreeMap<EdgeId, Edge>,
    adjacency: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl Instance {
    pub fn new(
        root: VertexId,
        vertices: Vec<(VertexId, Rational)>,
        edges: Vec<(EdgeId, VertexId, VertexId, Rational)>,
    ) -> Result<Instance> {
        let mut prizes = BTreeMap::new();
        for (id, prize) in vertices {
            if prize.is_negative() {
                return Err(Error::NegativePrize(id.0));
            }
            if prizes.insert(id, prize).is_some() {
                return Err(Error::DuplicateVertexId(id.0));
            }
        }
        if !prizes.contains_key(&root) {
            return Err(Error::UnknownVertex(root.0));
        }
        // p(r) = 0 is assumed throughout; accept permissive input and normalize.
        prizes.insert(root, Rational::zero());

        let mut edge_map = BTreeMap::new();
        let mut adjacency: BTreeMap<VertexId, Vec<EdgeId>> =
            prizes.keys().map(|&v| (v, Vec::new())).collect();
        for (id, u, v, cost) in edges {
            if !prizes.contains_key(&u) {
                return Err(Error::UnknownVertex(u.0));
            }
            if !prizes.contains_key(&v) {
                return Err(Error::UnknownVertex(v.0));
            }
            if !cost.is_positive() {
                return Err(Error::NonPositiveCost(id.0));
            }
            let edge = Edge { id, u, v, cost };
            if edge_map.insert(id, edge).is_some() {
                return Err(Error::DuplicateEdgeId(id.0));
            }
        }
        for edge in edge_map.values() {
            adjacency.get_mut(&edge.u).unwrap().push(edge.id);
            if edge.u != edge.v {
                adjacency.get_mut(&edge.v).unwrap().push(edge.id);
            }
        }

        let instance = Instance {
            root,
            prizes,
            edges: edge_map,
            adjacency,
        };
        let dist = instance.shortest_path_distances();
        for (&v, prize) in &instance.prizes {
            if prize.is_positive() && !dist.contains_key(&v) {
                return Err(Error::UnreachablePrizeVertex(v.0));
            }
        }
        Ok(instance)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.prizes.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.prizes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn prize(&self, v: VertexId) -> &Rational {
        &self.prizes[&v]
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.prizes.contains_key(&v)
    }

    pub fn edge(&self, e: EdgeId) -> Option<&Edge> {
        self.edges.get(&e)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn adjacent_edges(&self, v: VertexId) -> &[EdgeId] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn total_prize(&self) -> Rational {
        self.prizes.values().sum()
    }

    /// `V*`: the vertices that carry a positive prize.
    pub fn prize_vertices(&self) -> BTreeSet<VertexId> {
        self.prizes
            .iter()
            .filter(|(_, p)| p.is_positive())
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn edge_set_cost(&self, edges: &BTreeSet<EdgeId>) -> Rational {
        edges.iter().map(|e| &self.edges[e].cost).sum()
    }

    /// Endpoints of an edge set (no implicit root).
    pub fn edge_set_vertices(&self, edges: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
        let mut verts = BTreeSet::new();
        for e in edges {
            let edge = &self.edges[e];
            verts.insert(edge.u);
            verts.insert(edge.v);
        }
        verts
    }

    pub fn vertex_set_prize<'a>(&self, verts: impl IntoIterator<Item = &'a VertexId>) -> Rational {
        verts.into_iter().map(|v| &self.prizes[v]).sum()
    }

    /// Exact shortest-path distances from the root; unreachable vertices are absent.
    pub fn shortest_path_distances(&self) -> BTreeMap<VertexId, Rational> {
        let mut dist: BTreeMap<VertexId, Rational> = BTreeMap::new();
        dist.insert(self.root, Rational::zero());
        let mut settled: BTreeSet<VertexId> = BTreeSet::new();
        loop {
            let next = dist
                .iter()
                .filter(|(v, _)| !settled.contains(v))
                .min_by(|(va, da), (vb, db)| da.cmp(db).then(va.cmp(vb)))
                .map(|(&v, _)| v);
            let Some(u) = next else { break };
            settled.insert(u);
            let du = dist[&u].clone();
            for &eid in self.adjacent_edges(u) {
                let edge = &self.edges[&eid];
                if edge.is_loop() {
                    continue;
                }
                let w = edge.other(u);
                let cand = &du + &edge.cost;
                match dist.get(&w) {
                    Some(existing) if *existing <= cand => {}
                    _ => {
                        dist.insert(w, cand);
                    }
                }
            }
        }
        dist
    }

    /// Root eccentricity: the maximum shortest-path cost from the root to any
    /// reachable vertex.
    pub fn eccentricity(&self) -> Rational {
        self.shortest_path_distances()
            .into_values()
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Maximum cost of a simple path starting in the root, by exhaustive
    /// search. Refuses instances above `max_edges`.
    pub fn longest_root_path(&self, max_edges: usize) -> Result<Rational> {
        if self.edge_count() > max_edges {
            return Err(Error::InstanceTooLarge {
                edges: self.edge_count(),
                bound: max_edges,
            });
        }
        let mut best = Rational::zero();
        let mut visited = BTreeSet::new();
        visited.insert(self.root);
        self.longest_path_from(self.root, &Rational::zero(), &mut visited, &mut best);
        Ok(best)
    }

    fn longest_path_from(
        &self,
        u: VertexId,
        acc: &Rational,
        visited: &mut BTreeSet<VertexId>,
        best: &mut Rational,
    ) {
        if acc > best {
            *best = acc.clone();
        }
        for &eid in self.adjacent_edges(u) {
            let edge = &self.edges[&eid];
            if edge.is_loop() {
                continue;
            }
            let w = edge.other(u);
            if visited.contains(&w) {
                continue;
            }
            visited.insert(w);
            let next = acc + &edge.cost;
            self.longest_path_from(w, &next, visited, best);
            visited.remove(&w);
        }
    }

    /// Validates an edge set as a rooted subtree and caches its cost and prize.
    pub fn rooted_subtree(&self, edges: &BTreeSet<EdgeId>) -> Result<RootedSubtree> {
        let mut uf = UnionFind::new();
        for e in edges {
            let edge = self.edges.get(e).ok_or(Error::NotARootedSubtree)?;
            if edge.is_loop() || !uf.union(edge.u, edge.v) {
                return Err(Error::NotARootedSubtree);
            }
        }
        let mut vertices = self.edge_set_vertices(edges);
        for v in &vertices {
            if !uf.same(*v, self.root) {
                return Err(Error::NotARootedSubtree);
            }
        }
        vertices.insert(self.root);
        let cost = self.edge_set_cost(edges);
        let prize = self.vertex_set_prize(&vertices);
        Ok(RootedSubtree {
            edges: edges.clone(),
            vertices,
            cost,
            prize,
        })
    }

    pub fn empty_subtree(&self) -> RootedSubtree {
        self.rooted_subtree(&BTreeSet::new()).unwrap()
    }

    /// Density of a rooted subtree: `p(T) / c(T)`, and zero for the empty tree.
    pub fn density_rooted(&self, t: &RootedSubtree) -> Rational {
        if t.edges.is_empty() {
            Rational::zero()
        } else {
            &t.prize / &t.cost
        }
    }

    /// Density of a connected, not necessarily rooted subtree, anchored at its
    /// unique vertex of minimum shortest-path distance to the root:
    /// `(p(T) - p(anchor)) / c(T)`. Fails with [`Error::AmbiguousAnchor`] when
    /// the minimum is tied, which can happen off trees; supply a base tree via
    /// [`Instance::density_in_tree`] in that case.
    pub fn anchored_density(&self, edges: &BTreeSet<EdgeId>) -> Result<Rational> {
        if edges.is_empty() {
            return Ok(Rational::zero());
        }
        self.check_connected_tree(edges)?;
        let verts = self.edge_set_vertices(edges);
        let anchor = self.graph_anchor(&verts)?;
        let prize = self.vertex_set_prize(&verts) - self.prize(anchor);
        Ok(prize / self.edge_set_cost(edges))
    }

    /// Density of a subtree over a base tree: the anchor is the unique vertex
    /// of minimum distance to the root within the base.
    pub fn density_in_tree(&self, base: &TreeView, edges: &BTreeSet<EdgeId>) -> Result<Rational> {
        if edges.is_empty() {
            return Ok(Rational::zero());
        }
        for e in edges {
            if !base.contains_edge(*e) {
                return Err(Error::NotInTree);
            }
        }
        self.check_connected_tree(edges)?;
        let verts = self.edge_set_vertices(edges);
        let anchor = base.anchor_of(&verts);
        let prize = self.vertex_set_prize(&verts) - self.prize(anchor);
        Ok(prize / self.edge_set_cost(edges))
    }

    fn check_connected_tree(&self, edges: &BTreeSet<EdgeId>) -> Result<()> {
        let mut uf = UnionFind::new();
        for e in edges {
            let edge = self.edges.get(e).ok_or(Error::NotATree)?;
            if edge.is_loop() || !uf.union(edge.u, edge.v) {
                return Err(Error::NotATree);
            }
        }
        let verts = self.edge_set_vertices(edges);
        let mut iter = verts.iter();
        if let Some(first) = iter.next() {
            for v in iter {
                if !uf.same(*first, *v) {
                    return Err(Error::NotATree);
                }
            }
        }
        Ok(())
    }

    fn graph_anchor(&self, verts: &BTreeSet<VertexId>) -> Result<VertexId> {
        let dist = self.shortest_path_distances();
        let mut best: Option<(&Rational, VertexId)> = None;
        let mut tied: Option<VertexId> = None;
        for &v in verts {
            let Some(d) = dist.get(&v) else {
                return Err(Error::AmbiguousAnchor(v.0, v.0));
            };
            match &best {
                None => best = Some((d, v)),
                Some((bd, bv)) => {
                    if d < bd {
                        best = Some((d, v));
                        tied = None;
                    } else if d == *bd {
                        let _ = bv;
                        tied = Some(v);
                    }
                }
            }
        }
        let (_, anchor) = best.expect("nonempty vertex set");
        if let Some(other) = tied {
            return Err(Error::AmbiguousAnchor(anchor.0, other.0));
        }
        Ok(anchor)
    }

    /// Contracts all edges of `t` into the root.
    pub fn contract(&self, t: &RootedSubtree) -> Result<ContractedGraph<'_>> {
        let tree = self.rooted_subtree(&t.edges)?;
        Ok(ContractedGraph {
            base: self,
            tree,
        })
    }

    /// True when the whole instance is a tree: connected, acyclic, no
    /// parallel edges or self-loops.
    pub fn is_tree(&self) -> bool {
        if self.edge_count() + 1 != self.vertex_count() {
            return false;
        }
        self.shortest_path_distances().len() == self.vertex_count()
    }

    /// The sub-instance induced by a tree edge set, keeping ids and root.
    pub fn restrict_to_tree(&self, edges: &BTreeSet<EdgeId>) -> Result<Instance> {
        let tree = self.rooted_subtree(edges).map_err(|_| Error::NotATree)?;
        let vertices = tree
            .vertices
            .iter()
            .map(|&v| (v, self.prizes[&v].clone()))
            .collect();
        let edge_list = edges
            .iter()
            .map(|e| {
                let edge = &self.edges[e];
                (edge.id, edge.u, edge.v, edge.cost.clone())
            })
            .collect();
        Instance::new(self.root, vertices, edge_list)
    }
}

/// A subtree of the instance that contains the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedSubtree {
    edges: BTreeSet<EdgeId>,
    vertices: BTreeSet<VertexId>,
    cost: Rational,
    prize: Rational,
}

impl RootedSubtree {
    /// Assembles a subtree from parts the caller has already verified; used
    /// by the enumerator, which maintains the invariants incrementally.
    pub(crate) fn from_parts(
        edges: BTreeSet<EdgeId>,
        vertices: BTreeSet<VertexId>,
        cost: Rational,
        prize: Rational,
    ) -> RootedSubtree {
        RootedSubtree {
            edges,
            vertices,
            cost,
            prize,
        }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }

    pub fn prize(&self) -> &Rational {
        &self.prize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

/// The graph `G/T` obtained by contracting a rooted subtree into the root.
///
/// Surviving edges keep their ids and costs; endpoints inside the contracted
/// tree are remapped to the root, so parallel edges and self-loops appear.
#[derive(Debug, Clone)]
pub struct ContractedGraph<'a> {
    base: &'a Instance,
    tree: RootedSubtree,
}

impl<'a> ContractedGraph<'a> {
    pub fn base(&self) -> &'a Instance {
        self.base
    }

    pub fn contracted_tree(&self) -> &RootedSubtree {
        &self.tree
    }

    pub fn root(&self) -> VertexId {
        self.base.root()
    }

    /// Original vertex to contracted vertex; all tree vertices map to the root.
    pub fn map_vertex(&self, v: VertexId) -> VertexId {
        if self.tree.contains_vertex(v) {
            self.base.root()
        } else {
            v
        }
    }

    pub fn vertex_ids(&self) -> BTreeSet<VertexId> {
        let mut verts: BTreeSet<VertexId> = self
            .base
            .vertex_ids()
            .filter(|v| !self.tree.contains_vertex(*v))
            .collect();
        verts.insert(self.base.root());
        verts
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count() - self.tree.edge_count()
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count() - self.tree.edge_count()
    }

    pub fn prize(&self, v: VertexId) -> Rational {
        if v == self.base.root() {
            Rational::zero()
        } else {
            self.base.prize(v).clone()
        }
    }

    pub fn survives(&self, e: EdgeId) -> bool {
        self.base.edge(e).is_some() && !self.tree.contains_edge(e)
    }

    /// Surviving edges with contracted endpoints.
    pub fn surviving_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.base.edges().filter(|e| !self.tree.contains_edge(e.id)).map(|e| Edge {
            id: e.id,
            u: self.map_vertex(e.u),
            v: self.map_vertex(e.v),
            cost: e.cost.clone(),
        })
    }

    /// `E_{S/T}`: the edges of a subgraph that survive the contraction.
    pub fn contracted_edge_set(&self, s_edges: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        s_edges
            .iter()
            .copied()
            .filter(|e| !self.tree.contains_edge(*e))
            .collect()
    }

    /// Extension `C+`: reinterprets surviving edge ids as edges of the base
    /// graph. Edge identity makes this the identity on ids; it fails on ids
    /// that were contracted away or never existed.
    pub fn extend(&self, edges: &BTreeSet<EdgeId>) -> Result<BTreeSet<EdgeId>> {
        for &e in edges {
            if !self.survives(e) {
                return Err(Error::ForeignEdgeId(e.0));
            }
        }
        Ok(edges.clone())
    }

    /// The contracted graph as a standalone instance (ids preserved).
    pub fn to_instance(&self) -> Instance {
        let vertices = self
            .vertex_ids()
            .into_iter()
            .map(|v| (v, self.prize(v)))
            .collect();
        let edges = self
            .surviving_edges()
            .map(|e| (e.id, e.u, e.v, e.cost))
            .collect();
        Instance::new(self.base.root(), vertices, edges)
            .expect("contraction preserves instance validity")
    }

    /// Total prize remaining after the contraction.
    pub fn total_prize(&self) -> Rational {
        self.vertex_ids()
            .into_iter()
            .map(|v| self.prize(v))
            .sum()
    }
}

/// An edge set viewed as a tree rooted at a designated vertex, with parent
/// pointers, tree distances and branch extraction. The root need not be the
/// instance root; min-max trees and optimal budgeted subtrees are navigated
/// through this view as well.
#[derive(Debug, Clone)]
pub struct TreeView {
    root: VertexId,
    order: Vec<VertexId>,
    pos: BTreeMap<VertexId, usize>,
    parent: Vec<Option<(usize, EdgeId)>>,
    children: Vec<Vec<(usize, EdgeId)>>,
    edge_child: BTreeMap<EdgeId, usize>,
    dist: Vec<Rational>,
    prize: Vec<Rational>,
    edge_cost: BTreeMap<EdgeId, Rational>,
}

impl TreeView {
    pub fn new(inst: &Instance, edges: &BTreeSet<EdgeId>, root: VertexId) -> Result<TreeView> {
        if !inst.has_vertex(root) {
            return Err(Error::UnknownVertex(root.0));
        }
        let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &e in edges {
            let edge = inst.edge(e).ok_or(Error::NotInTree)?;
            if edge.is_loop() {
                return Err(Error::NotATree);
            }
            incident.entry(edge.u).or_default().push(e);
            incident.entry(edge.v).or_default().push(e);
        }

        let mut order = vec![root];
        let mut pos = BTreeMap::new();
        pos.insert(root, 0);
        let mut parent = vec![None];
        let mut children: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new()];
        let mut edge_child = BTreeMap::new();
        let mut dist = vec![Rational::zero()];
        let mut prize = vec![inst.prize(root).clone()];
        let mut edge_cost = BTreeMap::new();
        let mut used = 0usize;

        let mut queue = vec![0usize];
        while let Some(p) = queue.pop() {
            let v = order[p];
            let mut out: Vec<EdgeId> = incident.get(&v).cloned().unwrap_or_default();
            out.sort();
            for e in out {
                let edge = inst.edge(e).unwrap();
                let w = edge.other(v);
                if pos.contains_key(&w) {
                    if parent[p].map(|(_, pe)| pe) != Some(e) {
                        return Err(Error::NotATree);
                    }
                    continue;
                }
                used += 1;
                let wp = order.len();
                order.push(w);
                pos.insert(w, wp);
                parent.push(Some((p, e)));
                children.push(Vec::new());
                children[p].push((wp, e));
                dist.push(&dist[p] + &edge.cost);
                prize.push(inst.prize(w).clone());
                edge_child.insert(e, wp);
                edge_cost.insert(e, edge.cost.clone());
                queue.push(wp);
            }
        }
        if used != edges.len() {
            // Some edge was never reached from the root: disconnected.
            return Err(Error::NotATree);
        }
        Ok(TreeView {
            root,
            order,
            pos,
            parent,
            children,
            edge_child,
            dist,
            prize,
            edge_cost,
        })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.order.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.order.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_child.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_child.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edge_child.contains_key(&e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn edge_cost(&self, e: EdgeId) -> Option<&Rational> {
        self.edge_cost.get(&e)
    }

    /// Tree distance from the root.
    pub fn dist(&self, v: VertexId) -> Option<&Rational> {
        self.pos.get(&v).map(|&p| &self.dist[p])
    }

    pub fn prize(&self, v: VertexId) -> Option<&Rational> {
        self.pos.get(&v).map(|&p| &self.prize[p])
    }

    /// Number of tree positions; position 0 is the root, children always
    /// carry a larger position than their parent.
    pub(crate) fn node_count(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn children_at(&self, p: usize) -> &[(usize, EdgeId)] {
        &self.children[p]
    }

    pub(crate) fn prize_at(&self, p: usize) -> &Rational {
        &self.prize[p]
    }

    /// The edge connecting `v` to its parent, if `v` is not the root.
    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.pos
            .get(&v)
            .and_then(|&p| self.parent[p].map(|(_, e)| e))
    }

    /// The endpoint of `e` that is closer to the root.
    pub fn upper_endpoint(&self, e: EdgeId) -> Result<VertexId> {
        let &child = self.edge_child.get(&e).ok_or(Error::NotInTree)?;
        let (pp, _) = self.parent[child].unwrap();
        Ok(self.order[pp])
    }

    /// The endpoint of `e` that is farther from the root.
    pub fn lower_endpoint(&self, e: EdgeId) -> Result<VertexId> {
        let &child = self.edge_child.get(&e).ok_or(Error::NotInTree)?;
        Ok(self.order[child])
    }

    fn descend_edges(&self, start: usize, acc: &mut BTreeSet<EdgeId>) {
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for &(c, e) in &self.children[p] {
                acc.insert(e);
                stack.push(c);
            }
        }
    }

    /// The branch rooted in edge `e`: `e` itself together with everything
    /// behind it, seen from the tree root.
    pub fn branch_at_edge(&self, e: EdgeId) -> Result<BTreeSet<EdgeId>> {
        let &child = self.edge_child.get(&e).ok_or(Error::NotInTree)?;
        let mut acc = BTreeSet::new();
        acc.insert(e);
        self.descend_edges(child, &mut acc);
        Ok(acc)
    }

    /// The branch rooted at vertex `v`: the subtree below `v`, excluding the
    /// edge that connects `v` to its parent. The branch at the tree root is
    /// the whole tree.
    pub fn branch_at_vertex(&self, v: VertexId) -> Result<BTreeSet<EdgeId>> {
        let &p = self.pos.get(&v).ok_or(Error::NotInTree)?;
        let mut acc = BTreeSet::new();
        self.descend_edges(p, &mut acc);
        Ok(acc)
    }

    /// Edges of the unique root-`v` path, root side first.
    pub fn path_from_root(&self, v: VertexId) -> Result<Vec<EdgeId>> {
        let mut p = *self.pos.get(&v).ok_or(Error::NotInTree)?;
        let mut rev = Vec::new();
        while let Some((pp, e)) = self.parent[p] {
            rev.push(e);
            p = pp;
        }
        rev.reverse();
        Ok(rev)
    }

    /// The member of `verts` with minimum tree distance to the root. Unique
    /// for connected subtrees of a tree; ties (only possible for disconnected
    /// sets) are broken by vertex id.
    pub fn anchor_of(&self, verts: &BTreeSet<VertexId>) -> VertexId {
        verts
            .iter()
            .copied()
            .filter(|v| self.contains_vertex(*v))
            .min_by(|a, b| {
                self.dist(*a)
                    .unwrap()
                    .cmp(self.dist(*b).unwrap())
                    .then(a.cmp(b))
            })
            .expect("anchor of empty or foreign vertex set")
    }
}

/// A collection of vertex-disjoint subtrees, each carrying its anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestComponent {
    pub anchor: VertexId,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    pub components: Vec<ForestComponent>,
}

impl Forest {
    /// Builds a forest from edges of a base tree plus trivial single-vertex
    /// components; anchors are the unique vertices of minimum tree distance
    /// (an isolated vertex anchors itself). Isolated vertices must not be
    /// covered by the edge components.
    pub fn in_tree(
        inst: &Instance,
        base: &TreeView,
        edges: &BTreeSet<EdgeId>,
        isolated: &BTreeSet<VertexId>,
    ) -> Result<Forest> {
        for &e in edges {
            if !base.contains_edge(e) {
                return Err(Error::NotInTree);
            }
        }
        let covered = inst.edge_set_vertices(edges);
        let mut out = Vec::new();
        for &v in isolated {
            if !base.contains_vertex(v) {
                return Err(Error::NotInTree);
            }
            if covered.contains(&v) {
                return Err(Error::NotATree);
            }
            let mut vs = BTreeSet::new();
            vs.insert(v);
            out.push(ForestComponent {
                anchor: v,
                vertices: vs,
                edges: BTreeSet::new(),
            });
        }
        for verts in Self::group(inst, edges)? {
            let anchor = base.anchor_of(&verts);
            let comp_edges = edges
                .iter()
                .copied()
                .filter(|e| verts.contains(&inst.edge(*e).unwrap().u))
                .collect();
            out.push(ForestComponent {
                anchor,
                vertices: verts,
                edges: comp_edges,
            });
        }
        out.sort_by_key(|c| c.anchor);
        Ok(Forest { components: out })
    }

    /// Builds a forest with anchors taken from graph distances; fails with
    /// [`Error::AmbiguousAnchor`] when a component has a tied anchor.
    pub fn in_graph(
        inst: &Instance,
        edges: &BTreeSet<EdgeId>,
        isolated: &BTreeSet<VertexId>,
    ) -> Result<Forest> {
        let covered = inst.edge_set_vertices(edges);
        let mut out = Vec::new();
        for &v in isolated {
            if !inst.has_vertex(v) {
                return Err(Error::UnknownVertex(v.0));
            }
            if covered.contains(&v) {
                return Err(Error::NotATree);
            }
            let mut vs = BTreeSet::new();
            vs.insert(v);
            out.push(ForestComponent {
                anchor: v,
                vertices: vs,
                edges: BTreeSet::new(),
            });
        }
        for verts in Self::group(inst, edges)? {
            let anchor = inst.graph_anchor(&verts)?;
            let comp_edges = edges
                .iter()
                .copied()
                .filter(|e| verts.contains(&inst.edge(*e).unwrap().u))
                .collect();
            out.push(ForestComponent {
                anchor,
                vertices: verts,
                edges: comp_edges,
            });
        }
        out.sort_by_key(|c| c.anchor);
        Ok(Forest { components: out })
    }

    fn group(inst: &Instance, edges: &BTreeSet<EdgeId>) -> Result<Vec<BTreeSet<VertexId>>> {
        let mut uf = UnionFind::new();
        for &e in edges {
            let edge = inst.edge(e).ok_or(Error::NotInTree)?;
            if edge.is_loop() || !uf.union(edge.u, edge.v) {
                return Err(Error::NotATree);
            }
        }
        let mut by_rep: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for v in inst.edge_set_vertices(edges) {
            by_rep.entry(uf.find(v)).or_default().insert(v);
        }
        Ok(by_rep.into_values().collect())
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn edges(&self) -> BTreeSet<EdgeId> {
        self.components
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect()
    }

    pub fn cost(&self, inst: &Instance) -> Rational {
        inst.edge_set_cost(&self.edges())
    }

    /// Total prize of all vertices in the forest, anchors included.
    pub fn prize(&self, inst: &Instance) -> Rational {
        self.components
            .iter()
            .map(|c| inst.vertex_set_prize(&c.vertices))
            .sum()
    }

    /// Anchored density: anchors' prizes are excluded, zero without edges.
    pub fn density(&self, inst: &Instance) -> Rational {
        let cost = self.cost(inst);
        if cost.is_zero() {
            return Rational::zero();
        }
        let prize: Rational = self
            .components
            .iter()
            .map(|c| inst.vertex_set_prize(&c.vertices) - inst.prize(c.anchor))
            .sum();
        prize / cost
    }
}

/// An edge ordering whose every prefix induces a rooted subtree and whose
/// full edge set spans all positive-prize vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncrementalSolution {
    order: Vec<EdgeId>,
}

impl IncrementalSolution {
    pub fn new(inst: &Instance, order: Vec<EdgeId>) -> Result<IncrementalSolution> {
        let mut uf = UnionFind::new();
        let root = inst.root();
        let mut seen = BTreeSet::new();
        for (i, &e) in order.iter().enumerate() {
            let edge = inst.edge(e).ok_or(Error::InvalidOrdering {
                position: i,
                message: format!("edge {e} does not exist"),
            })?;
            if !seen.insert(e) {
                return Err(Error::InvalidOrdering {
                    position: i,
                    message: format!("edge {e} appears twice"),
                });
            }
            if edge.is_loop() {
                return Err(Error::InvalidOrdering {
                    position: i,
                    message: format!("edge {e} is a self-loop"),
                });
            }
            let u_in = uf.same(root, edge.u);
            let v_in = uf.same(root, edge.v);
            match (u_in, v_in) {
                (true, true) => {
                    return Err(Error::InvalidOrdering {
                        position: i,
                        message: format!("edge {e} closes a cycle"),
                    })
                }
                (false, false) => {
                    return Err(Error::InvalidOrdering {
                        position: i,
                        message: format!("edge {e} does not touch the current prefix tree"),
                    })
                }
                _ => {}
            }
            uf.union(edge.u, edge.v);
        }
        for v in inst.prize_vertices() {
            if !uf.same(root, v) {
                return Err(Error::InvalidOrdering {
                    position: order.len(),
                    message: format!("positive-prize vertex {v} is not spanned"),
                });
            }
        }
        Ok(IncrementalSolution { order })
    }

    pub fn order(&self) -> &[EdgeId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.order.iter().copied().collect()
    }
}

/// Union-find keyed directly by vertex ids.
#[derive(Debug, Clone, Default)]
pub(crate) struct UnionFind {
    parent: BTreeMap<VertexId, VertexId>,
}

impl UnionFind {
    pub fn new() -> UnionFind {
        UnionFind::default()
    }

    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut cur = v;
        loop {
            let p = *self.parent.entry(cur).or_insert(cur);
            if p == cur {
                break;
            }
            let gp = *self.parent.get(&p).unwrap_or(&p);
            self.parent.insert(cur, gp);
            cur = gp;
        }
        cur
    }

    pub fn same(&mut self, a: VertexId, b: VertexId) -> bool {
        self.find(a) == self.find(b)
    }

    /// Returns false when both endpoints already share a component.
    pub fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent.insert(ra.max(rb), ra.min(rb));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn e(i: u32) -> EdgeId {
        EdgeId(i)
    }

    fn path3() -> Instance {
        // r(0) - a(1) - b(2), unit costs, prizes 0/1/2
        Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(1)),
                (v(2), rat_int(2)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
            ],
        )
        .unwrap()
    }

    fn ids(list: &[u32]) -> BTreeSet<EdgeId> {
        list.iter().map(|&i| e(i)).collect()
    }

    #[test]
    fn build_normalizes_root_prize() {
        let inst = Instance::new(
            v(0),
            vec![(v(0), rat_int(7)), (v(1), rat_int(1))],
            vec![(e(0), v(0), v(1), rat_int(1))],
        )
        .unwrap();
        assert_eq!(*inst.prize(v(0)), rat_int(0));
        assert_eq!(inst.total_prize(), rat_int(1));
    }

    #[test]
    fn build_rejects_bad_input() {
        let err = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![(e(0), v(0), v(1), rat_int(0))],
        )
        .unwrap_err();
        assert_eq!(err, Error::NonPositiveCost(0));

        let err = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat(-1, 2))],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::NegativePrize(1));

        let err = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(0), v(0), v(1), rat_int(2)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicateEdgeId(0));

        // prize vertex with no connection
        let err = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![],
        )
        .unwrap_err();
        assert_eq!(err, Error::UnreachablePrizeVertex(1));
    }

    #[test]
    fn single_vertex_instance_is_valid() {
        let inst = Instance::new(v(0), vec![(v(0), rat_int(0))], vec![]).unwrap();
        assert!(inst.prize_vertices().is_empty());
        assert_eq!(inst.eccentricity(), rat_int(0));
        assert_eq!(inst.longest_root_path(20).unwrap(), rat_int(0));
    }

    #[test]
    fn rooted_subtree_validation() {
        let inst = path3();
        let t = inst.rooted_subtree(&ids(&[0])).unwrap();
        assert_eq!(*t.cost(), rat_int(1));
        assert_eq!(*t.prize(), rat_int(1));
        assert_eq!(t.vertices().len(), 2);

        // detached edge is not rooted
        assert_eq!(
            inst.rooted_subtree(&ids(&[1])).unwrap_err(),
            Error::NotARootedSubtree
        );
        // empty tree is the trivial subtree on {r}
        let empty = inst.empty_subtree();
        assert!(empty.is_empty());
        assert_eq!(empty.vertices().len(), 1);
        assert_eq!(inst.density_rooted(&empty), rat_int(0));
    }

    #[test]
    fn contract_path_drops_one_vertex() {
        // Contracting {r-a} in the 3-vertex path leaves two vertices and one
        // surviving edge (hand enumeration of the path).
        let inst = path3();
        let t = inst.rooted_subtree(&ids(&[0])).unwrap();
        let cg = inst.contract(&t).unwrap();
        assert_eq!(cg.vertex_count(), 2);
        assert_eq!(cg.edge_count(), 1);
        let survivors: Vec<Edge> = cg.surviving_edges().collect();
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].id, e(1));
        assert_eq!(survivors[0].u, v(0)); // endpoint a remapped to the root
        assert_eq!(survivors[0].v, v(2));
        assert_eq!(cg.prize(v(2)), rat_int(2));

        let ci = cg.to_instance();
        assert_eq!(ci.vertex_count(), 2);
        assert_eq!(ci.total_prize(), rat_int(2));
    }

    #[test]
    fn contract_empty_tree_is_identity() {
        let inst = path3();
        let cg = inst.contract(&inst.empty_subtree()).unwrap();
        assert_eq!(cg.vertex_count(), inst.vertex_count());
        assert_eq!(cg.edge_count(), inst.edge_count());
        let ci = cg.to_instance();
        assert_eq!(ci, inst);
    }

    #[test]
    fn extend_is_identity_on_ids_and_rejects_foreign() {
        let inst = path3();
        let t = inst.rooted_subtree(&ids(&[0])).unwrap();
        let cg = inst.contract(&t).unwrap();
        assert_eq!(cg.extend(&ids(&[1])).unwrap(), ids(&[1]));
        assert_eq!(cg.extend(&ids(&[])).unwrap(), ids(&[]));
        assert_eq!(cg.extend(&ids(&[0])).unwrap_err(), Error::ForeignEdgeId(0));
        assert_eq!(cg.extend(&ids(&[9])).unwrap_err(), Error::ForeignEdgeId(9));
    }

    #[test]
    fn extension_of_connected_subgraph_may_disconnect() {
        // After contracting r-a, the edges (a,b) and (r,c) are both incident
        // to the root and form a connected subgraph of the contracted graph;
        // read back in the base graph they fall apart.
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(0)),
                (v(2), rat_int(1)),
                (v(3), rat_int(1)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
                (e(2), v(0), v(3), rat_int(1)),
            ],
        )
        .unwrap();
        let t = inst.rooted_subtree(&ids(&[0])).unwrap();
        let cg = inst.contract(&t).unwrap();
        let sub = ids(&[1, 2]);
        // connected within the contracted graph: both edges touch the root
        let ci = cg.to_instance();
        assert!(ci.rooted_subtree(&sub).is_ok());
        // the extension keeps the ids but is not connected in the base graph
        let ext = cg.extend(&sub).unwrap();
        assert_eq!(ext, sub);
        assert_eq!(inst.rooted_subtree(&ext).unwrap_err(), Error::NotARootedSubtree);
        assert_eq!(inst.check_connected_tree(&ext).unwrap_err(), Error::NotATree);
    }

    #[test]
    fn contraction_keeps_parallel_edges_and_loops() {
        // Square with a chord: contracting the two tree edges creates a
        // parallel pair and a self-loop at the root.
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(0)),
                (v(2), rat_int(1)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(1), rat_int(2)), // becomes a loop
                (e(2), v(0), v(2), rat_int(1)),
                (e(3), v(1), v(2), rat_int(1)), // becomes parallel to e2
            ],
        )
        .unwrap();
        let t = inst.rooted_subtree(&ids(&[0])).unwrap();
        let cg = inst.contract(&t).unwrap();
        let survivors: BTreeMap<EdgeId, Edge> =
            cg.surviving_edges().map(|edge| (edge.id, edge)).collect();
        assert!(survivors[&e(1)].is_loop());
        assert_eq!(survivors[&e(2)].u, v(0));
        assert_eq!(survivors[&e(3)].u, v(0));
        assert_eq!(survivors[&e(3)].v, v(2));
        // the loop stays in the instance view and harms nothing
        let ci = cg.to_instance();
        assert_eq!(ci.edge_count(), 3);
        assert_eq!(
            ci.rooted_subtree(&ids(&[1])).unwrap_err(),
            Error::NotARootedSubtree
        );
    }

    #[test]
    fn eccentricity_and_longest_path_on_triangle() {
        // Triangle with unit costs: chi = 1, gamma = 2 (4 simple paths from r).
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(1)),
                (v(2), rat_int(1)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(2), rat_int(1)),
                (e(2), v(1), v(2), rat_int(1)),
            ],
        )
        .unwrap();
        assert_eq!(inst.eccentricity(), rat_int(1));
        assert_eq!(inst.longest_root_path(20).unwrap(), rat_int(2));
        assert_eq!(
            inst.longest_root_path(2).unwrap_err(),
            Error::InstanceTooLarge { edges: 3, bound: 2 }
        );
        // single edge of cost 5
        let single = Instance::new(
            v(0),
            vec![(v(0), rat_int(0)), (v(1), rat_int(1))],
            vec![(e(0), v(0), v(1), rat_int(5))],
        )
        .unwrap();
        assert_eq!(single.longest_root_path(20).unwrap(), rat_int(5));
        assert_eq!(single.eccentricity(), rat_int(5));
    }

    #[test]
    fn anchored_density_needs_unique_anchor() {
        // r joined to a and b; subtree {a-b} has both endpoints at distance 1.
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(2)),
                (v(2), rat_int(3)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(0), v(2), rat_int(1)),
                (e(2), v(1), v(2), rat_int(1)),
            ],
        )
        .unwrap();
        assert_eq!(
            inst.anchored_density(&ids(&[2])).unwrap_err(),
            Error::AmbiguousAnchor(1, 2)
        );
        // over a base tree the anchor is forced
        let base = TreeView::new(&inst, &ids(&[0, 2]), v(0)).unwrap();
        assert_eq!(
            inst.density_in_tree(&base, &ids(&[2])).unwrap(),
            rat_int(3) // (p(a)+p(b) - p(a)) / 1
        );
        // unambiguous case: subtree hanging off a single closest vertex
        assert_eq!(inst.anchored_density(&ids(&[0])).unwrap(), rat_int(2));
        assert_eq!(inst.anchored_density(&ids(&[])).unwrap(), rat_int(0));
    }

    #[test]
    fn branches_follow_tree_structure() {
        // r - a - b and r - c; branch at edge (a,b) is {(a,b)}, branch at a is
        // the subtree below a, branch at the root vertex is the whole tree.
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(1)),
                (v(2), rat_int(1)),
                (v(3), rat_int(1)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
                (e(2), v(0), v(3), rat_int(1)),
            ],
        )
        .unwrap();
        let tv = TreeView::new(&inst, &ids(&[0, 1, 2]), v(0)).unwrap();
        assert_eq!(tv.branch_at_edge(e(1)).unwrap(), ids(&[1]));
        assert_eq!(tv.branch_at_edge(e(0)).unwrap(), ids(&[0, 1]));
        assert_eq!(tv.branch_at_vertex(v(1)).unwrap(), ids(&[1]));
        assert_eq!(tv.branch_at_vertex(v(0)).unwrap(), ids(&[0, 1, 2]));
        assert_eq!(tv.branch_at_edge(e(9)).unwrap_err(), Error::NotInTree);
        assert_eq!(tv.upper_endpoint(e(1)).unwrap(), v(1));
        assert_eq!(*tv.dist(v(2)).unwrap(), rat_int(2));
    }

    #[test]
    fn incremental_solution_prefix_rule() {
        let inst = path3();
        assert!(IncrementalSolution::new(&inst, vec![e(0), e(1)]).is_ok());
        // prefix {e1} does not touch the root
        assert!(matches!(
            IncrementalSolution::new(&inst, vec![e(1), e(0)]),
            Err(Error::InvalidOrdering { position: 0, .. })
        ));
        // misses prize vertex b
        assert!(matches!(
            IncrementalSolution::new(&inst, vec![e(0)]),
            Err(Error::InvalidOrdering { .. })
        ));
        let empty_ok = Instance::new(v(0), vec![(v(0), rat_int(0))], vec![]).unwrap();
        assert!(IncrementalSolution::new(&empty_ok, vec![]).is_ok());
    }

    #[test]
    fn forest_components_and_density() {
        let inst = Instance::new(
            v(0),
            vec![
                (v(0), rat_int(0)),
                (v(1), rat_int(1)),
                (v(2), rat_int(2)),
                (v(3), rat_int(4)),
            ],
            vec![
                (e(0), v(0), v(1), rat_int(1)),
                (e(1), v(1), v(2), rat_int(1)),
                (e(2), v(2), v(3), rat_int(2)),
            ],
        )
        .unwrap();
        let base = TreeView::new(&inst, &ids(&[0, 1, 2]), v(0)).unwrap();
        let root_only: BTreeSet<VertexId> = [v(0)].into_iter().collect();
        let forest = Forest::in_tree(&inst, &base, &ids(&[2]), &root_only).unwrap();
        assert_eq!(forest.component_count(), 2); // {r} and {c-d}
        assert_eq!(forest.prize(&inst), rat_int(6));
        assert_eq!(forest.density(&inst), rat_int(2)); // (6 - p(anchor c)) / 2
        let whole = Forest::in_tree(&inst, &base, &ids(&[0, 1, 2]), &BTreeSet::new()).unwrap();
        assert_eq!(whole.component_count(), 1);
        assert_eq!(whole.components[0].anchor, v(0));
        // an isolated vertex may not be covered by an edge component
        assert!(Forest::in_tree(&inst, &base, &ids(&[2]), &[v(3)].into_iter().collect()).is_err());
        // a prize vertex standing alone is a valid component
        let single = Forest::in_tree(&inst, &base, &ids(&[]), &[v(0), v(3)].into_iter().collect())
            .unwrap();
        assert_eq!(single.component_count(), 2);
        assert_eq!(single.prize(&inst), rat_int(4));
        assert_eq!(single.cost(&inst), rat_int(0));
    }
}
