//! Competitiveness verification against the exact optimum profile.
//!
//! Both the ordering's prize profile and the optimum are right-continuous
//! step functions of the budget, and the optimum jumps only at frontier
//! costs. Checking `mu * p(ALG(B + alpha)) >= p(OPT(B))` at every frontier
//! cost therefore decides the inequality for *all* budgets exactly,
//! including budgets past the total instance cost (the frontier's maximal
//! point covers those).

use std::collections::{BTreeMap, BTreeSet};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Forest, IncrementalSolution, Instance, TreeView, VertexId};
use crate::rational::Rational;
use crate::scaling::{pareto_frontier, ParetoFrontier};

/// A nondecreasing budget-to-prize step function stored as breakpoints.
/// The value at `b` is the prize of the last breakpoint with budget `<= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepProfile {
    points: Vec<(Rational, Rational)>,
}

impl StepProfile {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<StepProfile> {
        if points.first().map(|(b, _)| !b.is_zero()).unwrap_or(true) {
            return Err(Error::BadParameter(
                "step profile must start at budget zero".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::BadParameter(
                    "step profile budgets must strictly increase".into(),
                ));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::BadParameter(
                    "step profile prizes must not decrease".into(),
                ));
            }
        }
        Ok(StepProfile { points })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn value_at(&self, b: &Rational) -> Rational {
        let idx = self.points.partition_point(|(budget, _)| budget <= b);
        if idx == 0 {
            Rational::zero()
        } else {
            self.points[idx - 1].1.clone()
        }
    }

    pub fn budgets(&self) -> impl Iterator<Item = &Rational> {
        self.points.iter().map(|(b, _)| b)
    }

    pub fn final_prize(&self) -> &Rational {
        &self.points.last().unwrap().1
    }
}

/// The prize profile of an incremental solution: one breakpoint per prefix,
/// at the prefix cost, valued at the prefix tree's prize.
pub fn alg_profile(inst: &Instance, sol: &IncrementalSolution) -> StepProfile {
    let mut points = vec![(Rational::zero(), Rational::zero())];
    let mut verts: BTreeSet<VertexId> = BTreeSet::new();
    verts.insert(inst.root());
    let mut cost = Rational::zero();
    let mut prize = Rational::zero();
    for &e in sol.order() {
        let edge = inst.edge(e).unwrap();
        cost += &edge.cost;
        let far = if verts.contains(&edge.u) { edge.v } else { edge.u };
        if verts.insert(far) {
            prize += inst.prize(far);
        }
        points.push((cost.clone(), prize.clone()));
    }
    StepProfile { points }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub budget: Rational,
    pub opt_prize: Rational,
    pub alg_prize: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetitiveReport {
    pub alpha: Rational,
    pub mu: Rational,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl CompetitiveReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Decides whether `mu * p(ALG(B + alpha)) >= p(OPT(B))` for every budget
/// `B >= 0`, reporting the first violating frontier budget otherwise.
pub fn verify_competitive(
    inst: &Instance,
    sol: &IncrementalSolution,
    alpha: &Rational,
    mu: &Rational,
    max_edges: usize,
) -> Result<CompetitiveReport> {
    if alpha.is_negative() {
        return Err(Error::BadParameter("alpha must be nonnegative".into()));
    }
    if !mu.is_positive() {
        return Err(Error::BadParameter("mu must be positive".into()));
    }
    let frontier = pareto_frontier(inst, max_edges)?;
    let profile = alg_profile(inst, sol);
    for (budget, opt_prize) in frontier.points() {
        let alg_prize = profile.value_at(&(budget + alpha));
        if &(mu * &alg_prize) < opt_prize {
            return Ok(CompetitiveReport {
                alpha: alpha.clone(),
                mu: mu.clone(),
                verdict: Verdict::Violated,
                witness: Some(Witness {
                    budget: budget.clone(),
                    opt_prize: opt_prize.clone(),
                    alg_prize,
                }),
            });
        }
    }
    Ok(CompetitiveReport {
        alpha: alpha.clone(),
        mu: mu.clone(),
        verdict: Verdict::Holds,
        witness: None,
    })
}

/// The least multiplicative factor, with an explicit sentinel for the case
/// where no finite factor exists (positive optimum against zero prize).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuValue {
    Finite(Rational),
    Infinite,
}

impl MuValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, MuValue::Infinite)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            MuValue::Finite(r) => Some(r),
            MuValue::Infinite => None,
        }
    }
}

impl PartialOrd for MuValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MuValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (MuValue::Infinite, MuValue::Infinite) => std::cmp::Ordering::Equal,
            (MuValue::Infinite, MuValue::Finite(_)) => std::cmp::Ordering::Greater,
            (MuValue::Finite(_), MuValue::Infinite) => std::cmp::Ordering::Less,
            (MuValue::Finite(a), MuValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for MuValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MuValue::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            MuValue::Infinite => write!(f, "inf"),
        }
    }
}

pub(crate) fn min_mu_of_profile(
    frontier: &ParetoFrontier,
    profile: &StepProfile,
    alpha: &Rational,
) -> MuValue {
    let mut best = Rational::zero();
    for (budget, opt_prize) in frontier.points() {
        let alg_prize = profile.value_at(&(budget + alpha));
        if alg_prize.is_zero() {
            if opt_prize.is_positive() {
                return MuValue::Infinite;
            }
            continue;
        }
        let ratio = opt_prize / &alg_prize;
        if ratio > best {
            best = ratio;
        }
    }
    MuValue::Finite(best)
}

/// The least `mu` such that the solution is `(alpha, mu)`-competitive on
/// this instance; infinite when some positive optimum meets zero prize.
/// Note the value may be below one when the slack already beats the optimum
/// outright; the competitive definition additionally demands `mu >= 1`.
pub fn min_mu(
    inst: &Instance,
    sol: &IncrementalSolution,
    alpha: &Rational,
    max_edges: usize,
) -> Result<MuValue> {
    if alpha.is_negative() {
        return Err(Error::BadParameter("alpha must be nonnegative".into()));
    }
    let frontier = pareto_frontier(inst, max_edges)?;
    let profile = alg_profile(inst, sol);
    Ok(min_mu_of_profile(&frontier, &profile, alpha))
}

/// The least additive slack `alpha` such that the solution is
/// `(alpha, mu)`-competitive on this instance. The minimum is attained on
/// the finite set of differences between profile breakpoints and frontier
/// costs, which is searched in ascending order.
pub fn min_alpha(
    inst: &Instance,
    sol: &IncrementalSolution,
    mu: &Rational,
    max_edges: usize,
) -> Result<Rational> {
    if !mu.is_positive() {
        return Err(Error::BadParameter("mu must be positive".into()));
    }
    let frontier = pareto_frontier(inst, max_edges)?;
    let profile = alg_profile(inst, sol);
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    candidates.insert(Rational::zero());
    for b in profile.budgets() {
        for f in frontier.costs() {
            if b >= f {
                candidates.insert(b - f);
            }
        }
    }
    'next: for alpha in candidates {
        for (budget, opt_prize) in frontier.points() {
            let alg_prize = profile.value_at(&(budget + &alpha));
            if &(mu * &alg_prize) < opt_prize {
                continue 'next;
            }
        }
        return Ok(alpha);
    }
    Err(Error::BadParameter(
        "no additive slack makes this factor hold".into(),
    ))
}

/// Searches, by brute force over edge subsets, for a forest inside the tree
/// that contains the tree root, has at most `k` components, costs at most
/// `lambda * c(T)` and collects the most prize under those constraints.
/// Components may be single isolated vertices; for a fixed edge subset the
/// optimal completion takes the highest-prize uncovered vertices into the
/// remaining component budget, since they cost nothing.
///
/// This is the existence oracle for the bound
/// `p(F) >= (1 - 2^(1-k)) * lambda * p(T)`: the returned forest is the
/// best one, so checking the bound on it certifies the claim.
pub fn forest_extraction(
    inst: &Instance,
    tree: &TreeView,
    lambda: &Rational,
    k: usize,
    max_tree_edges: usize,
) -> Result<Forest> {
    if k == 0 {
        return Err(Error::BadParameter("component budget k must be positive".into()));
    }
    if lambda.is_negative() || lambda > &Rational::from_integer(1.into()) {
        return Err(Error::BadParameter("lambda must lie in [0, 1]".into()));
    }
    let edges: Vec<EdgeId> = tree.edge_ids().collect();
    if edges.len() > max_tree_edges.min(30) {
        return Err(Error::TreeTooLarge {
            edges: edges.len(),
            bound: max_tree_edges.min(30),
        });
    }
    let total_cost: Rational = edges.iter().map(|e| tree.edge_cost(*e).unwrap()).sum();
    let budget = lambda * &total_cost;
    let mut prize_order: Vec<VertexId> = tree
        .vertices()
        .filter(|&v| v != tree.root() && inst.prize(v).is_positive())
        .collect();
    prize_order.sort_by(|a, b| inst.prize(*b).cmp(inst.prize(*a)).then(a.cmp(b)));

    let mut best: Option<(Rational, Rational, BTreeSet<EdgeId>, BTreeSet<VertexId>)> = None;
    for mask in 0u64..(1u64 << edges.len()) {
        let mut cost = Rational::zero();
        let mut chosen: BTreeSet<EdgeId> = BTreeSet::new();
        let mut over = false;
        for (i, &e) in edges.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cost += tree.edge_cost(e).unwrap();
                if cost > budget {
                    over = true;
                    break;
                }
                chosen.insert(e);
            }
        }
        if over {
            continue;
        }
        let mut uf = crate::graph::UnionFind::new();
        let mut covered: BTreeSet<VertexId> = BTreeSet::new();
        for &e in &chosen {
            let edge = inst.edge(e).unwrap();
            uf.union(edge.u, edge.v);
            covered.insert(edge.u);
            covered.insert(edge.v);
        }
        let mut reps: BTreeSet<VertexId> = BTreeSet::new();
        for &v in &covered {
            reps.insert(uf.find(v));
        }
        let mut components = reps.len();
        let root_isolated = !covered.contains(&tree.root());
        if root_isolated {
            components += 1;
        }
        if components > k {
            continue;
        }
        let mut isolated: BTreeSet<VertexId> = BTreeSet::new();
        if root_isolated {
            isolated.insert(tree.root());
        }
        let mut with_root = covered.clone();
        with_root.insert(tree.root());
        let mut prize = inst.vertex_set_prize(&with_root);
        for &v in &prize_order {
            if components >= k {
                break;
            }
            if !covered.contains(&v) {
                isolated.insert(v);
                prize += inst.prize(v);
                components += 1;
            }
        }
        let better = match &best {
            None => true,
            Some((bp, bc, _, _)) => prize.cmp(bp).then_with(|| bc.cmp(&cost)).is_gt(),
        };
        if better {
            best = Some((prize, cost, chosen, isolated));
        }
    }
    let (_, _, chosen, isolated) = best.expect("the empty forest is always feasible");
    Forest::in_tree(inst, tree, &chosen, &isolated)
}

/// Exhaustive search for the incremental solution minimizing the least
/// `mu` at the given slack. Partial orderings are grouped by their edge
/// set; within a set, a prefix whose profile is pointwise dominated by
/// another is discarded.
pub fn best_incremental_ordering(
    inst: &Instance,
    alpha: &Rational,
    max_edges: usize,
) -> Result<(IncrementalSolution, MuValue)> {
    if inst.edge_count() > max_edges {
        return Err(Error::InstanceTooLarge {
            edges: inst.edge_count(),
            bound: max_edges,
        });
    }
    if alpha.is_negative() {
        return Err(Error::BadParameter("alpha must be nonnegative".into()));
    }
    let frontier = pareto_frontier(inst, max_edges.max(inst.edge_count()))?;
    let prize_vertices = inst.prize_vertices();

    #[derive(Clone)]
    struct State {
        order: Vec<EdgeId>,
        profile: Vec<(Rational, Rational)>,
        verts: BTreeSet<VertexId>,
        cost: Rational,
        prize: Rational,
    }

    // `a` dominates `b` (same edge set) when a's step function is pointwise
    // at least b's; it suffices to compare at b's breakpoints because b is
    // constant between them and a is nondecreasing.
    fn value_at(points: &[(Rational, Rational)], b: &Rational) -> Rational {
        let idx = points.partition_point(|(budget, _)| budget <= b);
        if idx == 0 {
            Rational::zero()
        } else {
            points[idx - 1].1.clone()
        }
    }
    fn dominates(a: &[(Rational, Rational)], b: &[(Rational, Rational)]) -> bool {
        b.iter().all(|(t, val)| &value_at(a, t) >= val)
    }

    let root = inst.root();
    let mut start_verts = BTreeSet::new();
    start_verts.insert(root);
    let start = State {
        order: Vec::new(),
        profile: vec![(Rational::zero(), Rational::zero())],
        verts: start_verts,
        cost: Rational::zero(),
        prize: Rational::zero(),
    };

    let mut layer: BTreeMap<Vec<EdgeId>, Vec<State>> = BTreeMap::new();
    layer.insert(Vec::new(), vec![start]);
    let mut best: Option<(MuValue, Vec<EdgeId>)> = None;

    while !layer.is_empty() {
        let mut next: BTreeMap<Vec<EdgeId>, Vec<State>> = BTreeMap::new();
        for states in layer.values() {
            for state in states {
                if prize_vertices.iter().all(|v| state.verts.contains(v)) {
                    let profile = StepProfile {
                        points: state.profile.clone(),
                    };
                    let mu = min_mu_of_profile(&frontier, &profile, alpha);
                    let better = match &best {
                        None => true,
                        Some((bmu, border)) => {
                            mu.cmp(bmu)
                                .then_with(|| border.cmp(&state.order).reverse())
                                .is_lt()
                        }
                    };
                    if better {
                        best = Some((mu, state.order.clone()));
                    }
                    continue; // extending past the spanning set never helps
                }
                for edge in inst.edges() {
                    if edge.is_loop() {
                        continue;
                    }
                    let u_in = state.verts.contains(&edge.u);
                    let v_in = state.verts.contains(&edge.v);
                    if u_in == v_in {
                        continue;
                    }
                    let far = if u_in { edge.v } else { edge.u };
                    let mut order = state.order.clone();
                    order.push(edge.id);
                    let mut verts = state.verts.clone();
                    verts.insert(far);
                    let cost = &state.cost + &edge.cost;
                    let prize = &state.prize + inst.prize(far);
                    let mut profile = state.profile.clone();
                    profile.push((cost.clone(), prize.clone()));

                    let mut key: Vec<EdgeId> = order.clone();
                    key.sort();
                    let bucket = next.entry(key).or_default();
                    if bucket.iter().any(|s| dominates(&s.profile, &profile)) {
                        continue;
                    }
                    bucket.retain(|s| !dominates(&profile, &s.profile));
                    bucket.push(State {
                        order,
                        profile,
                        verts,
                        cost,
                        prize,
                    });
                }
            }
        }
        layer = next;
    }

    let (mu, order) = best.expect("every instance admits a spanning ordering");
    Ok((IncrementalSolution::new(inst, order)?, mu))
}
