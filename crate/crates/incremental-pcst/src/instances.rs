//! Parameterized instance families and seeded random generators.
//!
//! The named families are small adversarial constructions: each one pins a
//! specific behaviour of the ordering strategies (a budget trap for zero
//! slack, a greedy gap below the eccentricity, unbounded factors for stars,
//! a cycle that forces slack beyond the eccentricity, and a diamond family
//! with a cost trade-off between its two spanning strategies). The random
//! families are deterministic in the seed; the same seed always yields a
//! byte-identical instance.

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Instance, VertexId};
use crate::rational::{rat, Rational};

fn v(i: u32) -> VertexId {
    VertexId(i)
}

fn e(i: u32) -> EdgeId {
    EdgeId(i)
}

fn positive(name: &str, value: &Rational) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{name} must be positive")))
    }
}

/// Root with a cheap low-prize leaf and an expensive unit-prize leaf:
/// edge 0 costs `chi/2` towards prize `delta`, edge 1 costs `chi` towards
/// prize 1. For small `delta` no ordering is competitive without slack.
pub fn gen_fork(chi: &Rational, delta: &Rational) -> Result<Instance> {
    positive("chi", chi)?;
    if !delta.is_positive() || delta >= &Rational::one() {
        return Err(Error::BadParameter("delta must lie in (0, 1)".into()));
    }
    Instance::new(
        v(0),
        vec![(v(0), Rational::zero()), (v(1), delta.clone()), (v(2), Rational::one())],
        vec![
            (e(0), v(0), v(1), chi / rat(2, 1)),
            (e(1), v(0), v(2), chi.clone()),
        ],
    )
}

/// Root with a (cost `eps`, prize `eps`) leaf (edge 0) and a (cost 1,
/// prize 2) leaf (edge 1). The unit edge is strictly denser, so the greedy
/// holds nothing below budget 1 while budget `eps` already pays.
pub fn gen_skewed_fork(eps: &Rational) -> Result<Instance> {
    positive("eps", eps)?;
    Instance::new(
        v(0),
        vec![(v(0), Rational::zero()), (v(1), eps.clone()), (v(2), rat(2, 1))],
        vec![(e(0), v(0), v(1), eps.clone()), (e(1), v(0), v(2), Rational::one())],
    )
}

/// Star with one heavy arm (cost `chi`, prize `2 chi`, edge 0) and `arms`
/// light arms (cost and prize `chi / arms` each, edges 1..=arms).
pub fn gen_heavy_star(chi: &Rational, arms: usize) -> Result<Instance> {
    positive("chi", chi)?;
    if arms == 0 {
        return Err(Error::BadParameter("arms must be at least 1".into()));
    }
    let light = chi / Rational::from_integer((arms as i64).into());
    let mut vertices = vec![(v(0), Rational::zero()), (v(1), chi * rat(2, 1))];
    let mut edges = vec![(e(0), v(0), v(1), chi.clone())];
    for i in 0..arms as u32 {
        vertices.push((v(2 + i), light.clone()));
        edges.push((e(1 + i), v(0), v(2 + i), light.clone()));
    }
    Instance::new(v(0), vertices, edges)
}

/// Root with a (cost 1/2, prize 1) leaf (edge 0) and a (cost 1,
/// prize `prize`) leaf (edge 1). Scaling the second prize up defeats any
/// fixed factor once the slack drops below half the eccentricity.
pub fn gen_steep_fork(prize: &Rational) -> Result<Instance> {
    if prize < &Rational::one() {
        return Err(Error::BadParameter("prize must be at least 1".into()));
    }
    Instance::new(
        v(0),
        vec![(v(0), Rational::zero()), (v(1), Rational::one()), (v(2), prize.clone())],
        vec![
            (e(0), v(0), v(1), rat(1, 2)),
            (e(1), v(0), v(2), Rational::one()),
        ],
    )
}

/// A hub behind a cost-3 edge serves three prize-2 leaves via unit edges;
/// each leaf is also reachable directly from the root at cost `3 + eps`,
/// and a side vertex of prize `eps` hangs off the root at cost `2 eps`.
/// Requires `0 < eps < 1/3`. The unique densest subtree is the hub tree
/// (edges 0..=3), so the greedy holds nothing below budget 4 although the
/// eccentricity is only `3 + eps`.
pub fn gen_hub_bypass(eps: &Rational) -> Result<Instance> {
    if !eps.is_positive() || eps >= &rat(1, 3) {
        return Err(Error::BadParameter("eps must lie in (0, 1/3)".into()));
    }
    let bypass = rat(3, 1) + eps;
    let vertices = vec![
        (v(0), Rational::zero()),
        (v(1), Rational::zero()), // hub
        (v(2), rat(2, 1)),
        (v(3), rat(2, 1)),
        (v(4), rat(2, 1)),
        (v(5), eps.clone()), // side vertex
    ];
    let edges = vec![
        (e(0), v(0), v(1), rat(3, 1)),
        (e(1), v(1), v(2), Rational::one()),
        (e(2), v(1), v(3), Rational::one()),
        (e(3), v(1), v(4), Rational::one()),
        (e(4), v(0), v(2), bypass.clone()),
        (e(5), v(0), v(3), bypass.clone()),
        (e(6), v(0), v(4), bypass),
        (e(7), v(0), v(5), rat(2, 1) * eps),
    ];
    Instance::new(v(0), vertices, edges)
}

/// `copies` diamond components merged at the root. Component `i` has a
/// direct edge `4i` (cost 3) to prize-3 vertex `u`, a cost-2 edge `4i+1`
/// to the junction `w`, a cost-3 edge `4i+2` from `w` to prize-3 vertex
/// `v`, and a cost-2 chord `4i+3` between `w` and `u`. Collecting one prize
/// fast (cost 3) and collecting both cheaply (cost 7) exclude each other.
pub fn gen_diamonds(copies: usize) -> Result<Instance> {
    if copies == 0 {
        return Err(Error::BadParameter("copies must be at least 1".into()));
    }
    let mut vertices = vec![(v(0), Rational::zero())];
    let mut edges = Vec::new();
    for i in 0..copies as u32 {
        let u = v(3 * i + 1);
        let w = v(3 * i + 2);
        let vv = v(3 * i + 3);
        vertices.push((u, rat(3, 1)));
        vertices.push((w, Rational::zero()));
        vertices.push((vv, rat(3, 1)));
        edges.push((e(4 * i), v(0), u, rat(3, 1)));
        edges.push((e(4 * i + 1), v(0), w, rat(2, 1)));
        edges.push((e(4 * i + 2), w, vv, rat(3, 1)));
        edges.push((e(4 * i + 3), w, u, rat(2, 1)));
    }
    Instance::new(v(0), vertices, edges)
}

fn random_cost(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1..=12), 4)
}

fn random_prize(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_range(0..3) == 0 {
        Rational::zero()
    } else {
        rat(rng.gen_range(1..=12), 4)
    }
}

/// A uniformly attached random tree on `n` vertices; vertex 0 is the root.
/// Costs are quarters in `[1/4, 3]`, prizes likewise with a one-third
/// chance of zero. Deterministic in the seed.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = vec![(v(0), Rational::zero())];
    let mut edges = Vec::new();
    for i in 1..n as u32 {
        let parent = rng.gen_range(0..i);
        vertices.push((v(i), random_prize(&mut rng)));
        edges.push((e(i - 1), v(parent), v(i), random_cost(&mut rng)));
    }
    Instance::new(v(0), vertices, edges)
}

/// A connected random graph: a random spanning tree plus `m - (n - 1)`
/// distinct extra edges between non-adjacent vertex pairs. Deterministic
/// in the seed.
pub fn gen_random_graph(n: usize, m: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::BadParameter("n must be at least 1".into()));
    }
    let spanning = n - 1;
    if m < spanning || m > n * spanning / 2 {
        return Err(Error::BadParameter(format!(
            "m must lie between {spanning} and {} for n = {n}",
            n * spanning / 2
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertices = vec![(v(0), Rational::zero())];
    let mut edges = Vec::new();
    let mut present: Vec<(u32, u32)> = Vec::new();
    for i in 1..n as u32 {
        let parent = rng.gen_range(0..i);
        vertices.push((v(i), random_prize(&mut rng)));
        present.push((parent.min(i), parent.max(i)));
        edges.push((e(i - 1), v(parent), v(i), random_cost(&mut rng)));
    }
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for a in 0..n as u32 {
        for b in (a + 1)..n as u32 {
            if !present.contains(&(a, b)) {
                candidates.push((a, b));
            }
        }
    }
    for extra in 0..(m - spanning) {
        let pick = rng.gen_range(0..candidates.len());
        let (a, b) = candidates.swap_remove(pick);
        edges.push((
            e((spanning + extra) as u32),
            v(a),
            v(b),
            random_cost(&mut rng),
        ));
    }
    Instance::new(v(0), vertices, edges)
}

/// A named family plus its parameters; the CLI's `generate` subcommand maps
/// family tags onto these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Fork { chi: Rational, delta: Rational },
    SkewedFork { eps: Rational },
    HeavyStar { chi: Rational, arms: usize },
    SteepFork { prize: Rational },
    HubBypass { eps: Rational },
    Diamonds { copies: usize },
    RandomTree { n: usize, seed: u64 },
    RandomGraph { n: usize, m: usize, seed: u64 },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::Fork { .. } => "fork",
            GeneratorSpec::SkewedFork { .. } => "skewed-fork",
            GeneratorSpec::HeavyStar { .. } => "heavy-star",
            GeneratorSpec::SteepFork { .. } => "steep-fork",
            GeneratorSpec::HubBypass { .. } => "hub-bypass",
            GeneratorSpec::Diamonds { .. } => "diamonds",
            GeneratorSpec::RandomTree { .. } => "random-tree",
            GeneratorSpec::RandomGraph { .. } => "random-graph",
        }
    }

    pub fn generate(&self) -> Result<Instance> {
        match self {
            GeneratorSpec::Fork { chi, delta } => gen_fork(chi, delta),
            GeneratorSpec::SkewedFork { eps } => gen_skewed_fork(eps),
            GeneratorSpec::HeavyStar { chi, arms } => gen_heavy_star(chi, *arms),
            GeneratorSpec::SteepFork { prize } => gen_steep_fork(prize),
            GeneratorSpec::HubBypass { eps } => gen_hub_bypass(eps),
            GeneratorSpec::Diamonds { copies } => gen_diamonds(*copies),
            GeneratorSpec::RandomTree { n, seed } => gen_random_tree(*n, *seed),
            GeneratorSpec::RandomGraph { n, m, seed } => gen_random_graph(*n, *m, *seed),
        }
    }
}
