//! Incremental prize-collecting Steiner trees.
//!
//! Given an undirected graph with positive rational edge costs, nonnegative
//! rational vertex prizes and a root, this crate builds *incremental
//! solutions*: edge orderings whose every prefix is a tree containing the
//! root and whose full edge set spans all positive-prize vertices. The goal
//! is an ordering whose budget-`B` prefix stays close to the best tree of
//! cost at most `B`, simultaneously for every budget.
//!
//! Three ordering strategies are provided, together with an exact
//! verification harness:
//!
//! - [`tree_greedy`]: on trees, repeatedly fixes a minimum inclusion-wise
//!   maximum-density subtree of the contracted instance and emits its
//!   root-incident edge. Polynomial via Dinkelbach iteration on a tree DP.
//! - [`graph_greedy`]: the same scheme on general graphs, with an exact
//!   (exponential) maximum-density oracle over all rooted subtrees.
//! - [`scaling`]: capacity scaling; solves exact budgeted subproblems at
//!   budgets doubling from the root eccentricity and concatenates their
//!   orderings.
//! - [`verify`]: step profiles, the additive/multiplicative competitiveness
//!   check `mu * p(ALG(B + alpha)) >= p(OPT(B))` for all budgets, minimal
//!   `mu`/`alpha` searches, forest extraction and exhaustive ordering search.
//! - [`checks`]: structural invariants of the produced traces (block
//!   structure, density chains, budget lower bounds).
//! - [`instances`]: parameterized instance families and seeded random
//!   generators.
//!
//! Everything is exact: costs, prizes, densities and budgets are arbitrary
//! precision rationals end to end, including all file formats.
//!
//! See the `examples/` directory for runnable walkthroughs of each
//! capability, and the `ipcst` binary for a batch front-end.

pub mod checks;
pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod graph_greedy;
pub mod instances;
pub mod rational;
pub mod scaling;
pub mod tree_greedy;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    ContractedGraph, Edge, EdgeId, Forest, ForestComponent, IncrementalSolution, Instance,
    RootedSubtree, TreeView, VertexId,
};
pub use rational::Rational;

/// Edge-count ceiling for the exponential oracles (subtree enumeration,
/// exact frontiers). Above this the operations refuse rather than degrade.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Edge-count ceiling for the exhaustive incremental-ordering search.
pub const DEFAULT_ORDERING_SEARCH_BOUND: usize = 12;

/// Edge-count ceiling for the forest-extraction subset search.
pub const DEFAULT_FOREST_SEARCH_BOUND: usize = 20;
