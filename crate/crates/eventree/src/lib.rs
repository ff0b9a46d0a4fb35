//! Certified spanning even trees of regular nonbipartite graphs.
//!
//! A spanning tree is *even* when all of its leaves lie in one class of the
//! tree's 2-coloring — equivalently, every pair of leaves is an even
//! distance apart. Every connected nonbipartite regular graph has one, and
//! this crate constructs it in polynomial time:
//!
//! 1. [`factor::good_12_factor`] / [`factor::petersen_two_factor`] cover the
//!    graph by disjoint single edges and cycles via a perfect matching in
//!    the bipartite double cover (or an Euler orientation for even degree);
//! 2. [`builder::build_good_even_tree`] turns one or more factor components
//!    into an even tree whose complement is still factor-covered;
//! 3. [`spanner::extend_to_spanning`] absorbs the remaining components one
//!    round at a time, keeping the tree even throughout;
//! 4. [`verify`] re-checks the result from scratch, producing a
//!    [`verify::Certificate`] that is independent of the construction.
//!
//! [`solve::solve`] runs the whole pipeline; [`gen`] supplies random regular
//! graphs, fixture graphs, and brute-force oracles for cross-checking.
//!
//! ```
//! use eventree::{fixture, solve, SolveOptions};
//!
//! let g = fixture("petersen").unwrap();
//! let s = solve(&g, &SolveOptions::default()).unwrap();
//! assert_eq!(s.tree_edges.len(), g.n() - 1);
//! assert!(s.certificate.is_pass());
//! ```

pub mod builder;
pub mod factor;
pub mod gen;
pub mod graph;
pub mod solve;
pub mod spanner;
pub mod verify;

pub use builder::{build_good_even_tree, BuilderError, GoodEvenTree, Side};
pub use factor::{
    factor_with_cycle, good_12_factor, petersen_two_factor, Factor, FactorCensus,
    FactorComponent, FactorError,
};
pub use gen::{
    brute_force_bridges, brute_force_even_spanning_tree, brute_force_two_factor_exists,
    count_spanning_trees, edges_form_even_tree, fixture, fixture_names, random_regular,
    GenError, GenSpec,
};
pub use graph::{Edge, Graph, GraphError};
pub use solve::{solve, Solution, SolveError, SolveOptions};
pub use spanner::{extend_to_spanning, leaf_sides, AugmentationStep, SpannerError, StepKind, TreeState};
pub use verify::{
    verify_even, verify_good_even_tree, verify_good_factor, verify_spanning_even_tree,
    verify_tree, Certificate, Check,
};
