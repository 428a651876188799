//! Classical and multitasking GSEMO for maximizing a monotone submodular
//! function under several linear cost constraints at once.
//!
//! The building blocks:
//!
//! - [`bitstring`], [`constraint`], [`pareto`]: search points, costs,
//!   objective vectors and the nondominated archive.
//! - [`objectives`]: maximum coverage on graphs plus small fixtures.
//! - [`graph`]: graph files and the unit / random-linear / degree-linear cost regimes.
//! - [`gsemo`]: the optimizer, its two fitness formulations and run traces.
//! - [`oracles`]: brute-force optima, greedy, and a submodularity checker.
//! - [`stats`]: summary statistics and the Kruskal-Wallis comparison.
//! - [`harness`]: seeded repeated experiments with CSV reports.
//!
//! ```
//! use mt_submod::prelude::*;
//!
//! let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
//! let f = CoverageObjective::from_graph(&g);
//! let ps = ProblemSet::multitask(&f, vec![Constraint::unit(4, 1), Constraint::unit(4, 2)]).unwrap();
//! let (archive, _trace) = gsemo::run(&ps, &RunConfig::new(2_000, 7)).unwrap();
//! let (_, best) = gsemo::extract_best(&archive, &ps, 1).unwrap();
//! assert_eq!(best, 4.0);
//! ```

pub mod bitstring;
pub mod constraint;
pub mod error;
pub mod graph;
pub mod gsemo;
pub mod harness;
pub mod objectives;
pub mod oracles;
pub mod pareto;
pub mod stats;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bitstring::BitString;
    pub use crate::constraint::{population_bound, Constraint, ConstraintKind};
    pub use crate::graph::{build_constraint, parse_graph, Graph, GraphFormat, Regime};
    pub use crate::gsemo::{self, extract_best, Init, Mode, ProblemSet, RunConfig, RunTrace};
    pub use crate::objectives::{CoverageObjective, IncrementalObjective, ModularObjective, Objective};
    pub use crate::pareto::{dominance, Dominance, ObjectiveVector, Population};
    pub use crate::{Error, Result};
}
