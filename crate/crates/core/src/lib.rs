//! Exact solver for the weighted mutually exclusive maximum set cover
//! problem: choose pairwise-disjoint subsets that cover as many ground-set
//! elements as possible and, among those selections, have minimum total
//! weight.
//!
//! ```
//! use wmesc::{parse_instance, solve};
//!
//! let inst = parse_instance("4 3\n1.0 2 0 1\n1.0 2 1 2\n1.0 2 2 3\n").unwrap();
//! let (best, stats) = solve(&inst);
//! assert_eq!(best.chosen, vec![0, 2]);
//! assert_eq!(best.covered, 4);
//! assert!(stats.leaves >= 1);
//! ```

pub mod analysis;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use analysis::{bench_corpus, branching_root, check_bound, write_csv, BenchRow, BoundReport, Recurrence, Slack};
pub use generators::{gen_bounded_degree, gen_path, gen_planted, gen_random, gen_ring, GenConfig, GenError};
pub use graph::{GraphError, IntersectionGraph, SubProblem};
pub use instance::{
    better, evaluate, parse_instance, EvalError, Instance, InstanceError, ParseError, Solution, DEFAULT_TOL,
};
pub use oracle::{brute_force, brute_force_packing, OracleError};
pub use reduction::{reduce_3set_packing, PackingError, PackingInstance};
pub use solver::{branch, solve, Branches, SolveError, SolveStats, Solver};
