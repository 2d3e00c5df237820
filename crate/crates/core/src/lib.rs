//! Weakly stable noncrossing matchings.
//!
//! Men and women sit on two parallel lines, each with a strict preference
//! list over the other side. A matching is noncrossing when no two of its
//! edges intersect, and weakly stable when no blocking pair could be added
//! without crossing an existing edge. [`solver::solve`] finds one in
//! O(n1·n2) scans; [`oracle`] holds brute-force references for checking it.
//!
//! ```
//! use stable_noncrossing::{solve, Instance};
//!
//! let inst: Instance = "2 2\n2 1\n1 2\n2 1\n1 2\n".parse().unwrap();
//! let sol = solve(&inst).unwrap();
//! assert_eq!(sol.matching.to_text(), "1 2\n");
//! ```

pub mod error;
pub mod instance;
pub mod oracle;
pub mod rmq;
pub mod solver;
pub mod stability;

pub use error::{MatchingError, OracleError, ParseError, SolverError};
pub use instance::{Instance, Rank, RankTable};
pub use solver::{solve, solve_with, Solution, SolverStats, Trace};
pub use stability::Matching;
