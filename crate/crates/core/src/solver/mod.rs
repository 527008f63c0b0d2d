//! Exact searches for solutions of bounded height.

mod colex;
mod equation;
mod falsify;
mod mu;
mod quintic;
mod search;

pub use colex::colex_successor;
pub use falsify::{check_tuple, falsification_search, is_witness, relations, FalsifyReport, TupleCheck};
pub use equation::{find_root, solve_equation_bounded, RootSpace, MAX_GRID_POINTS};
pub use mu::{mu_estimate, MuEstimate};
pub use quintic::quintic_case_study;
pub use search::{find_solution_above, solve_system_bounded, solve_with, Domain, SolveOptions, SolveOutcome, Status};
