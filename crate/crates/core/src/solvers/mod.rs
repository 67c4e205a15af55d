//! Solvers for the temporal problems, each paired with a brute-force oracle.
//!
//! `Ok(None)` means the instance is infeasible; errors are reserved for bad
//! input and exhausted budgets.

pub mod explore;
pub mod matching;
pub mod rmtc;
pub mod separation;
pub mod trted;

pub use explore::{
    explore_bruteforce, explore_connected, replay, ExplorationSchedule, Move, Replay, Step,
};
pub use matching::{
    is_delta_matching, matching, matching_exact, matching_exact_with_budget, matching_greedy,
    maximum_independent_set, MatchingResult, DEFAULT_MATCHING_BUDGET,
};
pub use rmtc::{is_r_connected, rmtc_bruteforce, rmtc_dp, rmtc_dp_from_td, RmtcSolution};
pub use separation::{
    separated, separation_bruteforce, separation_dp, separation_dp_with_stats, SeparationInstance,
    SeparationStats,
};
pub use trted::{
    max_path_reach, trted_bruteforce, trted_bruteforce_with_budget, DEFAULT_TRTED_BUDGET,
};
