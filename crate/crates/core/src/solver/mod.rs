//! The integer feasibility system for the canonical pushforward pattern and
//! its exhaustive solution.
//!
//! For a group `G` and a distinguished nonzero `g′`, a cover whose
//! pushforward is `O ⊕ O(−2)^{d−2} ⊕ O(−4)` with the `O(−4)` summand at
//! `g′` must have branch degrees `x_α ≥ 0` solving
//!
//! ```text
//! Σ_α α_i x_α                 = n_i l_{e_i}                (i = 1..k)
//! Σ_α ⌊Σ_i g_i α_i/n_i⌋ x_α   = Σ_i g_i l_{e_i} − l_g      (g ≠ 0)
//! ```
//!
//! with `l_{g′} = 4` and `l_g = 2` otherwise. [`classify_order`] runs every
//! `(G, g′)` cell of an order, [`sweep`] a range of orders, and [`dedup`]
//! folds the solutions of an elementary abelian group into automorphism orbits.

mod classify;
mod dedup;
mod search;
mod system;

pub use classify::{
    classify_order, sweep, Classification, ClassifyOptions, GroupClassification, GroupSummary,
    SolutionRecord, SweepRow, SweepTable,
};
pub use dedup::{dedup, dedup_exhaustive, Orbit, EXHAUSTIVE_DEDUP_MAX_ORDER};
pub use search::{enumerate_solutions, SearchOptions, SearchOutcome};
pub use system::{build_system, FeasibilitySystem, RowLabel, TargetPattern};

use thiserror::Error;

use crate::cover::CoverError;
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search for {group} with g' = {gprime} exceeded the node cap of {cap}")]
    NodeCap {
        group: String,
        gprime: String,
        cap: u64,
    },
    #[error("solution {x} for {group}, g' = {gprime} failed re-verification: {reason}")]
    Unsound {
        group: String,
        gprime: String,
        x: String,
        reason: String,
    },
    #[error("distinguished element must be a nonzero element of the group")]
    BadPattern,
    #[error("order must be at least 2, got {0}")]
    BadOrder(u64),
    #[error("group {group} does not have order {order}")]
    GroupOrder { group: String, order: u64 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
}
