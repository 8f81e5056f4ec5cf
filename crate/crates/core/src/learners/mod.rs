//! Learners that compute Gödel numbers in the limit.

mod enumeration;
mod liminf;
mod pockets;
mod shrinking;
mod trace;

use serde::{Deserialize, Serialize};

use crate::oracles::OracleConfig;

pub use enumeration::{enum_learner, CandidateClass, Disagreement, EnumLearner, EnumRun};
pub use liminf::{kol_liminf_enumerator, LiminfRun};
pub use pockets::{
    amalgamation_learn, build_pockets, is_antichain, prune_pockets, reaudit, AmalgamationRun, Elimination,
    Pocket, PocketTable, PromiseViolation,
};
pub use shrinking::{bounded_min_learner, set_code, BoundedMinRun};
pub use trace::{run_to_limit, GuessStream, GuessTrace, LimitLearner, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LearnerConfig {
    /// Equal guesses in a row that count as convergence.
    pub stability_window: u64,
    pub max_steps: u64,
}

impl LearnerConfig {
    /// A stability window one longer than any false candidate can survive,
    /// and enough steps to try every universe index.
    pub fn for_oracle(cfg: &OracleConfig) -> Self {
        let stability_window = cfg.window + 2;
        LearnerConfig {
            stability_window,
            max_steps: (cfg.index_bound + 2) * (cfg.window + 2) + stability_window,
        }
    }
}
