use thiserror::Error;

use crate::bitset::ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the universe of size {universe}")]
    ElementOutOfRange { element: ElementId, universe: usize },

    #[error("instance has {n} elements; at most {max} are supported")]
    CapacityExceeded { n: usize, max: usize },

    #[error("exhaustive search over {n} elements exceeds the budget of {budget}")]
    BudgetExceeded { n: usize, budget: usize },

    #[error("{problem} does not support restriction")]
    UnsupportedRestriction { problem: String },

    #[error("{what} cannot be applied to {problem}")]
    KindMismatch { what: String, problem: String },

    #[error("goal mismatch: {0}")]
    GoalMismatch(String),

    #[error("the given set is not a vertex cover")]
    NotACover,

    #[error("instance has no feasible solution")]
    Infeasible,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
