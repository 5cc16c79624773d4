//! Parameterized approximation engines for subset problems.
//!
//! A subset problem asks for a smallest or largest subset of an element
//! universe satisfying a feasibility predicate. This crate provides
//!
//! * the [`SubsetProblem`] contract with exhaustive optima, complementation
//!   and the dual problem D-Π ([`subset`]);
//! * graph and set-system encodings such as vertex cover, dominating set and
//!   set cover ([`problems`]);
//! * polynomial approximation oracles with exact ratio bounds ([`approx`]);
//! * an exact branching search driven by an intersective oracle, and a
//!   checker for intersectivity ([`intersective`]);
//! * an approximation schema for D-Π ([`dualschema`]).

pub mod approx;
pub mod bitset;
pub mod dualschema;
pub mod error;
pub mod intersective;
pub mod problems;
pub mod subset;

pub use approx::{ApproxOracle, FnOracle, Oracle, Ratio, RatioWitness};
pub use bitset::{ElementId, ElementSet, MAX_ELEMENTS};
pub use dualschema::{
    built_in_upper_bound, dual_approx, threshold_max, threshold_min, Guarantee, SchemaConfig,
    SchemaOutcome, SchemaPath,
};
pub use error::{Error, Result};
pub use intersective::{
    branch_solve_max, branch_solve_min, verify_intersective, BranchConfig, BranchOutcome,
    BranchReport, IntersectivityReport, Verdict,
};
pub use problems::{
    make_problem, minimality_certificate, DominationState, Graph, InstanceData, Problem,
    ProblemKind, SetSystem,
};
pub use subset::{
    brute_force_optimum, complement, dualize, enumerate_optima, is_feasible, BruteOutcome, Dual,
    EvaluatedSolution, Goal, Restriction, Solution, SubsetProblem,
};
