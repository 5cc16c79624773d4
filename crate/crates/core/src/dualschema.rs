//! Approximation schema for the dual problem D-Π.
//!
//! For a Π-approximation returning `k'` elements, the complement has
//! `n - k'` elements and is feasible for D-Π. When `n` is large compared to
//! the optimum `k` of Π this complement is within `1 ± ε` of the D-Π
//! optimum; otherwise the instance is small relative to `k` and exhaustive
//! search is used instead.
//!
//! * Π minimization: complement ratio `(n - k')/(n - k) ≥ 1 - ε` as soon as
//!   `n ≥ ((ρ - 1 + ε)/ε)·k`.
//! * Π maximization: complement ratio `(n - k')/(n - k) ≤ 1 + ε` as soon as
//!   `n ≥ ((1 - ρ + ε)/ε)·k`, a factor that never exceeds `2/ε`.
//!
//! `k` is unknown, so the test is run on an observable upper bound of it:
//! `k'` itself for minimization, `min(n, ⌈k'/ρ⌉, hint)` for maximization.
//! Replacing `k` by an upper bound only makes the test stricter.

use num_traits::{One, Zero};

use crate::approx::{integer, ApproxOracle, Ratio};
use crate::approx::maximal_matching_size;
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::subset::{brute_force_optimum, complement, dualize, Goal, Solution, SubsetProblem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaConfig {
    pub epsilon: Ratio,
    /// Largest universe the exhaustive fallback may enumerate.
    pub brute_cap: usize,
    /// Known upper bound on the optimum of a maximization Π.
    pub k_upper_hint: Option<usize>,
    /// Take the exhaustive path even when the complement path qualifies.
    pub force_brute: bool,
}

impl SchemaConfig {
    pub const DEFAULT_BRUTE_CAP: usize = 20;

    pub fn new(epsilon: Ratio) -> Result<Self> {
        check_epsilon(&epsilon)?;
        Ok(SchemaConfig {
            epsilon,
            brute_cap: Self::DEFAULT_BRUTE_CAP,
            k_upper_hint: None,
            force_brute: false,
        })
    }
}

fn check_epsilon(epsilon: &Ratio) -> Result<()> {
    if epsilon <= &Ratio::zero() || epsilon > &Ratio::one() {
        return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    Ok(())
}

/// `(ρ - 1 + ε)/ε` for a minimization ratio `ρ ≥ 1`.
pub fn threshold_min(rho: &Ratio, epsilon: &Ratio) -> Result<Ratio> {
    check_epsilon(epsilon)?;
    if rho < &Ratio::one() {
        return Err(Error::InvalidParameter(format!(
            "a minimization ratio must be at least 1, got {rho}"
        )));
    }
    Ok((rho - Ratio::one() + epsilon) / epsilon)
}

/// `(1 - ρ + ε)/ε` for a maximization ratio `0 < ρ ≤ 1`, capped at `2/ε`.
pub fn threshold_max(rho: &Ratio, epsilon: &Ratio) -> Result<Ratio> {
    check_epsilon(epsilon)?;
    if rho <= &Ratio::zero() || rho > &Ratio::one() {
        return Err(Error::InvalidParameter(format!(
            "a maximization ratio must lie in (0, 1], got {rho}"
        )));
    }
    let derived = (Ratio::one() - rho + epsilon) / epsilon;
    let cap = integer(2) / epsilon;
    Ok(derived.min(cap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaPath {
    /// Complement of the approximate Π-solution.
    Approx,
    /// Exhaustive search over D-Π.
    Brute,
    /// The complement path did not qualify and `n` exceeds the brute cap.
    BudgetExceeded,
}

/// Multiplicative bound on `dual_value / opt(D-Π)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guarantee {
    AtLeast(Ratio),
    AtMost(Ratio),
    Exact,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaDiagnostics {
    pub n: usize,
    /// Size of the oracle's Π-solution.
    pub k_prime: usize,
    pub rho: Ratio,
    pub threshold: Ratio,
    /// Upper bound on `k` used in the dispatch test.
    pub k_bound: usize,
    /// `n - k_bound`, the matching lower bound on `k_D = n - k`.
    pub k_dual_bound: usize,
    pub test_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaOutcome {
    pub path: SchemaPath,
    pub dual_solution: Option<Solution>,
    pub dual_value: Option<usize>,
    pub guarantee: Guarantee,
    pub diagnostics: SchemaDiagnostics,
}

fn ceil_div(value: usize, by: &Ratio) -> usize {
    let q = integer(value) / by;
    q.ceil().to_integer().try_into().unwrap_or(usize::MAX)
}

/// Runs the schema for D-Π given the primal problem Π and an oracle for it.
pub fn dual_approx<P, O>(p: &P, oracle: &O, cfg: &SchemaConfig) -> Result<SchemaOutcome>
where
    P: SubsetProblem,
    O: ApproxOracle<P> + ?Sized,
{
    check_epsilon(&cfg.epsilon)?;
    if oracle.goal() != p.goal() {
        return Err(Error::GoalMismatch(format!(
            "oracle {} does not share the goal of {}",
            oracle.name(),
            p.label()
        )));
    }
    let n = p.universe_size();
    let approx = oracle.run(p)?.ok_or(Error::Infeasible)?;
    let k_prime = approx.len();
    let rho = oracle.ratio(p)?;
    let eps = &cfg.epsilon;

    let (threshold, k_bound, guarantee) = match p.goal() {
        Goal::Minimize => (
            threshold_min(&rho, eps)?,
            k_prime,
            Guarantee::AtLeast(Ratio::one() - eps),
        ),
        Goal::Maximize => {
            let mut k_ub = n.min(ceil_div(k_prime, &rho));
            if let Some(hint) = cfg.k_upper_hint {
                k_ub = k_ub.min(hint);
            }
            // the optimum is at least k', whatever the hint says
            let k_ub = k_ub.max(k_prime);
            (threshold_max(&rho, eps)?, k_ub, Guarantee::AtMost(Ratio::one() + eps))
        }
    };
    let test_passed = integer(n) >= &threshold * integer(k_bound);
    let diagnostics = SchemaDiagnostics {
        n,
        k_prime,
        rho,
        threshold,
        k_bound,
        k_dual_bound: n - k_bound.min(n),
        test_passed,
    };

    if test_passed && !cfg.force_brute {
        let dual = complement(p, approx)?;
        return Ok(SchemaOutcome {
            path: SchemaPath::Approx,
            dual_solution: Some(dual),
            dual_value: Some(dual.len()),
            guarantee,
            diagnostics,
        });
    }
    if n > cfg.brute_cap {
        return Ok(SchemaOutcome {
            path: SchemaPath::BudgetExceeded,
            dual_solution: None,
            dual_value: None,
            guarantee: Guarantee::None,
            diagnostics,
        });
    }
    let best = brute_force_optimum(&dualize(p), cfg.brute_cap)?
        .optimum()
        .ok_or(Error::Infeasible)?;
    Ok(SchemaOutcome {
        path: SchemaPath::Brute,
        dual_solution: Some(best.solution),
        dual_value: Some(best.value),
        guarantee: Guarantee::Exact,
        diagnostics,
    })
}

/// Cheap upper bound on the optimum of a maximization problem, for use as
/// [`SchemaConfig::k_upper_hint`].
///
/// Independent set: `n` minus a maximal matching, since every vertex cover
/// needs one endpoint per matching edge. Clique: degeneracy plus one.
pub fn built_in_upper_bound(p: &Problem) -> Option<usize> {
    match p {
        Problem::IndependentSet(g) => Some(g.n_vertices() - maximal_matching_size(g)),
        Problem::Clique(g) if g.n_vertices() == 0 => Some(0),
        Problem::Clique(g) => Some(g.degeneracy() + 1),
        _ => None,
    }
}
