//! The subset-problem contract and the problem-agnostic machinery built on
//! it: exhaustive optima, complementation and dualization.

use itertools::Itertools;

use crate::bitset::{ElementId, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Optimization direction of a subset problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    Minimize,
    Maximize,
}

impl Goal {
    pub fn flip(self) -> Goal {
        match self {
            Goal::Minimize => Goal::Maximize,
            Goal::Maximize => Goal::Minimize,
        }
    }

    /// Whether value `a` is strictly better than `b` under this goal.
    pub fn improves(self, a: usize, b: usize) -> bool {
        match self {
            Goal::Minimize => a < b,
            Goal::Maximize => a > b,
        }
    }
}

/// A feasible (or candidate) solution: a set of element ids. Its value is its
/// cardinality.
pub type Solution = ElementSet;

/// A solution together with its value, as produced by the exhaustive oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluatedSolution {
    pub solution: Solution,
    pub value: usize,
    pub optimal: bool,
}

impl EvaluatedSolution {
    pub fn new(solution: Solution, optimal: bool) -> Self {
        EvaluatedSolution {
            solution,
            value: solution.len(),
            optimal,
        }
    }
}

/// A problem whose feasible solutions are subsets of a universe
/// `{0, .., n-1}` and whose objective is the subset's cardinality.
pub trait SubsetProblem {
    fn universe_size(&self) -> usize;

    fn goal(&self) -> Goal;

    fn label(&self) -> String;

    /// Feasibility predicate. `s` is assumed to lie within the universe; use
    /// [`is_feasible`] for the range-checked variant.
    fn feasible(&self, s: ElementSet) -> bool;

    fn supports_restriction(&self) -> bool {
        false
    }

    /// The sub-instance `I(e)`: its feasible solutions `S'` are exactly those
    /// for which `lift(S') ∪ {e}` is feasible here.
    fn restrict(&self, e: ElementId) -> Result<Restriction<Self>>
    where
        Self: Sized,
    {
        let _ = e;
        Err(Error::UnsupportedRestriction {
            problem: self.label(),
        })
    }
}

/// Result of restricting an instance on a chosen element.
///
/// `origin[i]` is the id, in the parent's universe, of element `i` of the
/// restricted problem.
#[derive(Debug, Clone)]
pub struct Restriction<P> {
    pub problem: P,
    pub chosen: ElementId,
    pub origin: Vec<ElementId>,
}

impl<P> Restriction<P> {
    /// Maps a solution of the sub-instance back to the parent, adding the
    /// chosen element.
    pub fn lift(&self, s: Solution) -> Solution {
        s.map(&self.origin).with(self.chosen)
    }
}

pub fn universe(p: &impl SubsetProblem) -> ElementSet {
    ElementSet::full(p.universe_size())
}

fn check_range(p: &impl SubsetProblem, s: ElementSet) -> Result<()> {
    let n = p.universe_size();
    match s.last() {
        Some(e) if e >= n => Err(Error::ElementOutOfRange {
            element: e,
            universe: n,
        }),
        _ => Ok(()),
    }
}

pub fn is_feasible(p: &impl SubsetProblem, s: Solution) -> Result<bool> {
    check_range(p, s)?;
    Ok(p.feasible(s))
}

/// `universe ∖ s`.
pub fn complement(p: &impl SubsetProblem, s: Solution) -> Result<Solution> {
    check_range(p, s)?;
    Ok(universe(p).difference(s))
}

/// All `r`-subsets of `{0, .., n-1}` in lexicographic order of their sorted
/// member lists.
fn subsets_of_size(n: usize, r: usize) -> impl Iterator<Item = ElementSet> {
    (0..n)
        .combinations(r)
        .map(|c| c.into_iter().collect::<ElementSet>())
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n > budget || n > MAX_ELEMENTS {
        return Err(Error::BudgetExceeded { n, budget });
    }
    Ok(())
}

/// Cardinalities in the order an exhaustive search meets optima: ascending
/// for minimization, descending for maximization.
fn search_order(goal: Goal, n: usize) -> Box<dyn Iterator<Item = usize>> {
    match goal {
        Goal::Minimize => Box::new(0..=n),
        Goal::Maximize => Box::new((0..=n).rev()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteOutcome {
    Optimum(EvaluatedSolution),
    Infeasible,
}

impl BruteOutcome {
    pub fn optimum(self) -> Option<EvaluatedSolution> {
        match self {
            BruteOutcome::Optimum(s) => Some(s),
            BruteOutcome::Infeasible => None,
        }
    }

    pub fn value(self) -> Option<usize> {
        self.optimum().map(|s| s.value)
    }
}

/// Exact optimum by enumerating all subsets. Ties are broken by
/// (cardinality, lexicographic) order.
pub fn brute_force_optimum(p: &impl SubsetProblem, budget: usize) -> Result<BruteOutcome> {
    let n = p.universe_size();
    check_budget(n, budget)?;
    for r in search_order(p.goal(), n) {
        if let Some(s) = subsets_of_size(n, r).find(|&s| p.feasible(s)) {
            return Ok(BruteOutcome::Optimum(EvaluatedSolution::new(s, true)));
        }
    }
    Ok(BruteOutcome::Infeasible)
}

/// Every optimal solution, in enumeration order. Empty iff infeasible.
pub fn enumerate_optima(p: &impl SubsetProblem, budget: usize) -> Result<Vec<Solution>> {
    let n = p.universe_size();
    check_budget(n, budget)?;
    for r in search_order(p.goal(), n) {
        let optima: Vec<_> = subsets_of_size(n, r).filter(|&s| p.feasible(s)).collect();
        if !optima.is_empty() {
            return Ok(optima);
        }
    }
    Ok(Vec::new())
}

/// Exhaustively checks that `restrict(e)` satisfies
/// `feasible(I(e), S') ⇔ feasible(I, lift(S') ∪ {e})` for every `S'`.
pub fn restriction_is_sound<P: SubsetProblem>(p: &P, e: ElementId, budget: usize) -> Result<bool> {
    let r = p.restrict(e)?;
    let n = r.problem.universe_size();
    check_budget(n, budget)?;
    if r.origin.len() != n || r.origin.iter().any(|&o| o == e || o >= p.universe_size()) {
        return Ok(false);
    }
    Ok((0..=n)
        .flat_map(|k| subsets_of_size(n, k))
        .all(|s| r.problem.feasible(s) == p.feasible(r.lift(s))))
}

/// The dual problem D-Π: same universe, inverse goal, and `S` is feasible
/// iff its complement is feasible for Π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual<P>(pub P);

impl<P> Dual<P> {
    pub fn primal(&self) -> &P {
        &self.0
    }

    pub fn into_primal(self) -> P {
        self.0
    }
}

pub fn dualize<P: SubsetProblem>(p: P) -> Dual<P> {
    Dual(p)
}

impl<P: SubsetProblem> SubsetProblem for Dual<P> {
    fn universe_size(&self) -> usize {
        self.0.universe_size()
    }

    fn goal(&self) -> Goal {
        self.0.goal().flip()
    }

    fn label(&self) -> String {
        format!("D-{}", self.0.label())
    }

    fn feasible(&self, s: ElementSet) -> bool {
        self.0.feasible(universe(&self.0).difference(s))
    }
}

impl<P: SubsetProblem> SubsetProblem for &P {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }

    fn goal(&self) -> Goal {
        (**self).goal()
    }

    fn label(&self) -> String {
        (**self).label()
    }

    fn feasible(&self, s: ElementSet) -> bool {
        (**self).feasible(s)
    }
}
