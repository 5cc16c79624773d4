//! Exact parameterized search driven by an intersective approximation
//! oracle, and an exhaustive checker for intersectivity itself.
//!
//! The search is a bounded-depth branching: at every node the oracle is run
//! on the current sub-instance and the node branches on each element of its
//! output, restricting the instance to solutions containing that element.
//! If the oracle's output always meets some optimal solution, one branch
//! stays consistent with an optimum all the way down.

use std::collections::HashSet;

use crate::approx::{integer, ApproxOracle};
use crate::bitset::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::subset::{enumerate_optima, Goal, Solution, SubsetProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchConfig {
    /// The parameter `k`: the largest (minimization) or required
    /// (maximization) solution size.
    pub budget_k: usize,
    pub node_cap: usize,
    pub prune_enabled: bool,
}

impl BranchConfig {
    pub const DEFAULT_NODE_CAP: usize = 1_000_000;

    pub fn new(budget_k: usize) -> Self {
        BranchConfig {
            budget_k,
            node_cap: Self::DEFAULT_NODE_CAP,
            prune_enabled: true,
        }
    }

    pub fn without_prune(mut self) -> Self {
        self.prune_enabled = false;
        self
    }

    pub fn with_node_cap(mut self, node_cap: usize) -> Self {
        self.node_cap = node_cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchOutcome {
    Found(Solution),
    NoInstance,
    /// The search was cut off; `best` is the best solution seen so far.
    NodeCapExceeded { best: Option<Solution> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    pub outcome: BranchOutcome,
    pub nodes_expanded: usize,
    pub max_depth: usize,
    pub max_arity: usize,
}

impl BranchReport {
    pub fn solution(&self) -> Option<Solution> {
        match self.outcome {
            BranchOutcome::Found(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, BranchOutcome::Found(_))
    }
}

struct Node<P> {
    problem: P,
    /// Maps the node's universe ids to root ids.
    lift: Vec<ElementId>,
    /// Elements chosen so far, in root ids.
    path: Solution,
    depth: usize,
}

impl<P: SubsetProblem> Node<P> {
    fn root(p: &P) -> Self
    where
        P: Clone,
    {
        Node {
            problem: p.clone(),
            lift: (0..p.universe_size()).collect(),
            path: ElementSet::EMPTY,
            depth: 0,
        }
    }

    /// Children not reached before by another ordering of the same choices.
    /// Restrictions commute, so a node is determined by its path.
    fn children(&self, branch_on: Solution, seen: &mut HashSet<Solution>) -> Result<Vec<Node<P>>> {
        let mut out = Vec::with_capacity(branch_on.len());
        for e in branch_on {
            let path = self.path.with(self.lift[e]);
            if !seen.insert(path) {
                continue;
            }
            let r = self.problem.restrict(e)?;
            out.push(Node {
                lift: r.origin.iter().map(|&o| self.lift[o]).collect(),
                path,
                depth: self.depth + 1,
                problem: r.problem,
            });
        }
        Ok(out)
    }
}

#[derive(Default)]
struct Stats {
    nodes_expanded: usize,
    max_depth: usize,
    max_arity: usize,
}

impl Stats {
    fn report(self, outcome: BranchOutcome) -> BranchReport {
        BranchReport {
            outcome,
            nodes_expanded: self.nodes_expanded,
            max_depth: self.max_depth,
            max_arity: self.max_arity,
        }
    }
}

fn check_setup<P, O>(p: &P, oracle: &O, cfg: &BranchConfig, goal: Goal) -> Result<()>
where
    P: SubsetProblem,
    O: ApproxOracle<P> + ?Sized,
{
    if p.goal() != goal || oracle.goal() != goal {
        return Err(Error::GoalMismatch(format!(
            "{goal:?} search needs a {goal:?} problem and oracle, got {} with oracle {}",
            p.label(),
            oracle.name()
        )));
    }
    if !p.supports_restriction() {
        return Err(Error::UnsupportedRestriction { problem: p.label() });
    }
    if cfg.node_cap == 0 {
        return Err(Error::InvalidParameter("node cap must be at least 1".into()));
    }
    Ok(())
}

/// Searches for a minimum solution of size at most `cfg.budget_k`.
///
/// A node with remaining budget `b` is discarded when the oracle output `S`
/// satisfies `|S| > ρ(I)·b`, since then `opt(I) > b`. Exact whenever the
/// oracle is intersective on every explored sub-instance; any `Found`
/// solution is feasible regardless.
pub fn branch_solve_min<P, O>(p: &P, oracle: &O, cfg: BranchConfig) -> Result<BranchReport>
where
    P: SubsetProblem + Clone,
    O: ApproxOracle<P> + ?Sized,
{
    check_setup(p, oracle, &cfg, Goal::Minimize)?;
    let mut stats = Stats::default();
    let mut best: Option<Solution> = None;
    let mut seen = HashSet::new();
    let mut stack = vec![Node::root(p)];

    while let Some(node) = stack.pop() {
        // only strictly smaller solutions are of interest once one is known
        let limit = best.map_or(cfg.budget_k, |b| cfg.budget_k.min(b.len().saturating_sub(1)));
        if node.depth > limit && best.is_some() {
            continue;
        }
        if stats.nodes_expanded == cfg.node_cap {
            return Ok(stats.report(BranchOutcome::NodeCapExceeded { best }));
        }
        stats.nodes_expanded += 1;
        stats.max_depth = stats.max_depth.max(node.depth);

        if node.problem.feasible(ElementSet::EMPTY) {
            if best.is_none_or(|b| node.path.len() < b.len()) {
                best = Some(node.path);
            }
            continue;
        }
        let remaining = limit.saturating_sub(node.depth);
        if remaining == 0 {
            continue;
        }
        let Some(approx) = oracle.run(&node.problem)? else {
            continue;
        };
        if cfg.prune_enabled && integer(approx.len()) > oracle.ratio(&node.problem)? * integer(remaining) {
            continue;
        }
        stats.max_arity = stats.max_arity.max(approx.len());
        // reversed so the lowest element is explored first
        stack.extend(node.children(approx, &mut seen)?.into_iter().rev());
    }

    Ok(stats.report(match best {
        Some(s) => BranchOutcome::Found(s),
        None => BranchOutcome::NoInstance,
    }))
}

/// Searches for a solution of size at least `cfg.budget_k`.
///
/// Each node runs the oracle and either finishes directly (when the oracle
/// output is already large enough) or branches on every element of it. With
/// pruning on, a node whose oracle output certifies `opt(I) < need` via
/// `|S| < ρ(I)·need` is discarded.
pub fn branch_solve_max<P, O>(p: &P, oracle: &O, cfg: BranchConfig) -> Result<BranchReport>
where
    P: SubsetProblem + Clone,
    O: ApproxOracle<P> + ?Sized,
{
    check_setup(p, oracle, &cfg, Goal::Maximize)?;
    let mut stats = Stats::default();
    let mut seen = HashSet::new();
    let mut stack = vec![Node::root(p)];

    while let Some(node) = stack.pop() {
        if stats.nodes_expanded == cfg.node_cap {
            return Ok(stats.report(BranchOutcome::NodeCapExceeded { best: None }));
        }
        stats.nodes_expanded += 1;
        stats.max_depth = stats.max_depth.max(node.depth);

        let need = cfg.budget_k - node.depth;
        if need == 0 {
            if node.problem.feasible(ElementSet::EMPTY) {
                return Ok(stats.report(BranchOutcome::Found(node.path)));
            }
            continue;
        }
        if node.problem.universe_size() < need {
            continue;
        }
        let Some(approx) = oracle.run(&node.problem)? else {
            continue;
        };
        if approx.len() >= need && node.problem.feasible(approx) {
            let lifted = approx.map(&node.lift).union(node.path);
            return Ok(stats.report(BranchOutcome::Found(lifted)));
        }
        if cfg.prune_enabled && integer(approx.len()) < oracle.ratio(&node.problem)? * integer(need) {
            continue;
        }
        stats.max_arity = stats.max_arity.max(approx.len());
        stack.extend(node.children(approx, &mut seen)?.into_iter().rev());
    }

    Ok(stats.report(BranchOutcome::NoInstance))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Intersective,
    NotIntersective,
    /// Optima could not be enumerated within the budget.
    Inconclusive { budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectivityReport {
    pub oracle_solution: Solution,
    pub optima_checked: usize,
    pub intersecting_optimum: Option<Solution>,
    pub verdict: Verdict,
}

/// Checks whether the oracle's output meets at least one optimal solution.
/// An instance without feasible solutions, or whose only optimum is the
/// empty set, is reported as not intersective.
pub fn verify_intersective<P, O>(p: &P, oracle: &O, budget: usize) -> Result<IntersectivityReport>
where
    P: SubsetProblem,
    O: ApproxOracle<P> + ?Sized,
{
    let oracle_solution = oracle.run(p)?.unwrap_or_default();
    let optima = match enumerate_optima(p, budget) {
        Ok(optima) => optima,
        Err(Error::BudgetExceeded { .. }) => {
            return Ok(IntersectivityReport {
                oracle_solution,
                optima_checked: 0,
                intersecting_optimum: None,
                verdict: Verdict::Inconclusive { budget },
            })
        }
        Err(e) => return Err(e),
    };
    let hit = optima.iter().position(|s| !s.is_disjoint(oracle_solution));
    Ok(IntersectivityReport {
        oracle_solution,
        optima_checked: hit.map_or(optima.len(), |i| i + 1),
        intersecting_optimum: hit.map(|i| optima[i]),
        verdict: if hit.is_some() {
            Verdict::Intersective
        } else {
            Verdict::NotIntersective
        },
    })
}

/// Number of nodes in a complete search tree of the given arity and depth,
/// which bounds `nodes_expanded`.
pub fn node_bound(max_arity: usize, budget_k: usize) -> Option<usize> {
    let mut level: usize = 1;
    let mut total: usize = 1;
    for _ in 0..budget_k {
        level = level.checked_mul(max_arity)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{ratio, FnOracle, Oracle};
    use crate::problems::{make_problem, Graph, Problem, ProblemKind};

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn vc(g: Graph) -> Problem {
        make_problem(ProblemKind::VertexCover, g).unwrap()
    }

    #[test]
    fn min_examples() {
        let r = branch_solve_min(&vc(Graph::path(3)), &Oracle::MatchingVertexCover, BranchConfig::new(1))
            .unwrap();
        assert_eq!(r.outcome, BranchOutcome::Found(set(&[1])));
        assert_eq!(r.max_arity, 2);

        let tri = vc(Graph::complete(3));
        let r = branch_solve_min(&tri, &Oracle::MatchingVertexCover, BranchConfig::new(1)).unwrap();
        assert_eq!(r.outcome, BranchOutcome::NoInstance);
        let r = branch_solve_min(&tri, &Oracle::MatchingVertexCover, BranchConfig::new(2)).unwrap();
        assert_eq!(r.solution().map(|s| s.len()), Some(2));
    }

    #[test]
    fn empty_solution_short_circuits() {
        let r = branch_solve_min(&vc(Graph::empty(4)), &Oracle::MatchingVertexCover, BranchConfig::new(0))
            .unwrap();
        assert_eq!(r.outcome, BranchOutcome::Found(ElementSet::EMPTY));
        assert_eq!(r.nodes_expanded, 1);
    }

    #[test]
    fn max_examples() {
        let is = make_problem(ProblemKind::IndependentSet, Graph::path(3)).unwrap();
        let r = branch_solve_max(&is, &Oracle::GreedyMaximalIndependentSet, BranchConfig::new(2)).unwrap();
        assert_eq!(r.outcome, BranchOutcome::Found(set(&[0, 2])));

        let is = make_problem(ProblemKind::IndependentSet, Graph::complete(3)).unwrap();
        let r = branch_solve_max(&is, &Oracle::GreedyMaximalIndependentSet, BranchConfig::new(2)).unwrap();
        assert_eq!(r.outcome, BranchOutcome::NoInstance);

        let cl = make_problem(ProblemKind::Clique, Graph::complete(3)).unwrap();
        let r = branch_solve_max(&cl, &Oracle::GreedyClique, BranchConfig::new(3)).unwrap();
        assert_eq!(r.outcome, BranchOutcome::Found(set(&[0, 1, 2])));
    }

    #[test]
    fn node_cap_is_reported() {
        let g = Graph::cycle(9);
        let cfg = BranchConfig::new(5).without_prune().with_node_cap(3);
        let r = branch_solve_min(&vc(g), &Oracle::MatchingVertexCover, cfg).unwrap();
        assert!(matches!(r.outcome, BranchOutcome::NodeCapExceeded { .. }));
        assert_eq!(r.nodes_expanded, 3);
    }

    #[test]
    fn setup_errors() {
        let is = make_problem(ProblemKind::IndependentSet, Graph::path(3)).unwrap();
        assert!(matches!(
            branch_solve_min(&is, &Oracle::GreedyMaximalIndependentSet, BranchConfig::new(1)),
            Err(Error::GoalMismatch(_))
        ));
        let fvs = make_problem(ProblemKind::FeedbackVertexSet, Graph::cycle(4)).unwrap();
        let any = FnOracle::new("all", Goal::Minimize, integer(4), |p: &Problem| {
            Some(ElementSet::full(p.universe_size()))
        });
        assert!(matches!(
            branch_solve_min(&fvs, &any, BranchConfig::new(1)),
            Err(Error::UnsupportedRestriction { .. })
        ));
        let cfg = BranchConfig::new(1).with_node_cap(0);
        assert!(branch_solve_min(&vc(Graph::path(3)), &Oracle::MatchingVertexCover, cfg).is_err());
    }

    #[test]
    fn verifier_examples() {
        let tri = vc(Graph::complete(3));
        let r = verify_intersective(&tri, &Oracle::MatchingVertexCover, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Intersective);
        assert_eq!(r.intersecting_optimum, Some(set(&[0, 1])));

        let mmvc = make_problem(ProblemKind::MaxMinimalVertexCover, Graph::path(3)).unwrap();
        let r = verify_intersective(&mmvc, &Oracle::MinimalVertexCover, 20).unwrap();
        assert_eq!(r.oracle_solution, set(&[1]));
        assert_eq!(r.verdict, Verdict::NotIntersective);
        assert_eq!(r.optima_checked, 1);

        // an oracle returning the unique optimum
        let star = vc(Graph::star(4));
        let exact = FnOracle::new("center", Goal::Minimize, ratio(1, 1), |_: &Problem| Some(set(&[0])));
        let r = verify_intersective(&star, &exact, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Intersective);

        let r = verify_intersective(&star, &exact, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive { budget: 2 });
    }

    #[test]
    fn node_bound_values() {
        assert_eq!(node_bound(2, 3), Some(15));
        assert_eq!(node_bound(0, 4), Some(1));
        assert_eq!(node_bound(usize::MAX, 2), None);
    }
}
