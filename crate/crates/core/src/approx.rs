//! Polynomial-time approximation oracles with declared ratio functions.
//!
//! A ratio is an exact rational: at least 1 for minimization oracles (the
//! output is at most `ρ·opt`), in `(0, 1]` for maximization oracles (the
//! output is at least `ρ·opt`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::problems::{minimality_certificate, DominationState, Graph, Problem, ProblemKind, SetSystem};
use crate::subset::{brute_force_optimum, Goal, Solution, SubsetProblem};

pub type Ratio = BigRational;

pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(x: usize) -> Ratio {
    Ratio::from_integer(BigInt::from(x))
}

/// `H_d = 1 + 1/2 + .. + 1/d`, with `H_0` taken as 1.
pub fn harmonic(d: usize) -> Ratio {
    if d == 0 {
        return Ratio::one();
    }
    (1..=d).map(|i| ratio(1, i as i64)).sum()
}

/// A polynomial-time approximation algorithm for instances of type `P`.
pub trait ApproxOracle<P: ?Sized> {
    fn name(&self) -> &str;

    fn goal(&self) -> Goal;

    /// Declared ratio bound `ρ(I)`.
    fn ratio(&self, p: &P) -> Result<Ratio>;

    /// `Ok(None)` when the instance has no feasible solution.
    fn run(&self, p: &P) -> Result<Option<Solution>>;
}

impl<P: ?Sized, O: ApproxOracle<P> + ?Sized> ApproxOracle<P> for &O {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn goal(&self) -> Goal {
        (**self).goal()
    }
    fn ratio(&self, p: &P) -> Result<Ratio> {
        (**self).ratio(p)
    }
    fn run(&self, p: &P) -> Result<Option<Solution>> {
        (**self).run(p)
    }
}

/// Greedy cover of `target` by `sets`: repeatedly takes the set covering the
/// most still-uncovered elements, lowest index on ties. `None` if `target`
/// is not coverable.
fn greedy_cover(sets: &[ElementSet], target: ElementSet) -> Option<Solution> {
    let mut uncovered = target;
    let mut chosen = ElementSet::EMPTY;
    while !uncovered.is_empty() {
        let (best, gain) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection(uncovered).len()))
            .fold((usize::MAX, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if gain == 0 {
            return None;
        }
        chosen.insert(best);
        uncovered = uncovered.difference(sets[best]);
    }
    Some(chosen)
}

pub fn greedy_set_cover(sys: &SetSystem) -> Result<Solution> {
    greedy_cover(sys.sets(), sys.ground()).ok_or(Error::Infeasible)
}

/// Both endpoints of a maximal matching built by scanning edges in
/// lexicographic order.
pub fn matching_vertex_cover(g: &Graph) -> Solution {
    let mut matched = ElementSet::EMPTY;
    for (u, v) in g.edges() {
        if !matched.contains(u) && !matched.contains(v) {
            matched = matched.with(u).with(v);
        }
    }
    matched
}

pub fn maximal_matching_size(g: &Graph) -> usize {
    matching_vertex_cover(g).len() / 2
}

/// Greedy set cover of the undominated vertices by the closed
/// neighbourhoods of the candidates. Returns universe ids of `d`.
pub fn greedy_domination(d: &DominationState) -> Solution {
    let g = d.graph();
    let hoods: Vec<ElementSet> = d
        .candidates()
        .into_iter()
        .map(|v| g.closed_neighborhood(v))
        .collect();
    // every undominated vertex is its own candidate
    greedy_cover(&hoods, d.undominated()).expect("undominated vertices can dominate themselves")
}

pub fn greedy_dominating_set(g: &Graph) -> Solution {
    greedy_domination(&DominationState::new(g.clone()))
}

/// Repeatedly takes a minimum-degree vertex of the remaining graph (lowest
/// index on ties) and deletes its closed neighbourhood.
pub fn greedy_maximal_independent_set(g: &Graph) -> Solution {
    let mut rest = g.vertices();
    let mut chosen = ElementSet::EMPTY;
    while let Some(v) = rest
        .iter()
        .min_by_key(|&v| g.neighbors(v).intersection(rest).len())
    {
        chosen.insert(v);
        rest = rest.difference(g.closed_neighborhood(v));
    }
    chosen
}

/// Grows a clique by the candidate with most neighbours among the remaining
/// candidates, lowest index on ties.
pub fn greedy_clique(g: &Graph) -> Solution {
    let mut candidates = g.vertices();
    let mut clique = ElementSet::EMPTY;
    while let Some(v) = candidates
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection(candidates).len(), std::cmp::Reverse(v)))
    {
        clique.insert(v);
        candidates = candidates.intersection(g.neighbors(v));
    }
    clique
}

/// The matching cover shrunk to an inclusion-minimal one by dropping the
/// lowest removable vertex until none is left.
pub fn minimal_vertex_cover(g: &Graph) -> Solution {
    let mut cover = matching_vertex_cover(g);
    while let Some(v) = minimality_certificate(g, cover).expect("still a cover") {
        cover.remove(v);
    }
    cover
}

/// Smallest-first maximal packing, lowest index on ties.
pub fn greedy_set_packing(sys: &SetSystem) -> Solution {
    let mut order: Vec<usize> = (0..sys.n_sets()).collect();
    order.sort_by_key(|&i| (sys.sets()[i].len(), i));
    let mut used = ElementSet::EMPTY;
    let mut chosen = ElementSet::EMPTY;
    for i in order {
        let s = sys.sets()[i];
        if s.is_disjoint(used) {
            chosen.insert(i);
            used = used.union(s);
        }
    }
    chosen
}

/// The built-in oracles, each applicable to one problem kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    MatchingVertexCover,
    GreedySetCover,
    GreedyDominatingSet,
    GreedyMaximalIndependentSet,
    GreedyClique,
    MinimalVertexCover,
    GreedyIndependentDominatingSet,
    GreedySetPacking,
}

impl Oracle {
    pub const ALL: [Oracle; 8] = [
        Oracle::MatchingVertexCover,
        Oracle::GreedySetCover,
        Oracle::GreedyDominatingSet,
        Oracle::GreedyMaximalIndependentSet,
        Oracle::GreedyClique,
        Oracle::MinimalVertexCover,
        Oracle::GreedyIndependentDominatingSet,
        Oracle::GreedySetPacking,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Oracle::MatchingVertexCover => "matching-vc",
            Oracle::GreedySetCover => "greedy-set-cover",
            Oracle::GreedyDominatingSet => "greedy-ds",
            Oracle::GreedyMaximalIndependentSet => "greedy-mis",
            Oracle::GreedyClique => "greedy-clique",
            Oracle::MinimalVertexCover => "minimal-vc",
            Oracle::GreedyIndependentDominatingSet => "greedy-ids",
            Oracle::GreedySetPacking => "greedy-set-packing",
        }
    }

    pub fn applies_to(self) -> ProblemKind {
        match self {
            Oracle::MatchingVertexCover => ProblemKind::VertexCover,
            Oracle::GreedySetCover => ProblemKind::SetCover,
            Oracle::GreedyDominatingSet => ProblemKind::DominatingSet,
            Oracle::GreedyMaximalIndependentSet => ProblemKind::IndependentSet,
            Oracle::GreedyClique => ProblemKind::Clique,
            Oracle::MinimalVertexCover => ProblemKind::MaxMinimalVertexCover,
            Oracle::GreedyIndependentDominatingSet => ProblemKind::MinIndependentDominatingSet,
            Oracle::GreedySetPacking => ProblemKind::SetPacking,
        }
    }

    pub fn default_for(kind: ProblemKind) -> Option<Oracle> {
        Oracle::ALL.into_iter().find(|o| o.applies_to() == kind)
    }

    fn mismatch(self, p: &Problem) -> Error {
        Error::KindMismatch {
            what: format!("oracle {}", self.id()),
            problem: p.label(),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Oracle::ALL
            .into_iter()
            .find(|o| o.id() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown oracle `{s}`")))
    }
}

fn one_over(x: usize) -> Ratio {
    ratio(1, x.max(1) as i64)
}

impl ApproxOracle<Problem> for Oracle {
    fn name(&self) -> &str {
        self.id()
    }

    fn goal(&self) -> Goal {
        self.applies_to().goal()
    }

    fn ratio(&self, p: &Problem) -> Result<Ratio> {
        Ok(match (self, p) {
            (Oracle::MatchingVertexCover, Problem::VertexCover(_)) => integer(2),
            (Oracle::GreedySetCover, Problem::SetCover(sys)) => harmonic(sys.max_set_size()),
            (Oracle::GreedyDominatingSet, Problem::DominatingSet(d)) => {
                let open = d.undominated();
                let widest = d
                    .candidates()
                    .into_iter()
                    .map(|v| d.graph().closed_neighborhood(v).intersection(open).len())
                    .max()
                    .unwrap_or(0);
                harmonic(widest)
            }
            (Oracle::GreedyMaximalIndependentSet, Problem::IndependentSet(g)) => {
                one_over(g.max_degree() + 1)
            }
            (Oracle::GreedyClique, Problem::Clique(g)) => one_over(g.n_vertices()),
            (Oracle::MinimalVertexCover, Problem::MaxMinimalVertexCover(g)) => {
                one_over(g.n_vertices())
            }
            (Oracle::GreedyIndependentDominatingSet, Problem::MinIndependentDominatingSet(g)) => {
                integer(g.max_degree() + 1)
            }
            (Oracle::GreedySetPacking, Problem::SetPacking(sys)) => one_over(sys.max_set_size()),
            _ => return Err(self.mismatch(p)),
        })
    }

    fn run(&self, p: &Problem) -> Result<Option<Solution>> {
        Ok(Some(match (self, p) {
            (Oracle::MatchingVertexCover, Problem::VertexCover(g)) => matching_vertex_cover(g),
            (Oracle::GreedySetCover, Problem::SetCover(sys)) => match greedy_set_cover(sys) {
                Ok(s) => s,
                Err(Error::Infeasible) => return Ok(None),
                Err(e) => return Err(e),
            },
            (Oracle::GreedyDominatingSet, Problem::DominatingSet(d)) => greedy_domination(d),
            (Oracle::GreedyMaximalIndependentSet, Problem::IndependentSet(g))
            | (Oracle::GreedyIndependentDominatingSet, Problem::MinIndependentDominatingSet(g)) => {
                greedy_maximal_independent_set(g)
            }
            (Oracle::GreedyClique, Problem::Clique(g)) => greedy_clique(g),
            (Oracle::MinimalVertexCover, Problem::MaxMinimalVertexCover(g)) => {
                minimal_vertex_cover(g)
            }
            (Oracle::GreedySetPacking, Problem::SetPacking(sys)) => greedy_set_packing(sys),
            _ => return Err(self.mismatch(p)),
        }))
    }
}

/// An oracle assembled from a closure and a constant declared ratio.
pub struct FnOracle<F> {
    name: String,
    goal: Goal,
    ratio: Ratio,
    run: F,
}

impl<F> FnOracle<F> {
    pub fn new(name: impl Into<String>, goal: Goal, ratio: Ratio, run: F) -> Self {
        FnOracle {
            name: name.into(),
            goal,
            ratio,
            run,
        }
    }
}

impl<P, F> ApproxOracle<P> for FnOracle<F>
where
    F: Fn(&P) -> Option<Solution>,
{
    fn name(&self) -> &str {
        &self.name
    }

    fn goal(&self) -> Goal {
        self.goal
    }

    fn ratio(&self, _: &P) -> Result<Ratio> {
        Ok(self.ratio.clone())
    }

    fn run(&self, p: &P) -> Result<Option<Solution>> {
        Ok((self.run)(p))
    }
}

/// An oracle's output measured against the exhaustive optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioWitness {
    pub instance: String,
    pub oracle_value: usize,
    pub optimal_value: usize,
    pub declared: Ratio,
    pub goal: Goal,
}

impl RatioWitness {
    /// `oracle_value / optimal_value`, or `None` when the optimum is 0.
    pub fn achieved(&self) -> Option<Ratio> {
        (self.optimal_value > 0)
            .then(|| Ratio::new(BigInt::from(self.oracle_value), BigInt::from(self.optimal_value)))
    }

    pub fn within_bound(&self) -> bool {
        let bound = &self.declared * integer(self.optimal_value);
        let value = integer(self.oracle_value);
        match self.goal {
            Goal::Minimize => value <= bound,
            Goal::Maximize => value >= bound,
        }
    }
}

/// Runs `oracle` and measures it against the exhaustive optimum. `None` if
/// the instance is infeasible.
pub fn ratio_witness<P, O>(p: &P, oracle: &O, budget: usize) -> Result<Option<RatioWitness>>
where
    P: SubsetProblem,
    O: ApproxOracle<P> + ?Sized,
{
    let Some(opt) = brute_force_optimum(p, budget)?.optimum() else {
        return Ok(None);
    };
    let out = oracle.run(p)?.ok_or(Error::Infeasible)?;
    Ok(Some(RatioWitness {
        instance: p.label(),
        oracle_value: out.len(),
        optimal_value: opt.value,
        declared: oracle.ratio(p)?,
        goal: oracle.goal(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_problem;

    fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(1), integer(1));
        assert_eq!(harmonic(2), ratio(3, 2));
        assert_eq!(harmonic(4), ratio(25, 12));
    }

    #[test]
    fn greedy_set_cover_examples() {
        let sys = SetSystem::new(4, vec![set(&[0, 1, 2]), set(&[3]), set(&[0, 1]), set(&[2, 3])])
            .unwrap();
        assert_eq!(greedy_set_cover(&sys), Ok(set(&[0, 1])));
        let whole = SetSystem::new(3, vec![set(&[0, 1, 2])]).unwrap();
        assert_eq!(greedy_set_cover(&whole).unwrap().len(), 1);
        let pair = SetSystem::new(2, vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(greedy_set_cover(&pair).unwrap().len(), 2);
        let gap = SetSystem::new(3, vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(greedy_set_cover(&gap), Err(Error::Infeasible));
        let p = make_problem(ProblemKind::SetCover, gap).unwrap();
        assert_eq!(Oracle::GreedySetCover.run(&p), Ok(None));
    }

    #[test]
    fn matching_cover_examples() {
        assert_eq!(matching_vertex_cover(&Graph::star(3)), set(&[0, 1]));
        assert_eq!(matching_vertex_cover(&Graph::complete(3)), set(&[0, 1]));
        assert_eq!(matching_vertex_cover(&Graph::empty(4)), ElementSet::EMPTY);
    }

    #[test]
    fn greedy_dominating_examples() {
        assert_eq!(greedy_dominating_set(&Graph::path(3)), set(&[1]));
        assert_eq!(greedy_dominating_set(&Graph::empty(3)), set(&[0, 1, 2]));
        assert_eq!(greedy_dominating_set(&Graph::star(3)), set(&[0]));
    }

    #[test]
    fn greedy_mis_examples() {
        assert_eq!(greedy_maximal_independent_set(&Graph::path(3)), set(&[0, 2]));
        assert_eq!(greedy_maximal_independent_set(&Graph::complete(3)), set(&[0]));
        assert_eq!(greedy_maximal_independent_set(&Graph::empty(3)), set(&[0, 1, 2]));
    }

    #[test]
    fn greedy_clique_examples() {
        assert_eq!(greedy_clique(&Graph::complete(3)), set(&[0, 1, 2]));
        assert_eq!(greedy_clique(&Graph::empty(2)).len(), 1);
        assert_eq!(greedy_clique(&Graph::path(3)), set(&[0, 1]));
    }

    #[test]
    fn minimal_cover_and_packing() {
        assert_eq!(minimal_vertex_cover(&Graph::path(3)), set(&[1]));
        let sys = SetSystem::new(4, vec![set(&[0, 1]), set(&[2, 3]), set(&[0, 2])]).unwrap();
        assert_eq!(greedy_set_packing(&sys), set(&[0, 1]));
    }

    #[test]
    fn oracle_kind_mismatch() {
        let p = make_problem(ProblemKind::Clique, Graph::path(3)).unwrap();
        assert!(matches!(Oracle::MatchingVertexCover.run(&p), Err(Error::KindMismatch { .. })));
        assert_eq!("greedy-ds".parse::<Oracle>(), Ok(Oracle::GreedyDominatingSet));
        assert_eq!(Oracle::default_for(ProblemKind::FeedbackVertexSet), None);
    }

    #[test]
    fn star_witness_hits_ratio_two() {
        let p = make_problem(ProblemKind::VertexCover, Graph::star(3)).unwrap();
        let w = ratio_witness(&p, &Oracle::MatchingVertexCover, 20).unwrap().unwrap();
        assert_eq!((w.oracle_value, w.optimal_value), (2, 1));
        assert_eq!(w.achieved(), Some(integer(2)));
        assert!(w.within_bound());
    }
}
