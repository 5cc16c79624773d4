//! Concrete subset problems over simple graphs and set systems.
//!
//! The universe of a graph problem is its vertex set; the universe of a
//! set-system problem is the family of sets (so `n = m`), with the ground set
//! carried as metadata.

use std::fmt;
use std::str::FromStr;

use crate::bitset::{ElementId, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::subset::{Goal, Restriction, Solution, SubsetProblem};

/// Simple undirected graph on at most [`MAX_ELEMENTS`] vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<ElementSet>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged; self
    /// loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { n, max: MAX_ELEMENTS });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_ELEMENTS);
        Graph {
            adj: vec![ElementSet::EMPTY; n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let all = ElementSet::full(n);
        Graph {
            adj: (0..n).map(|v| all.without(v)).collect(),
        }
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    pub fn n_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> ElementSet {
        ElementSet::full(self.n_vertices())
    }

    pub fn neighbors(&self, v: usize) -> ElementSet {
        self.adj[v]
    }

    pub fn closed_neighborhood(&self, v: usize) -> ElementSet {
        self.adj[v].with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n_vertices())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        Graph {
            adj: (0..self.n_vertices())
                .map(|v| all.difference(self.adj[v]).without(v))
                .collect(),
        }
    }

    /// Subgraph induced by `keep`, re-indexed in increasing order. The second
    /// component maps new vertex ids to old ones.
    pub fn induced(&self, keep: ElementSet) -> (Graph, Vec<usize>) {
        let origin: Vec<usize> = keep.intersection(self.vertices()).iter().collect();
        let mut new_id = [usize::MAX; MAX_ELEMENTS];
        for (i, &v) in origin.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = origin
            .iter()
            .map(|&v| self.adj[v].intersection(keep).iter().map(|u| new_id[u]).collect())
            .collect();
        (Graph { adj }, origin)
    }

    pub fn neighborhood_of_set(&self, s: ElementSet) -> ElementSet {
        s.iter().fold(s, |acc, v| acc.union(self.adj[v]))
    }

    pub fn is_vertex_cover(&self, s: ElementSet) -> bool {
        // every vertex outside s must have all its neighbours inside s
        self.vertices()
            .difference(s)
            .iter()
            .all(|v| self.adj[v].is_subset(s))
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    pub fn is_clique(&self, s: ElementSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_dominating(&self, s: ElementSet) -> bool {
        self.neighborhood_of_set(s) == self.vertices()
    }

    /// Whether the subgraph induced by `keep` has no cycle, decided by
    /// repeatedly peeling vertices of degree at most one.
    pub fn is_acyclic_on(&self, keep: ElementSet) -> bool {
        let mut rest = keep.intersection(self.vertices());
        loop {
            let leaves: ElementSet = rest
                .iter()
                .filter(|&v| self.adj[v].intersection(rest).len() <= 1)
                .collect();
            if leaves.is_empty() {
                return rest.is_empty();
            }
            rest = rest.difference(leaves);
        }
    }

    /// Inclusion-minimal vertex cover check by single-removal scan.
    pub fn is_minimal_vertex_cover(&self, s: ElementSet) -> bool {
        self.is_vertex_cover(s) && s.iter().all(|v| !self.adj[v].is_subset(s))
    }

    /// Largest minimum degree seen while repeatedly deleting a minimum-degree
    /// vertex.
    pub fn degeneracy(&self) -> usize {
        let mut rest = self.vertices();
        let mut best = 0;
        while let Some(v) = rest
            .iter()
            .min_by_key(|&v| self.adj[v].intersection(rest).len())
        {
            best = best.max(self.adj[v].intersection(rest).len());
            rest.remove(v);
        }
        best
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n_vertices())
            .field("edges", &self.edges())
            .finish()
    }
}

/// A family of `m` subsets of the ground set `{0, .., n_ground-1}`. Sets may
/// repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    n_ground: usize,
    sets: Vec<ElementSet>,
}

impl SetSystem {
    pub fn new(n_ground: usize, sets: Vec<ElementSet>) -> Result<SetSystem> {
        if n_ground > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { n: n_ground, max: MAX_ELEMENTS });
        }
        if sets.len() > MAX_ELEMENTS {
            return Err(Error::CapacityExceeded { n: sets.len(), max: MAX_ELEMENTS });
        }
        if sets.is_empty() {
            return Err(Error::InvalidInstance("set system has no sets".into()));
        }
        let ground = ElementSet::full(n_ground);
        if let Some(i) = sets.iter().position(|s| !s.is_subset(ground)) {
            return Err(Error::InvalidInstance(format!(
                "set {i} has elements outside the ground set of size {n_ground}"
            )));
        }
        Ok(SetSystem { n_ground, sets })
    }

    pub fn n_ground(&self) -> usize {
        self.n_ground
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n_ground)
    }

    pub fn union_of(&self, chosen: ElementSet) -> ElementSet {
        chosen
            .iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.union(self.sets[i]))
    }

    pub fn covers(&self, chosen: ElementSet) -> bool {
        self.union_of(chosen) == self.ground()
    }

    pub fn is_packing(&self, chosen: ElementSet) -> bool {
        let mut seen = ElementSet::EMPTY;
        for i in chosen {
            if !seen.is_disjoint(self.sets[i]) {
                return false;
            }
            seen = seen.union(self.sets[i]);
        }
        true
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// What is left after choosing set `e` for a cover: ground elements it
    /// covers are deleted (and the rest re-indexed), set `e` leaves the
    /// family. May leave an empty family.
    fn residual_cover(&self, e: usize) -> (SetSystem, Vec<usize>) {
        let (ground_map, n_ground) = reindex(self.ground().difference(self.sets[e]));
        let origin: Vec<usize> = (0..self.sets.len()).filter(|&j| j != e).collect();
        let sets = origin
            .iter()
            .map(|&j| self.sets[j].iter().filter_map(|x| ground_map[x]).collect())
            .collect();
        (SetSystem { n_ground, sets }, origin)
    }

    fn residual_packing(&self, e: usize) -> (SetSystem, Vec<usize>) {
        let origin: Vec<usize> = (0..self.sets.len())
            .filter(|&j| j != e && self.sets[j].is_disjoint(self.sets[e]))
            .collect();
        let sets = origin.iter().map(|&j| self.sets[j]).collect();
        (
            SetSystem {
                n_ground: self.n_ground,
                sets,
            },
            origin,
        )
    }
}

fn reindex(keep: ElementSet) -> ([Option<usize>; MAX_ELEMENTS], usize) {
    let mut map = [None; MAX_ELEMENTS];
    for (i, x) in keep.iter().enumerate() {
        map[x] = Some(i);
    }
    (map, keep.len())
}

/// A partially solved dominating-set instance: the whole graph stays, the
/// vertices already chosen leave the universe and their closed
/// neighbourhoods count as dominated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominationState {
    graph: Graph,
    dominated: ElementSet,
    removed: ElementSet,
}

impl DominationState {
    pub fn new(graph: Graph) -> Self {
        DominationState {
            graph,
            dominated: ElementSet::EMPTY,
            removed: ElementSet::EMPTY,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dominated(&self) -> ElementSet {
        self.dominated
    }

    pub fn removed(&self) -> ElementSet {
        self.removed
    }

    /// Vertices that may still be chosen; universe element `i` is
    /// `candidates()[i]`.
    pub fn candidates(&self) -> Vec<usize> {
        self.graph.vertices().difference(self.removed).iter().collect()
    }

    pub fn undominated(&self) -> ElementSet {
        self.graph.vertices().difference(self.dominated)
    }

    /// Converts universe ids to vertex ids.
    pub fn to_vertices(&self, s: ElementSet) -> ElementSet {
        s.map(&self.candidates())
    }

    pub fn is_dominating(&self, s: ElementSet) -> bool {
        self.graph
            .neighborhood_of_set(self.to_vertices(s))
            .union(self.dominated)
            == self.graph.vertices()
    }

    fn choose(&self, e: usize) -> (DominationState, Vec<usize>) {
        let candidates = self.candidates();
        let v = candidates[e];
        let next = DominationState {
            graph: self.graph.clone(),
            dominated: self.dominated.union(self.graph.closed_neighborhood(v)),
            removed: self.removed.with(v),
        };
        let origin = (0..candidates.len()).filter(|&i| i != e).collect();
        (next, origin)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    VertexCover,
    IndependentSet,
    Clique,
    DominatingSet,
    SetCover,
    SetPacking,
    FeedbackVertexSet,
    MaxMinimalVertexCover,
    MinIndependentDominatingSet,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 9] = [
        ProblemKind::VertexCover,
        ProblemKind::IndependentSet,
        ProblemKind::Clique,
        ProblemKind::DominatingSet,
        ProblemKind::SetCover,
        ProblemKind::SetPacking,
        ProblemKind::FeedbackVertexSet,
        ProblemKind::MaxMinimalVertexCover,
        ProblemKind::MinIndependentDominatingSet,
    ];

    pub fn goal(self) -> Goal {
        use ProblemKind::*;
        match self {
            VertexCover | DominatingSet | SetCover | FeedbackVertexSet
            | MinIndependentDominatingSet => Goal::Minimize,
            IndependentSet | Clique | SetPacking | MaxMinimalVertexCover => Goal::Maximize,
        }
    }

    pub fn on_set_system(self) -> bool {
        matches!(self, ProblemKind::SetCover | ProblemKind::SetPacking)
    }

    pub fn supports_restriction(self) -> bool {
        !matches!(
            self,
            ProblemKind::FeedbackVertexSet
                | ProblemKind::MaxMinimalVertexCover
                | ProblemKind::MinIndependentDominatingSet
        )
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        use ProblemKind::*;
        match self {
            VertexCover => "vertex-cover",
            IndependentSet => "independent-set",
            Clique => "clique",
            DominatingSet => "dominating-set",
            SetCover => "set-cover",
            SetPacking => "set-packing",
            FeedbackVertexSet => "feedback-vertex-set",
            MaxMinimalVertexCover => "max-minimal-vertex-cover",
            MinIndependentDominatingSet => "min-independent-dominating-set",
        }
    }

    pub fn title(self) -> &'static str {
        use ProblemKind::*;
        match self {
            VertexCover => "min vertex cover",
            IndependentSet => "max independent set",
            Clique => "max clique",
            DominatingSet => "min dominating set",
            SetCover => "min set cover",
            SetPacking => "max set packing",
            FeedbackVertexSet => "min feedback vertex set",
            MaxMinimalVertexCover => "max minimal vertex cover",
            MinIndependentDominatingSet => "min independent dominating set",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown problem kind `{s}`")))
    }
}

/// Raw instance data a problem is built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceData {
    Graph(Graph),
    SetSystem(SetSystem),
}

impl From<Graph> for InstanceData {
    fn from(g: Graph) -> Self {
        InstanceData::Graph(g)
    }
}

impl From<SetSystem> for InstanceData {
    fn from(s: SetSystem) -> Self {
        InstanceData::SetSystem(s)
    }
}

/// A concrete subset problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Problem {
    VertexCover(Graph),
    IndependentSet(Graph),
    Clique(Graph),
    DominatingSet(DominationState),
    SetCover(SetSystem),
    SetPacking(SetSystem),
    FeedbackVertexSet(Graph),
    MaxMinimalVertexCover(Graph),
    MinIndependentDominatingSet(Graph),
}

pub fn make_problem(kind: ProblemKind, data: impl Into<InstanceData>) -> Result<Problem> {
    use ProblemKind as K;
    Ok(match (kind, data.into()) {
        (K::VertexCover, InstanceData::Graph(g)) => Problem::VertexCover(g),
        (K::IndependentSet, InstanceData::Graph(g)) => Problem::IndependentSet(g),
        (K::Clique, InstanceData::Graph(g)) => Problem::Clique(g),
        (K::DominatingSet, InstanceData::Graph(g)) => {
            Problem::DominatingSet(DominationState::new(g))
        }
        (K::FeedbackVertexSet, InstanceData::Graph(g)) => Problem::FeedbackVertexSet(g),
        (K::MaxMinimalVertexCover, InstanceData::Graph(g)) => Problem::MaxMinimalVertexCover(g),
        (K::MinIndependentDominatingSet, InstanceData::Graph(g)) => {
            Problem::MinIndependentDominatingSet(g)
        }
        (K::SetCover, InstanceData::SetSystem(s)) => Problem::SetCover(s),
        (K::SetPacking, InstanceData::SetSystem(s)) => Problem::SetPacking(s),
        (kind, InstanceData::Graph(_)) => {
            return Err(Error::KindMismatch {
                what: "a graph".into(),
                problem: kind.title().into(),
            })
        }
        (kind, InstanceData::SetSystem(_)) => {
            return Err(Error::KindMismatch {
                what: "a set system".into(),
                problem: kind.title().into(),
            })
        }
    })
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        use ProblemKind as K;
        match self {
            Problem::VertexCover(_) => K::VertexCover,
            Problem::IndependentSet(_) => K::IndependentSet,
            Problem::Clique(_) => K::Clique,
            Problem::DominatingSet(_) => K::DominatingSet,
            Problem::SetCover(_) => K::SetCover,
            Problem::SetPacking(_) => K::SetPacking,
            Problem::FeedbackVertexSet(_) => K::FeedbackVertexSet,
            Problem::MaxMinimalVertexCover(_) => K::MaxMinimalVertexCover,
            Problem::MinIndependentDominatingSet(_) => K::MinIndependentDominatingSet,
        }
    }

    /// The underlying graph for graph problems.
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            Problem::VertexCover(g)
            | Problem::IndependentSet(g)
            | Problem::Clique(g)
            | Problem::FeedbackVertexSet(g)
            | Problem::MaxMinimalVertexCover(g)
            | Problem::MinIndependentDominatingSet(g) => Some(g),
            Problem::DominatingSet(d) => Some(d.graph()),
            Problem::SetCover(_) | Problem::SetPacking(_) => None,
        }
    }

    pub fn set_system(&self) -> Option<&SetSystem> {
        match self {
            Problem::SetCover(s) | Problem::SetPacking(s) => Some(s),
            _ => None,
        }
    }
}

impl SubsetProblem for Problem {
    fn universe_size(&self) -> usize {
        match self {
            Problem::DominatingSet(d) => d.graph.n_vertices() - d.removed.len(),
            Problem::SetCover(s) | Problem::SetPacking(s) => s.n_sets(),
            _ => self.graph().map_or(0, Graph::n_vertices),
        }
    }

    fn goal(&self) -> Goal {
        self.kind().goal()
    }

    fn label(&self) -> String {
        self.kind().title().to_string()
    }

    fn feasible(&self, s: ElementSet) -> bool {
        match self {
            Problem::VertexCover(g) => g.is_vertex_cover(s),
            Problem::IndependentSet(g) => g.is_independent(s),
            Problem::Clique(g) => g.is_clique(s),
            Problem::DominatingSet(d) => d.is_dominating(s),
            Problem::SetCover(sys) => sys.covers(s),
            Problem::SetPacking(sys) => sys.is_packing(s),
            Problem::FeedbackVertexSet(g) => g.is_acyclic_on(g.vertices().difference(s)),
            Problem::MaxMinimalVertexCover(g) => g.is_minimal_vertex_cover(s),
            Problem::MinIndependentDominatingSet(g) => g.is_independent(s) && g.is_dominating(s),
        }
    }

    fn supports_restriction(&self) -> bool {
        self.kind().supports_restriction()
    }

    fn restrict(&self, e: ElementId) -> Result<Restriction<Problem>> {
        let n = self.universe_size();
        if e >= n {
            return Err(Error::ElementOutOfRange { element: e, universe: n });
        }
        let (problem, origin) = match self {
            Problem::VertexCover(g) => {
                let (h, origin) = g.induced(g.vertices().without(e));
                (Problem::VertexCover(h), origin)
            }
            Problem::IndependentSet(g) => {
                let (h, origin) = g.induced(g.vertices().difference(g.closed_neighborhood(e)));
                (Problem::IndependentSet(h), origin)
            }
            Problem::Clique(g) => {
                let (h, origin) = g.induced(g.neighbors(e));
                (Problem::Clique(h), origin)
            }
            Problem::DominatingSet(d) => {
                let (next, origin) = d.choose(e);
                (Problem::DominatingSet(next), origin)
            }
            Problem::SetCover(sys) => {
                let (next, origin) = sys.residual_cover(e);
                (Problem::SetCover(next), origin)
            }
            Problem::SetPacking(sys) => {
                let (next, origin) = sys.residual_packing(e);
                (Problem::SetPacking(next), origin)
            }
            Problem::FeedbackVertexSet(_)
            | Problem::MaxMinimalVertexCover(_)
            | Problem::MinIndependentDominatingSet(_) => {
                return Err(Error::UnsupportedRestriction {
                    problem: self.label(),
                })
            }
        };
        Ok(Restriction {
            problem,
            chosen: e,
            origin,
        })
    }
}

/// `None` if the vertex cover `s` is inclusion-minimal, otherwise the lowest
/// vertex whose removal leaves a cover.
pub fn minimality_certificate(g: &Graph, s: Solution) -> Result<Option<ElementId>> {
    if s.last().is_some_and(|v| v >= g.n_vertices()) || !g.is_vertex_cover(s) {
        return Err(Error::NotACover);
    }
    Ok(s.iter().find(|&v| g.neighbors(v).is_subset(s)))
}
