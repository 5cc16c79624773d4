//! Invariants of the subset-problem contract and the concrete encodings,
//! checked against exhaustive enumeration.

mod common;

use common::*;
use proptest::prelude::*;
use subsetfpt_core::subset::restriction_is_sound;
use subsetfpt_core::*;

const GRAPH_KINDS_WITH_RESTRICTION: [ProblemKind; 4] = [
    ProblemKind::VertexCover,
    ProblemKind::IndependentSet,
    ProblemKind::Clique,
    ProblemKind::DominatingSet,
];

fn all_subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_bits)
}

#[test]
fn restriction_is_sound_on_all_small_graphs() {
    for n in 0..=5 {
        for g in all_graphs(n) {
            for kind in GRAPH_KINDS_WITH_RESTRICTION {
                let p = make_problem(kind, g.clone()).unwrap();
                for e in 0..n {
                    assert!(restriction_is_sound(&p, e, 20).unwrap(), "{kind} on {g:?} at {e}");
                }
            }
        }
    }
}

#[test]
fn restriction_is_sound_on_random_set_systems() {
    let mut r = rng(11);
    for i in 0..200 {
        let sys = set_system(&mut r, 1 + i % 8, 1 + (i / 8) % 8, 0.35, i % 3 != 0);
        for kind in [ProblemKind::SetCover, ProblemKind::SetPacking] {
            let p = make_problem(kind, sys.clone()).unwrap();
            for e in 0..sys.n_sets() {
                assert!(restriction_is_sound(&p, e, 20).unwrap(), "{kind} on {sys:?} at {e}");
            }
        }
    }
}

#[test]
fn nested_domination_restrictions_stay_sound() {
    let mut r = rng(12);
    for _ in 0..100 {
        let g = gnp(&mut r, 7, 0.3);
        let p = make_problem(ProblemKind::DominatingSet, g).unwrap();
        let first = p.restrict(2).unwrap().problem;
        for e in 0..first.universe_size() {
            assert!(restriction_is_sound(&first, e, 20).unwrap());
        }
    }
}

#[test]
fn dual_is_an_involution() {
    let mut r = rng(13);
    for _ in 0..100 {
        let g = gnp(&mut r, 7, 0.4);
        for kind in ProblemKind::ALL.into_iter().filter(|k| !k.on_set_system()) {
            let p = make_problem(kind, g.clone()).unwrap();
            let dd = dualize(dualize(&p));
            assert_eq!(dd.goal(), p.goal());
            assert_eq!(dd.label(), format!("D-D-{}", p.label()));
            assert!(all_subsets(7).all(|s| dd.feasible(s) == p.feasible(s)));
        }
    }
}

#[test]
fn optimum_plus_dual_optimum_is_n() {
    let mut r = rng(14);
    for i in 0..150 {
        let n = 1 + i % 12;
        let g = gnp(&mut r, n, [0.2, 0.5][i % 2]);
        for kind in ProblemKind::ALL.into_iter().filter(|k| !k.on_set_system()) {
            let p = make_problem(kind, g.clone()).unwrap();
            let opt = brute_force_optimum(&p, 20).unwrap().value().unwrap();
            let dual = brute_force_optimum(&dualize(&p), 20).unwrap().value().unwrap();
            assert_eq!(opt + dual, n, "{kind} on {g:?}");
        }
    }
    for _ in 0..50 {
        let sys = set_system(&mut r, 6, 9, 0.3, true);
        let p = make_problem(ProblemKind::SetCover, sys).unwrap();
        let opt = brute_force_optimum(&p, 20).unwrap().value().unwrap();
        let dual = brute_force_optimum(&dualize(&p), 20).unwrap().value().unwrap();
        assert_eq!(opt + dual, 9);
    }
}

#[test]
fn four_set_cover_and_its_dual() {
    let sys = SetSystem::new(4, vec![set(&[0, 1]), set(&[2, 3]), set(&[0, 2]), set(&[1, 3])]).unwrap();
    let p = make_problem(ProblemKind::SetCover, sys).unwrap();
    assert_eq!(brute_force_optimum(&p, 20).unwrap().value(), Some(2));
    assert_eq!(enumerate_optima(&p, 20).unwrap(), vec![set(&[0, 1]), set(&[2, 3])]);
    let d = dualize(&p);
    assert_eq!(d.goal(), Goal::Maximize);
    assert_eq!(brute_force_optimum(&d, 20).unwrap().value(), Some(2));
}

#[test]
fn dual_of_independent_set_is_vertex_cover() {
    let mut r = rng(15);
    for _ in 0..100 {
        let g = gnp(&mut r, 8, 0.35);
        let d = dualize(make_problem(ProblemKind::IndependentSet, g.clone()).unwrap());
        let vc = make_problem(ProblemKind::VertexCover, g).unwrap();
        assert_eq!(d.goal(), vc.goal());
        assert!(all_subsets(8).all(|s| d.feasible(s) == vc.feasible(s)));
    }
}

#[test]
fn brute_force_is_feasible_and_unbeaten() {
    let mut r = rng(16);
    for i in 0..100 {
        let g = gnp(&mut r, 1 + i % 9, 0.4);
        for kind in ProblemKind::ALL.into_iter().filter(|k| !k.on_set_system()) {
            let p = make_problem(kind, g.clone()).unwrap();
            let best = brute_force_optimum(&p, 20).unwrap().optimum().unwrap();
            assert!(best.optimal && is_feasible(&p, best.solution).unwrap());
            let optima = enumerate_optima(&p, 20).unwrap();
            assert_eq!(optima.first(), Some(&best.solution));
            let n = p.universe_size();
            for s in all_subsets(n).filter(|&s| p.feasible(s)) {
                assert!(!p.goal().improves(s.len(), best.value));
                assert_eq!(s.len() == best.value, optima.contains(&s));
            }
        }
    }
}

#[test]
fn mmvc_is_n_minus_mids() {
    let mut r = rng(17);
    for i in 0..200 {
        let n = 1 + i % 10;
        let g = gnp(&mut r, n, [0.15, 0.3, 0.6][i % 3]);
        let mmvc = make_problem(ProblemKind::MaxMinimalVertexCover, g.clone()).unwrap();
        let mids = make_problem(ProblemKind::MinIndependentDominatingSet, g).unwrap();
        let a = brute_force_optimum(&mmvc, 20).unwrap().value().unwrap();
        let b = brute_force_optimum(&mids, 20).unwrap().value().unwrap();
        assert_eq!(a, n - b);
    }
}

#[test]
fn clique_is_independent_set_of_complement() {
    let mut r = rng(18);
    for i in 0..200 {
        let g = gnp(&mut r, 1 + i % 10, 0.5);
        let cl = make_problem(ProblemKind::Clique, g.clone()).unwrap();
        let is = make_problem(ProblemKind::IndependentSet, g.complement()).unwrap();
        assert_eq!(
            brute_force_optimum(&cl, 20).unwrap().value(),
            brute_force_optimum(&is, 20).unwrap().value()
        );
    }
}

/// Union-find cycle detection, independent of the peeling check.
fn has_cycle_union_find(g: &Graph, keep: ElementSet) -> bool {
    let mut parent: Vec<usize> = (0..g.n_vertices()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        parent[x] = root;
        root
    }
    for (u, v) in g.edges() {
        if keep.contains(u) && keep.contains(v) {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return true;
            }
            parent[a] = b;
        }
    }
    false
}

#[test]
fn acyclicity_matches_union_find() {
    let mut r = rng(19);
    for i in 0..1000 {
        let n = 1 + i % 12;
        let g = gnp(&mut r, n, [0.1, 0.2, 0.4][i % 3]);
        let keep = ElementSet::from_bits(r.random::<u64>()).intersection(g.vertices());
        assert_eq!(g.is_acyclic_on(keep), !has_cycle_union_find(&g, keep), "{g:?} {keep:?}");
        assert_eq!(g.is_acyclic_on(g.vertices()), !has_cycle_union_find(&g, g.vertices()));
    }
}

#[test]
fn minimality_by_single_removal_matches_all_subsets() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for s in all_subsets(n).filter(|&s| g.is_vertex_cover(s)) {
                let minimal = all_subsets(n)
                    .filter(|&t| t != s && t.is_subset(s))
                    .all(|t| !g.is_vertex_cover(t));
                assert_eq!(g.is_minimal_vertex_cover(s), minimal);
                assert_eq!(minimality_certificate(&g, s).unwrap().is_none(), minimal);
            }
        }
    }
}

#[test]
fn brute_force_is_deterministic() {
    let mut r = rng(20);
    let g = gnp(&mut r, 12, 0.3);
    let p = make_problem(ProblemKind::DominatingSet, g).unwrap();
    assert_eq!(enumerate_optima(&p, 20).unwrap(), enumerate_optima(&p, 20).unwrap());
    assert_eq!(brute_force_optimum(&p, 20).unwrap(), brute_force_optimum(&p, 20).unwrap());
}

use rand::Rng;

proptest! {
    #[test]
    fn complement_has_size_n_minus_s(n in 0usize..=64, bits in any::<u64>()) {
        let p = make_problem(ProblemKind::VertexCover, Graph::empty(n)).unwrap();
        let s = ElementSet::from_bits(bits).intersection(ElementSet::full(n));
        let c = complement(&p, s).unwrap();
        prop_assert_eq!(c.len(), n - s.len());
        prop_assert!(c.is_disjoint(s));
        prop_assert_eq!(complement(&p, c).unwrap(), s);
    }

    #[test]
    fn out_of_range_members_are_rejected(n in 0usize..63, extra in 0usize..64) {
        let p = make_problem(ProblemKind::IndependentSet, Graph::empty(n)).unwrap();
        let e = n + extra % (64 - n);
        prop_assert!(is_feasible(&p, ElementSet::singleton(e)).is_err());
    }
}
