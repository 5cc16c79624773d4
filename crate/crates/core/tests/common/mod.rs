#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subsetfpt_core::{ElementSet, Graph, SetSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Every labelled graph on `n` vertices (one per edge subset).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

/// Random set system; coverable when `coverable` is set.
pub fn set_system(rng: &mut impl Rng, n_ground: usize, m: usize, density: f64, coverable: bool) -> SetSystem {
    let mut sets: Vec<ElementSet> = (0..m)
        .map(|_| (0..n_ground).filter(|_| rng.random::<f64>() < density).collect())
        .collect();
    if coverable {
        for x in 0..n_ground {
            if !sets.iter().any(|s| s.contains(x)) {
                let i = rng.random_range(0..m);
                sets[i].insert(x);
            }
        }
    }
    SetSystem::new(n_ground, sets).unwrap()
}

pub fn set(xs: &[usize]) -> ElementSet {
    xs.iter().copied().collect()
}
