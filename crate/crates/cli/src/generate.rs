//! Seeded random instances.
//!
//! Both models draw from a ChaCha8 stream seeded with the 64-bit seed and
//! flip one coin per candidate in a fixed order: vertex pairs `(u, v)`,
//! `u < v`, in lexicographic order for graphs; (set, element) pairs in
//! row-major order for set systems. A set system is then made coverable by
//! adding every uncovered ground element to one uniformly chosen set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subsetfpt_core::{ElementSet, Graph, InstanceData, SetSystem, MAX_ELEMENTS};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenModel {
    Gnp { n: usize, p: f64 },
    SetSystem { n_ground: usize, m: usize, density: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub model: GenModel,
    pub seed: u64,
}

impl GenModel {
    pub fn describe(&self) -> String {
        match self {
            GenModel::Gnp { n, p } => format!("gnp({n},{p})"),
            GenModel::SetSystem { n_ground, m, density } => format!("sets({n_ground},{m},{density})"),
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

fn check_size(name: &str, n: usize) -> Result<(), CliError> {
    if n > MAX_ELEMENTS {
        return Err(CliError::Usage(format!("{name} {n} exceeds the maximum of {MAX_ELEMENTS}")));
    }
    Ok(())
}

pub fn generate(spec: &GenSpec) -> Result<InstanceData, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.model {
        GenModel::Gnp { n, p } => {
            check_size("vertex count", n)?;
            check_probability("edge probability", p)?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            Ok(Graph::new(n, edges)?.into())
        }
        GenModel::SetSystem { n_ground, m, density } => {
            check_size("ground set size", n_ground)?;
            check_size("set count", m)?;
            check_probability("density", density)?;
            if m == 0 {
                return Err(CliError::Usage("a set system needs at least one set".into()));
            }
            let mut sets: Vec<ElementSet> = (0..m)
                .map(|_| (0..n_ground).filter(|_| rng.random::<f64>() < density).collect())
                .collect();
            for x in 0..n_ground {
                if !sets.iter().any(|s| s.contains(x)) {
                    let i = rng.random_range(0..m);
                    sets[i].insert(x);
                }
            }
            Ok(SetSystem::new(n_ground, sets)?.into())
        }
    }
}
