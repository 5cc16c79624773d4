//! Fixed benchmark instances, generated with the CLI's seeded models.

use subsetfpt_cli::{generate, GenModel, GenSpec};
use subsetfpt_core::{InstanceData, Graph, SetSystem};

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    match generate(&GenSpec { model: GenModel::Gnp { n, p }, seed }).expect("valid model") {
        InstanceData::Graph(g) => g,
        InstanceData::SetSystem(_) => unreachable!(),
    }
}

pub fn set_system(n_ground: usize, m: usize, density: f64, seed: u64) -> SetSystem {
    let model = GenModel::SetSystem { n_ground, m, density };
    match generate(&GenSpec { model, seed }).expect("valid model") {
        InstanceData::SetSystem(s) => s,
        InstanceData::Graph(_) => unreachable!(),
    }
}
