//! Batches of runs over many instances and parameter settings.
//!
//! Every (instance, configuration) pair is one row. Rows are independent
//! and run in parallel; the output keeps instance-major input order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use subsetfpt_core::{brute_force_optimum, make_problem, InstanceData, Oracle, ProblemKind, Ratio};

use crate::error::CliError;
use crate::report::{show_ratio, AggregateRecord, RunRecord};
use crate::run::{execute, Command, InstanceInfo, RunOptions};

/// A branching parameter, possibly relative to the instance optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSpec {
    Fixed(usize),
    /// `opt - d`, skipped when negative.
    OptMinus(usize),
}

impl fmt::Display for KSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSpec::Fixed(k) => write!(f, "{k}"),
            KSpec::OptMinus(0) => f.write_str("opt"),
            KSpec::OptMinus(d) => write!(f, "opt-{d}"),
        }
    }
}

impl FromStr for KSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("`{s}` is not a k value (try 3, opt or opt-1)"));
        match s.strip_prefix("opt") {
            Some("") => Ok(KSpec::OptMinus(0)),
            Some(rest) => rest
                .strip_prefix('-')
                .and_then(|d| d.parse().ok())
                .map(KSpec::OptMinus)
                .ok_or_else(bad),
            None => s.parse().map(KSpec::Fixed).map_err(|_| bad()),
        }
    }
}

/// One column of the experiment matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Config {
    Fixed(Command),
    Branch {
        k: KSpec,
        oracle: Option<Oracle>,
        prune: bool,
        node_cap: usize,
    },
}

impl Config {
    pub fn describe(&self) -> String {
        match self {
            Config::Fixed(Command::Dual { epsilon, .. }) => format!("dual eps={}", show_ratio(epsilon)),
            Config::Fixed(c) => c.name().to_string(),
            Config::Branch { k, prune, .. } => {
                format!("branch k={k}{}", if *prune { "" } else { " no-prune" })
            }
        }
    }

    fn command_name(&self) -> &'static str {
        match self {
            Config::Fixed(c) => c.name(),
            Config::Branch { .. } => "branch",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub info: InstanceInfo,
    pub data: InstanceData,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    pub runs: Vec<RunRecord>,
    pub aggregates: Vec<AggregateRecord>,
}

fn error_row(kind: ProblemKind, config: &Config, info: &InstanceInfo, err: &CliError) -> RunRecord {
    let mut r = RunRecord::new(config.command_name());
    r.instance = info.index;
    r.source = info.source.clone();
    r.seed = info.seed;
    r.problem = kind.name().into();
    r.label = kind.title().into();
    r.outcome = "error".into();
    r.error = Some(err.to_string());
    r
}

fn run_row(
    kind: ProblemKind,
    instance: &Instance,
    config: &Config,
    options: RunOptions,
) -> Option<RunRecord> {
    let attempt = || -> Result<Option<RunRecord>, CliError> {
        let problem = make_problem(kind, instance.data.clone())?;
        let command = match config {
            Config::Fixed(c) => c.clone(),
            Config::Branch { k, oracle, prune, node_cap } => {
                let k = match *k {
                    KSpec::Fixed(k) => k,
                    KSpec::OptMinus(d) => {
                        let budget = options.reference.unwrap_or(crate::run::DEFAULT_BRUTE_BUDGET);
                        let opt = brute_force_optimum(&problem, budget)?
                            .value()
                            .ok_or(subsetfpt_core::Error::Infeasible)?;
                        match opt.checked_sub(d) {
                            Some(k) => k,
                            None => return Ok(None),
                        }
                    }
                };
                Command::Branch { k, oracle: *oracle, prune: *prune, node_cap: *node_cap }
            }
        };
        execute(&problem, &command, &instance.info, options).map(Some)
    };
    attempt().unwrap_or_else(|e| Some(error_row(kind, config, &instance.info, &e)))
}

fn aggregate(config: &Config, rows: &[&RunRecord]) -> AggregateRecord {
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.achieved_ratio).collect();
    AggregateRecord {
        record: "aggregate",
        command: config.command_name(),
        config: config.describe(),
        rows: rows.len(),
        errors: rows.iter().filter(|r| r.error.is_some()).count(),
        checked: rows.iter().filter(|r| r.within_bound.is_some()).count(),
        violations: rows.iter().filter(|r| r.within_bound == Some(false)).count(),
        min_ratio: ratios.iter().copied().reduce(f64::min),
        mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
    }
}

/// Runs every configuration on every instance. Per-row failures become
/// rows with an `error` field.
pub fn run_experiment(
    kind: ProblemKind,
    instances: &[Instance],
    configs: &[Config],
    options: RunOptions,
) -> ExperimentResult {
    let pairs: Vec<(usize, &Instance)> = instances
        .iter()
        .flat_map(|inst| (0..configs.len()).map(move |c| (c, inst)))
        .collect();
    let rows: Vec<(usize, RunRecord)> = pairs
        .par_iter()
        .filter_map(|&(c, inst)| run_row(kind, inst, &configs[c], options).map(|r| (c, r)))
        .collect();
    let aggregates = if instances.is_empty() {
        Vec::new()
    } else {
        configs
            .iter()
            .enumerate()
            .map(|(c, config)| {
                let mine: Vec<&RunRecord> =
                    rows.iter().filter(|(i, _)| *i == c).map(|(_, r)| r).collect();
                aggregate(config, &mine)
            })
            .collect()
    };
    ExperimentResult {
        runs: rows.into_iter().map(|(_, r)| r).collect(),
        aggregates,
    }
}

/// The configuration matrix for one command: the cross product of the
/// epsilon list (for `dual`) or the k list (for `branch`).
pub fn dual_configs(
    epsilons: &[Ratio],
    oracle: Option<Oracle>,
    brute_cap: usize,
    force_brute: bool,
) -> Vec<Config> {
    epsilons
        .iter()
        .map(|e| {
            Config::Fixed(Command::Dual {
                epsilon: e.clone(),
                oracle,
                brute_cap,
                force_brute,
                k_hint: None,
            })
        })
        .collect()
}

pub fn branch_configs(ks: &[KSpec], oracle: Option<Oracle>, prune: bool, node_cap: usize) -> Vec<Config> {
    ks.iter()
        .map(|&k| Config::Branch { k, oracle, prune, node_cap })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::parse_ratio;
    use subsetfpt_core::Graph;

    fn instances(graphs: Vec<Graph>) -> Vec<Instance> {
        graphs
            .into_iter()
            .enumerate()
            .map(|(index, g)| Instance {
                info: InstanceInfo { index, ..Default::default() },
                data: g.into(),
            })
            .collect()
    }

    #[test]
    fn k_specs() {
        assert_eq!("opt".parse::<KSpec>().unwrap(), KSpec::OptMinus(0));
        assert_eq!("opt-2".parse::<KSpec>().unwrap(), KSpec::OptMinus(2));
        assert_eq!("5".parse::<KSpec>().unwrap(), KSpec::Fixed(5));
        assert!("opt+1".parse::<KSpec>().is_err());
        assert_eq!(KSpec::OptMinus(1).to_string(), "opt-1");
    }

    #[test]
    fn no_instances_no_rows() {
        let configs = branch_configs(&[KSpec::OptMinus(0)], None, true, 1000);
        let out = run_experiment(ProblemKind::VertexCover, &[], &configs, RunOptions::default());
        assert_eq!(out, ExperimentResult::default());
    }

    #[test]
    fn rows_keep_input_order() {
        let graphs = vec![Graph::path(4), Graph::complete(4), Graph::star(3), Graph::cycle(5)];
        let configs = branch_configs(&[KSpec::OptMinus(0), KSpec::OptMinus(1)], None, true, 10_000);
        let opts = RunOptions { timing: false, reference: Some(20) };
        let out = run_experiment(ProblemKind::VertexCover, &instances(graphs), &configs, opts);
        let order: Vec<(usize, Option<usize>)> = out.runs.iter().map(|r| (r.instance, r.k)).collect();
        assert_eq!(
            order,
            vec![(0, Some(2)), (0, Some(1)), (1, Some(3)), (1, Some(2)), (2, Some(1)), (2, Some(0)), (3, Some(3)), (3, Some(2))]
        );
        assert!(out.aggregates.iter().all(|a| a.violations == 0 && a.checked == 4));
        let yes: Vec<&str> = out.runs.iter().map(|r| r.outcome.as_str()).collect();
        assert_eq!(yes, ["yes", "no", "yes", "no", "yes", "no", "yes", "no"]);
    }

    #[test]
    fn errors_stay_in_row() {
        let configs = vec![Config::Fixed(Command::Approx { oracle: Some(Oracle::GreedyClique) })];
        let out = run_experiment(
            ProblemKind::VertexCover,
            &instances(vec![Graph::path(3)]),
            &configs,
            RunOptions::default(),
        );
        assert_eq!(out.runs.len(), 1);
        assert!(out.runs[0].error.is_some());
        assert_eq!(out.aggregates[0].errors, 1);
    }

    #[test]
    fn dual_rows_meet_their_guarantee() {
        let graphs: Vec<Graph> = (3..9).map(Graph::cycle).chain((2..8).map(Graph::star)).collect();
        let eps: Vec<Ratio> = ["0.1", "1/4", "0.5"].iter().map(|e| parse_ratio(e).unwrap()).collect();
        let opts = RunOptions { timing: false, reference: Some(20) };
        let out = run_experiment(
            ProblemKind::DominatingSet,
            &instances(graphs),
            &dual_configs(&eps, None, 20, false),
            opts,
        );
        assert_eq!(out.runs.len(), 36);
        assert!(out.aggregates.iter().all(|a| a.violations == 0 && a.checked == 12));
    }
}
