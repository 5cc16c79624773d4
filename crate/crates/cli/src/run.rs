//! Running one command on one instance.

use std::time::Instant;

use num_bigint::BigInt;

use subsetfpt_core::approx::ratio_witness;
use subsetfpt_core::{
    branch_solve_max, branch_solve_min, brute_force_optimum, built_in_upper_bound, dual_approx,
    dualize, verify_intersective, BranchConfig, BranchOutcome, Error, Goal, Guarantee, Oracle,
    Problem, ProblemKind, Ratio, SchemaConfig, SchemaPath, SubsetProblem, Verdict,
};

use crate::error::CliError;
use crate::report::{ids, show_ratio, RunRecord};

pub const DEFAULT_BRUTE_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Solve {
        budget: usize,
    },
    Approx {
        oracle: Option<Oracle>,
    },
    Branch {
        k: usize,
        oracle: Option<Oracle>,
        prune: bool,
        node_cap: usize,
    },
    Dual {
        epsilon: Ratio,
        oracle: Option<Oracle>,
        brute_cap: usize,
        force_brute: bool,
        k_hint: Option<usize>,
    },
    CheckIntersective {
        oracle: Option<Oracle>,
        budget: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Approx { .. } => "approx",
            Command::Branch { .. } => "branch",
            Command::Dual { .. } => "dual",
            Command::CheckIntersective { .. } => "check-intersective",
        }
    }
}

/// Where an instance came from, for the report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstanceInfo {
    pub index: usize,
    pub source: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub timing: bool,
    /// Compare the outcome against an exhaustive optimum of at most this
    /// many elements.
    pub reference: Option<usize>,
}

/// Parses `0.25`, `1/4` or `1` into an exact rational.
pub fn parse_ratio(text: &str) -> Result<Ratio, CliError> {
    let bad = || CliError::Usage(format!("`{text}` is not a number or fraction"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    Ok(Ratio::new(num, den))
}

fn oracle_for(kind: ProblemKind, chosen: Option<Oracle>) -> Result<Oracle, CliError> {
    match chosen {
        Some(o) if o.applies_to() == kind => Ok(o),
        Some(o) => Err(CliError::Usage(format!(
            "oracle {o} applies to {}, not {kind}",
            o.applies_to()
        ))),
        None => Oracle::default_for(kind)
            .ok_or_else(|| CliError::Usage(format!("no built-in oracle for {kind}"))),
    }
}

fn brute_value(p: &impl SubsetProblem, budget: usize) -> Result<Option<usize>, CliError> {
    Ok(brute_force_optimum(p, budget)?.value())
}

fn achieved(value: usize, opt: usize) -> Option<f64> {
    (opt > 0).then(|| value as f64 / opt as f64)
}

/// Runs `command` on `problem`. Errors are input errors; budget and
/// infeasibility outcomes are reported in the record.
pub fn execute(
    problem: &Problem,
    command: &Command,
    info: &InstanceInfo,
    options: RunOptions,
) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    let kind = problem.kind();
    let mut r = RunRecord::new(command.name());
    r.instance = info.index;
    r.source = info.source.clone();
    r.seed = info.seed;
    r.problem = kind.name().into();
    r.label = problem.label();
    r.n = problem.universe_size();
    if let Some(sys) = problem.set_system() {
        r.m = Some(sys.n_sets());
        r.ground = Some(sys.n_ground());
    }

    match command {
        Command::Solve { budget } => match brute_force_optimum(problem, *budget) {
            Ok(out) => match out.optimum() {
                Some(best) => {
                    r.outcome = "optimum".into();
                    r.solution = Some(ids(best.solution));
                    r.value = Some(best.value);
                }
                None => r.outcome = "infeasible".into(),
            },
            Err(Error::BudgetExceeded { .. }) => r.outcome = "budget-exceeded".into(),
            Err(e) => return Err(e.into()),
        },

        Command::Approx { oracle } => {
            let oracle = oracle_for(kind, *oracle)?;
            r.oracle = Some(oracle.id().into());
            let rho = subsetfpt_core::ApproxOracle::ratio(&oracle, problem)?;
            r.rho = Some(show_ratio(&rho));
            match subsetfpt_core::ApproxOracle::run(&oracle, problem)? {
                Some(s) => {
                    r.outcome = "approx".into();
                    r.solution = Some(ids(s));
                    r.value = Some(s.len());
                }
                None => r.outcome = "infeasible".into(),
            }
            if let Some(budget) = options.reference {
                if let Some(w) = ratio_witness(problem, &oracle, budget)? {
                    r.opt = Some(w.optimal_value);
                    r.achieved_ratio = achieved(w.oracle_value, w.optimal_value);
                    r.within_bound = Some(w.within_bound());
                }
            }
        }

        Command::Branch { k, oracle, prune, node_cap } => {
            let oracle = oracle_for(kind, *oracle)?;
            r.oracle = Some(oracle.id().into());
            r.k = Some(*k);
            r.prune = Some(*prune);
            let mut cfg = BranchConfig::new(*k).with_node_cap(*node_cap);
            if !prune {
                cfg = cfg.without_prune();
            }
            let report = match kind.goal() {
                Goal::Minimize => branch_solve_min(problem, &oracle, cfg)?,
                Goal::Maximize => branch_solve_max(problem, &oracle, cfg)?,
            };
            r.nodes_expanded = Some(report.nodes_expanded);
            r.max_depth = Some(report.max_depth);
            r.max_arity = Some(report.max_arity);
            match report.outcome {
                BranchOutcome::Found(s) => {
                    r.outcome = "yes".into();
                    r.solution = Some(ids(s));
                    r.value = Some(s.len());
                }
                BranchOutcome::NoInstance => r.outcome = "no".into(),
                BranchOutcome::NodeCapExceeded { best } => {
                    r.outcome = "node-cap-exceeded".into();
                    r.solution = best.map(ids);
                    r.value = best.map(|s| s.len());
                }
            }
            if let Some(budget) = options.reference {
                let opt = brute_value(problem, budget)?;
                r.opt = opt;
                let truth = opt.is_some_and(|v| match kind.goal() {
                    Goal::Minimize => v <= *k,
                    Goal::Maximize => v >= *k,
                });
                r.within_bound = match r.outcome.as_str() {
                    "yes" => Some(truth),
                    "no" => Some(!truth),
                    _ => None,
                };
            }
        }

        Command::Dual { epsilon, oracle, brute_cap, force_brute, k_hint } => {
            let oracle = oracle_for(kind, *oracle)?;
            r.oracle = Some(oracle.id().into());
            r.epsilon = Some(show_ratio(epsilon));
            r.label = dualize(problem).label();
            let mut cfg = SchemaConfig::new(epsilon.clone())?;
            cfg.brute_cap = *brute_cap;
            cfg.force_brute = *force_brute;
            cfg.k_upper_hint = k_hint.or_else(|| built_in_upper_bound(problem));
            let out = match dual_approx(problem, &oracle, &cfg) {
                Err(Error::Infeasible) => {
                    r.outcome = "infeasible".into();
                    return Ok(finish(r, start, options));
                }
                other => other?,
            };
            let d = &out.diagnostics;
            r.rho = Some(show_ratio(&d.rho));
            r.threshold = Some(show_ratio(&d.threshold));
            r.k_prime = Some(d.k_prime);
            r.k_bound = Some(d.k_bound);
            r.outcome = match out.path {
                SchemaPath::Approx => "approx",
                SchemaPath::Brute => "brute",
                SchemaPath::BudgetExceeded => "budget-exceeded",
            }
            .into();
            r.solution = out.dual_solution.map(ids);
            r.value = out.dual_value;
            r.guarantee = Some(match &out.guarantee {
                Guarantee::AtLeast(b) => format!(">={}", show_ratio(b)),
                Guarantee::AtMost(b) => format!("<={}", show_ratio(b)),
                Guarantee::Exact => "exact".into(),
                Guarantee::None => "none".into(),
            });
            if let (Some(budget), Some(value)) = (options.reference, out.dual_value) {
                if let Some(opt) = brute_value(&dualize(problem), budget)? {
                    r.opt = Some(opt);
                    r.achieved_ratio = achieved(value, opt);
                    let (v, o) = (Ratio::from_integer(value.into()), Ratio::from_integer(opt.into()));
                    r.within_bound = Some(match &out.guarantee {
                        Guarantee::AtLeast(b) => v >= b * o,
                        Guarantee::AtMost(b) => v <= b * o,
                        Guarantee::Exact => v == o,
                        Guarantee::None => true,
                    });
                }
            }
        }

        Command::CheckIntersective { oracle, budget } => {
            let oracle = oracle_for(kind, *oracle)?;
            r.oracle = Some(oracle.id().into());
            let report = verify_intersective(problem, &oracle, *budget)?;
            r.solution = Some(ids(report.oracle_solution));
            r.value = Some(report.oracle_solution.len());
            r.optima_checked = Some(report.optima_checked);
            r.intersecting_optimum = report.intersecting_optimum.map(ids);
            r.outcome = match report.verdict {
                Verdict::Intersective => "intersective",
                Verdict::NotIntersective => "not-intersective",
                Verdict::Inconclusive { .. } => "inconclusive",
            }
            .into();
        }
    }
    Ok(finish(r, start, options))
}

fn finish(mut r: RunRecord, start: Instant, options: RunOptions) -> RunRecord {
    if options.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

/// Process exit code for a single record: 0 success, 1 infeasible or
/// negative answer, 2 input error, 3 exhausted budget.
pub fn exit_code(record: &RunRecord) -> i32 {
    if record.error.is_some() {
        return 2;
    }
    match record.outcome.as_str() {
        "infeasible" | "no" | "not-intersective" => 1,
        "budget-exceeded" | "node-cap-exceeded" | "inconclusive" => 3,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use subsetfpt_core::{make_problem, Graph};

    #[test]
    fn ratios_parse_exactly() {
        let q = |n: i64, d: i64| Ratio::new(n.into(), d.into());
        assert_eq!(parse_ratio("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_ratio("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_ratio("1").unwrap(), q(1, 1));
        assert_eq!(parse_ratio(".5").unwrap(), q(1, 2));
        for bad in ["", ".", "1/0", "a", "0.2.5", "1e-3"] {
            assert!(parse_ratio(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn solve_reports_one_based_ids() {
        let p = make_problem(ProblemKind::VertexCover, Graph::star(3)).unwrap();
        let r = execute(&p, &Command::Solve { budget: 20 }, &InstanceInfo::default(), RunOptions::default())
            .unwrap();
        assert_eq!(r.solution, Some(vec![1]));
        assert_eq!(exit_code(&r), 0);
    }

    #[test]
    fn branch_no_instance_exits_one() {
        let p = make_problem(ProblemKind::VertexCover, Graph::complete(4)).unwrap();
        let cmd = Command::Branch { k: 2, oracle: None, prune: true, node_cap: 1000 };
        let opts = RunOptions { timing: false, reference: Some(20) };
        let r = execute(&p, &cmd, &InstanceInfo::default(), opts).unwrap();
        assert_eq!(r.outcome, "no");
        assert_eq!(r.opt, Some(3));
        assert_eq!(r.within_bound, Some(true));
        assert_eq!(exit_code(&r), 1);
    }

    #[test]
    fn wrong_oracle_is_input_error() {
        let p = make_problem(ProblemKind::VertexCover, Graph::path(3)).unwrap();
        let cmd = Command::Approx { oracle: Some(Oracle::GreedyClique) };
        let err = execute(&p, &cmd, &InstanceInfo::default(), RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn dual_labels_the_dual_problem() {
        let p = make_problem(ProblemKind::VertexCover, Graph::path(3)).unwrap();
        let cmd = Command::Dual {
            epsilon: parse_ratio("1/2").unwrap(),
            oracle: None,
            brute_cap: 20,
            force_brute: true,
            k_hint: None,
        };
        let opts = RunOptions { timing: false, reference: Some(20) };
        let r = execute(&p, &cmd, &InstanceInfo::default(), opts).unwrap();
        assert_eq!(r.label, "D-min vertex cover");
        assert_eq!((r.outcome.as_str(), r.value, r.opt), ("brute", Some(2), Some(2)));
    }
}
