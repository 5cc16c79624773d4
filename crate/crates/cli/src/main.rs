use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subsetfpt_core::{make_problem, BranchConfig, InstanceData, Oracle, ProblemKind, SchemaConfig};
use subsetfpt_cli::experiment::{branch_configs, dual_configs, Config};
use subsetfpt_cli::run::DEFAULT_BRUTE_BUDGET;
use subsetfpt_cli::{
    execute, exit_code, generate, parse_graph, parse_ratio, parse_setsystem, render, render_graph,
    render_setsystem, run_experiment, CliError, Command, Format, GenModel, GenSpec, Instance,
    InstanceInfo, KSpec, RunOptions,
};

#[derive(Parser)]
#[command(name = "subsetfpt", version, about = "Parameterized approximation for subset problems")]
struct Cli {
    /// Problem kind, e.g. vertex-cover, dominating-set, set-cover.
    #[arg(long, global = true)]
    problem: Option<ProblemKind>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Seed for generated instances.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Add elapsed milliseconds to each record. Breaks byte-identical output.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Sub {
    /// Exact optimum by exhaustive search.
    Solve {
        /// Instance file, or `-` for stdin.
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
        budget: usize,
    },
    /// Run one approximation oracle.
    Approx {
        input: PathBuf,
        #[arg(long)]
        oracle: Option<Oracle>,
    },
    /// Exact search for a solution of size at most (or at least) k.
    Branch {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        oracle: Option<Oracle>,
        #[command(flatten)]
        branch: BranchArgs,
    },
    /// Approximate the dual problem D-Π.
    Dual {
        input: PathBuf,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
        #[arg(long)]
        oracle: Option<Oracle>,
        #[command(flatten)]
        dual: DualArgs,
        /// Upper bound on the optimum of a maximization problem.
        #[arg(long)]
        k_hint: Option<usize>,
    },
    /// Check whether the oracle output meets an optimal solution.
    CheckIntersective {
        input: PathBuf,
        #[arg(long)]
        oracle: Option<Oracle>,
        #[arg(long, default_value_t = DEFAULT_BRUTE_BUDGET)]
        budget: usize,
    },
    /// Print a random instance.
    Gen {
        #[command(subcommand)]
        model: ModelArg,
    },
    /// Run a command over many instances and parameter settings.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct BranchArgs {
    #[arg(long)]
    no_prune: bool,
    #[arg(long, default_value_t = BranchConfig::DEFAULT_NODE_CAP)]
    node_cap: usize,
}

#[derive(Args)]
struct DualArgs {
    #[arg(long, default_value_t = SchemaConfig::DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    #[arg(long)]
    force_brute: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum ModelArg {
    /// G(n, p) random graph.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Random set system, made coverable.
    Sets {
        #[arg(long)]
        ground: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        density: f64,
    },
}

impl ModelArg {
    fn model(self) -> GenModel {
        match self {
            ModelArg::Gnp { n, p } => GenModel::Gnp { n, p },
            ModelArg::Sets { ground, m, density } => {
                GenModel::SetSystem { n_ground: ground, m, density }
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RunKind {
    Solve,
    Approx,
    Branch,
    Dual,
    CheckIntersective,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    run: RunKind,
    /// Instance files; may be repeated.
    #[arg(long)]
    input: Vec<PathBuf>,
    /// Generate instances instead, e.g. `gnp --n 14 --p 0.3`.
    #[command(subcommand)]
    model: Option<ModelArg>,
    /// Number of generated instances; instance i uses seed + i.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Defaults to the built-in oracle for the problem.
    #[arg(long)]
    oracle: Option<Oracle>,
    #[command(flatten)]
    branch: BranchArgs,
    #[command(flatten)]
    dual: DualArgs,
    /// Comma-separated epsilons for `dual`.
    #[arg(long, default_value = "1/4", value_delimiter = ',')]
    epsilon: Vec<String>,
    /// Comma-separated k values for `branch`: numbers, `opt` or `opt-d`.
    #[arg(long, default_value = "opt", value_delimiter = ',')]
    k: Vec<KSpec>,
    /// Largest instance compared against an exhaustive optimum.
    #[arg(long, default_value_t = 20)]
    reference_budget: usize,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load(kind: ProblemKind, path: &PathBuf) -> Result<InstanceData, CliError> {
    let text = read_input(path)?;
    if kind.on_set_system() {
        return Ok(parse_setsystem(&text)?.into());
    }
    let parsed = parse_graph(&text)?;
    if parsed.dropped_duplicates + parsed.dropped_self_loops > 0 {
        eprintln!(
            "warning: {}: dropped {} duplicate edge(s) and {} self-loop(s)",
            path.display(),
            parsed.dropped_duplicates,
            parsed.dropped_self_loops
        );
    }
    Ok(parsed.graph.into())
}

fn problem_kind(cli: &Cli) -> Result<ProblemKind, CliError> {
    cli.problem
        .ok_or_else(|| CliError::Usage("this command needs --problem <kind>".into()))
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn single(cli: &Cli, input: &PathBuf, command: Command) -> Result<i32, CliError> {
    let kind = problem_kind(cli)?;
    let problem = make_problem(kind, load(kind, input)?)?;
    let info = InstanceInfo {
        index: 0,
        source: input.display().to_string(),
        seed: None,
    };
    let options = RunOptions { timing: cli.timing, reference: None };
    let record = execute(&problem, &command, &info, options)?;
    emit(&render(std::slice::from_ref(&record), &[], format(cli)));
    Ok(exit_code(&record))
}

fn format(cli: &Cli) -> Format {
    match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    }
}

fn experiment(cli: &Cli, args: &ExperimentArgs) -> Result<i32, CliError> {
    let kind = problem_kind(cli)?;
    let mut instances = Vec::new();
    for (index, path) in args.input.iter().enumerate() {
        instances.push(Instance {
            info: InstanceInfo { index, source: path.display().to_string(), seed: None },
            data: load(kind, path)?,
        });
    }
    if let Some(model) = args.model {
        let model = model.model();
        let base = cli.seed.unwrap_or(0);
        for i in 0..args.count {
            let seed = base.wrapping_add(i as u64);
            instances.push(Instance {
                info: InstanceInfo {
                    index: instances.len(),
                    source: model.describe(),
                    seed: Some(seed),
                },
                data: generate(&GenSpec { model, seed })?,
            });
        }
    }

    let oracle = args.oracle;
    let configs = match args.run {
        RunKind::Solve => vec![Config::Fixed(Command::Solve { budget: args.reference_budget })],
        RunKind::Approx => vec![Config::Fixed(Command::Approx { oracle })],
        RunKind::CheckIntersective => vec![Config::Fixed(Command::CheckIntersective {
            oracle,
            budget: args.reference_budget,
        })],
        RunKind::Branch => {
            branch_configs(&args.k, oracle, !args.branch.no_prune, args.branch.node_cap)
        }
        RunKind::Dual => {
            let eps = args.epsilon.iter().map(|e| parse_ratio(e)).collect::<Result<Vec<_>, _>>()?;
            for e in &eps {
                SchemaConfig::new(e.clone())?;
            }
            dual_configs(&eps, oracle, args.dual.brute_cap, args.dual.force_brute)
        }
    };
    let options = RunOptions {
        timing: cli.timing,
        reference: Some(args.reference_budget),
    };
    let result = run_experiment(kind, &instances, &configs, options);
    emit(&render(&result.runs, &result.aggregates, format(cli)));
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Sub::Solve { input, budget } => single(cli, input, Command::Solve { budget: *budget }),
        Sub::Approx { input, oracle } => single(cli, input, Command::Approx { oracle: *oracle }),
        Sub::Branch { input, k, oracle, branch } => single(
            cli,
            input,
            Command::Branch {
                k: *k,
                oracle: *oracle,
                prune: !branch.no_prune,
                node_cap: branch.node_cap,
            },
        ),
        Sub::Dual { input, epsilon, oracle, dual, k_hint } => single(
            cli,
            input,
            Command::Dual {
                epsilon: parse_ratio(epsilon)?,
                oracle: *oracle,
                brute_cap: dual.brute_cap,
                force_brute: dual.force_brute,
                k_hint: *k_hint,
            },
        ),
        Sub::CheckIntersective { input, oracle, budget } => single(
            cli,
            input,
            Command::CheckIntersective { oracle: *oracle, budget: *budget },
        ),
        Sub::Gen { model } => {
            let spec = GenSpec { model: model.model(), seed: cli.seed.unwrap_or(0) };
            match generate(&spec)? {
                InstanceData::Graph(g) => emit(&render_graph(&g)),
                InstanceData::SetSystem(s) => emit(&render_setsystem(&s)),
            }
            Ok(0)
        }
        Sub::Experiment(args) => experiment(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    #[test]
    fn arguments_are_consistent() {
        super::Cli::command().debug_assert();
    }
}
