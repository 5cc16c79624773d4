//! Command-line front end for the `subsetfpt` engines: instance formats,
//! random generation, single runs and batch experiments.

pub mod error;
pub mod experiment;
pub mod formats;
pub mod generate;
pub mod report;
pub mod run;

pub use error::CliError;
pub use experiment::{run_experiment, Config, ExperimentResult, Instance, KSpec};
pub use formats::{parse_graph, parse_setsystem, render_graph, render_setsystem, ParseError, ParsedGraph};
pub use generate::{generate, GenModel, GenSpec};
pub use report::{render, AggregateRecord, Format, RunRecord};
pub use run::{execute, exit_code, parse_ratio, Command, InstanceInfo, RunOptions};
