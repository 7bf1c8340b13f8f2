//! `wearlca` subcommands.
//!
//! Exit codes: 0 success, 1 output or server failure, 2 invalid input,
//! 3 metric computation failure.

use std::fmt;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use wearlca_core::analytics::{aggregate, summarize_manifest, write_summary_csv};
use wearlca_core::lca::report::{chart_data, comparison_csv_string, impacts_csv_string, to_json_string, write_text};
use wearlca_core::lca::{
    characterize, compare, named_scenario, CharacterizationTable, FlowRegistry, ImpactResult, LcaError, ScenarioSpec,
};
use wearlca_core::metrics::{evaluate_manifest, Aggregation, EvaluateError};
use wearlca_core::wear::DatasetManifest;

#[derive(Debug, Parser)]
#[command(
    name = "wearlca",
    version,
    about = "Tool wear segmentation metrics, wear profiles and life cycle impacts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score test-split predictions; writes report.json and report.csv.
    Evaluate(EvaluateArgs),
    /// Summarize every image and aggregate a wear profile; writes profile.json and summary.csv.
    Profile(ProfileArgs),
    /// Characterize scenarios; writes impacts and, for two or more, a comparison against the first.
    Lca(LcaArgs),
    /// Serve the HTTP API and the UI bundle.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    /// Write only this format; both by default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl OutputArgs {
    fn wants(&self, f: Format) -> bool {
        !matches!(self.format, Some(g) if g != f)
    }

    fn prepare(&self) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.out).map_err(|e| CliError::output(&self.out, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AggregationArg {
    Pooled,
    PerImage,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value = "pooled")]
    pub aggregation: AggregationArg,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Characterization factor table replacing the bundled one.
    #[arg(long, env = "WEARLCA_FACTORS")]
    pub factors: Option<PathBuf>,
    /// Flow registry to validate the factor table against.
    #[arg(long, requires = "factors")]
    pub flows: Option<PathBuf>,
}

impl FactorArgs {
    fn table(&self) -> Result<CharacterizationTable, CliError> {
        let Some(path) = &self.factors else {
            return Ok(CharacterizationTable::bundled());
        };
        let registry = match &self.flows {
            Some(f) => FlowRegistry::from_path(f).map_err(CliError::input)?,
            None => FlowRegistry::bundled(),
        };
        CharacterizationTable::from_path(path, registry).map_err(CliError::input)
    }
}

#[derive(Debug, Args)]
pub struct LcaArgs {
    /// Registered scenario name or path to a scenario.json; repeatable.
    #[arg(long = "scenario", required = true)]
    pub scenarios: Vec<String>,
    #[command(flatten)]
    pub factors: FactorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    /// Directory whose subdirectories each hold a manifest.json.
    #[arg(long)]
    pub workspace: Option<PathBuf>,
    /// Built UI bundle served at `/`.
    #[arg(long)]
    pub ui_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 8080)]
    pub serve_port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    #[command(flatten)]
    pub factors: FactorArgs,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn input(e: impl fmt::Display) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }

    fn metric(e: impl fmt::Display) -> Self {
        Self {
            code: 3,
            message: e.to_string(),
        }
    }

    fn output(path: &Path, e: impl fmt::Display) -> Self {
        Self {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evaluate(a) => evaluate(&a),
        Command::Profile(a) => profile(&a),
        Command::Lca(a) => lca(&a),
        Command::Serve(a) => serve(a),
    }
}

fn load_manifest(path: &Path) -> Result<DatasetManifest, CliError> {
    DatasetManifest::load(path).map_err(CliError::input)
}

fn evaluate(a: &EvaluateArgs) -> Result<(), CliError> {
    let manifest = load_manifest(&a.manifest)?;
    let aggregation = match a.aggregation {
        AggregationArg::Pooled => Aggregation::Pooled,
        AggregationArg::PerImage => Aggregation::PerImage,
    };
    let report = evaluate_manifest(&manifest, aggregation).map_err(|e| match e {
        EvaluateError::Metrics(_) => CliError::metric(e),
        _ => CliError::input(e),
    })?;
    a.output.prepare()?;
    let out = &a.output.out;
    if a.output.wants(Format::Json) {
        let p = out.join("report.json");
        report.write_json(&p).map_err(|e| CliError::output(&p, e))?;
    }
    if a.output.wants(Format::Csv) {
        let p = out.join("report.csv");
        report.write_csv(&p).map_err(|e| CliError::output(&p, e))?;
    }
    Ok(())
}

fn profile(a: &ProfileArgs) -> Result<(), CliError> {
    let manifest = load_manifest(&a.manifest)?;
    let summaries = summarize_manifest(&manifest).map_err(CliError::input)?;
    let profile = aggregate(&summaries).map_err(CliError::input)?;
    a.output.prepare()?;
    let out = &a.output.out;
    if a.output.wants(Format::Json) {
        let p = out.join("profile.json");
        profile.write_json(&p).map_err(|e| CliError::output(&p, e))?;
    }
    if a.output.wants(Format::Csv) {
        let p = out.join("summary.csv");
        write_summary_csv(&p, manifest.class_map, &summaries).map_err(|e| CliError::output(&p, e))?;
    }
    Ok(())
}

/// A registered name, or a path when the argument names an existing file
/// or ends in `.json`.
fn resolve_scenario(arg: &str, table: &CharacterizationTable) -> Result<wearlca_core::lca::Scenario, LcaError> {
    let path = Path::new(arg);
    if path.is_file() || arg.ends_with(".json") {
        ScenarioSpec::load(path)?.build(table.registry())
    } else {
        named_scenario(arg, table.registry())
    }
}

fn lca(a: &LcaArgs) -> Result<(), CliError> {
    let table = a.factors.table()?;
    let results = a
        .scenarios
        .iter()
        .map(|s| {
            let scenario = resolve_scenario(s, &table).map_err(CliError::input)?;
            characterize(&scenario, &table).map_err(CliError::input)
        })
        .collect::<Result<Vec<ImpactResult>, _>>()?;
    let comparison = if results.len() > 1 {
        Some(compare(&results, &results[0].scenario_id).map_err(CliError::input)?)
    } else {
        None
    };

    a.output.prepare()?;
    let out = &a.output.out;
    let write = |name: &str, text: String| {
        let p = out.join(name);
        write_text(&p, &text).map_err(|e| CliError::output(&p, e))
    };
    if a.output.wants(Format::Csv) {
        write("impacts.csv", impacts_csv_string(&results))?;
        if let Some(c) = &comparison {
            write("comparison.csv", comparison_csv_string(c))?;
        }
    }
    if a.output.wants(Format::Json) {
        write("impacts.json", to_json_string(&results))?;
        if let Some(c) = &comparison {
            write("comparison.json", to_json_string(c))?;
            write("chart.json", to_json_string(&chart_data(c)))?;
        }
    }
    Ok(())
}

fn serve(a: ServeArgs) -> Result<(), CliError> {
    let config = wearlca_service::ServiceConfig {
        table: a.factors.table()?,
        workspace: a.workspace,
        ui_dir: a.ui_dir,
    };
    let addr = SocketAddr::new(a.host, a.serve_port);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError {
        code: 1,
        message: e.to_string(),
    })?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(wearlca_service::serve(config, addr))
        .map_err(|e| CliError {
            code: 1,
            message: e.to_string(),
        })
}
