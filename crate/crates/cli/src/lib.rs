//! Command-line front end for `tailratio`.
//!
//! Every run that writes a file also writes `<file>.manifest.json`, from
//! which `tailratio replay` reproduces the same bytes.

pub mod commands;
pub mod error;
pub mod grid;
pub mod manifest;
pub mod svg;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use tailratio::estimators::EstimatorKind;
use tailratio::montecarlo::{IndexMode, Preset, SimConfig, Statistic};
use tailratio::theory::DensityKind;
use tailratio::Family;

use commands::{Outputs, Params};
use error::{CliError, CliResult};
use grid::GridSpec;
use manifest::{OutputPaths, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "tailratio", version, about = "Tail-index estimation from ratios of order statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write the output here (plus a manifest alongside) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// Lower order-statistic index.
    #[arg(long = "i")]
    pub i: usize,
    /// Ratio of the upper to the lower index.
    #[arg(long = "s")]
    pub s: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate 1/alpha and alpha from a sample of size i(s+1)-1.
    Estimate {
        /// Observations, one per line; '#' starts a comment.
        #[arg(long)]
        input: PathBuf,
        /// q, qstar, qll, qllstar, qfrstar or qhhstar.
        #[arg(long)]
        kind: EstimatorKind,
        #[command(flatten)]
        ratio: RatioArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extrapolate the quantile at level p, possibly beyond the data.
    Quantile {
        #[arg(long)]
        input: PathBuf,
        /// loglogistic, frechet or hillhorror.
        #[arg(long)]
        family: Family,
        /// Defaults to the family's matched estimator.
        #[arg(long)]
        kind: Option<EstimatorKind>,
        #[command(flatten)]
        ratio: RatioArgs,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Large-sample confidence interval for alpha under Log-Logistic data.
    Ci {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        ratio: RatioArgs,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Tabulate an exact density as CSV `x,density`.
    Density {
        /// ll-star or fr-star.
        #[arg(long)]
        kind: DensityKind,
        #[command(flatten)]
        ratio: RatioArgs,
        /// Grid as min:max:step.
        #[arg(long)]
        grid: GridSpec,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Draw a sorted sample, one value per line.
    Sample {
        /// pareto, loglogistic, frechet or hillhorror.
        #[arg(long)]
        family: Family,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a figure experiment and emit its table as CSV (or JSON).
    Simulate(SimulateArgs),
    /// Re-run the command recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Override the recorded output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the recorded chart path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// key=value or JSON configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// figure-ll, figure-fr or figure-hh.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub family: Option<Family>,
    /// Comma-separated list of s values.
    #[arg(long = "s", value_delimiter = ',')]
    pub s: Option<Vec<usize>>,
    #[arg(long)]
    pub i_max: Option<usize>,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub kind: Option<EstimatorKind>,
    /// extrapolate or estimate.
    #[arg(long, value_parser = parse_statistic)]
    pub statistic: Option<Statistic>,
    /// full or prefix.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<IndexMode>,
    /// Write a line chart of the means against i here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// First i drawn in the chart.
    #[arg(long, default_value_t = 10)]
    pub plot_from: usize,
    /// Emit the table as JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

fn parse_statistic(text: &str) -> Result<Statistic, String> {
    match text {
        "extrapolate" => Ok(Statistic::Extrapolate),
        "estimate" => Ok(Statistic::Estimate),
        _ => Err(format!("unknown statistic '{text}'")),
    }
}

fn parse_mode(text: &str) -> Result<IndexMode, String> {
    match text {
        "full" => Ok(IndexMode::Full),
        "prefix" => Ok(IndexMode::Prefix),
        _ => Err(format!("unknown mode '{text}'")),
    }
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn simulate_config(args: &SimulateArgs) -> CliResult<SimConfig> {
    let mut cfg = match (&args.config, args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            SimConfig::parse(&text)?
        }
        (None, Some(preset)) => {
            let alpha = args
                .alpha
                .ok_or_else(|| CliError::Config("--preset needs --alpha".into()))?;
            SimConfig::preset(preset, alpha)
        }
        (None, None) => return Err(CliError::Config("simulate needs --config or --preset".into())),
    };
    if let Some(v) = args.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = args.family {
        cfg.family = v;
    }
    if let Some(v) = &args.s {
        cfg.s_values = v.clone();
    }
    if let Some(v) = args.i_max {
        cfg.i_max = v;
    }
    if let Some(v) = args.replications {
        cfg.replications = v;
    }
    if let Some(v) = args.p {
        cfg.p = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if args.kind.is_some() {
        cfg.kind = args.kind;
    }
    if let Some(v) = args.statistic {
        cfg.statistic = v;
    }
    if let Some(v) = args.mode {
        cfg.mode = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// A resolved run: parameters, input text and where outputs go.
struct Plan {
    params: Params,
    input: Option<String>,
    input_path: Option<String>,
    outputs: OutputPaths,
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.to_string_lossy().into_owned())
}

fn with_input(path: &Path) -> CliResult<(Option<String>, Option<String>)> {
    Ok((Some(read_text(path)?), Some(path.to_string_lossy().into_owned())))
}

fn plan(command: Command) -> CliResult<Plan> {
    let simple = |params, out: OutArgs| Plan {
        params,
        input: None,
        input_path: None,
        outputs: OutputPaths { out: path_string(&out.out), svg: None },
    };
    let with_data = |params, input: &Path, out: OutArgs| -> CliResult<Plan> {
        let (input, input_path) = with_input(input)?;
        Ok(Plan { params, input, input_path, outputs: OutputPaths { out: path_string(&out.out), svg: None } })
    };
    match command {
        Command::Estimate { input, kind, ratio, out } => {
            with_data(Params::Estimate { kind, i: ratio.i, s: ratio.s }, &input, out)
        }
        Command::Quantile { input, family, kind, ratio, p, out } => {
            let kind = kind.unwrap_or_else(|| EstimatorKind::matched(family));
            with_data(Params::Quantile { family, kind, i: ratio.i, s: ratio.s, p }, &input, out)
        }
        Command::Ci { input, ratio, level, out } => {
            with_data(Params::Ci { i: ratio.i, s: ratio.s, level }, &input, out)
        }
        Command::Density { kind, ratio, grid, out } => {
            Ok(simple(Params::Density { kind, i: ratio.i, s: ratio.s, grid }, out))
        }
        Command::Sample { family, alpha, n, seed, out } => {
            Ok(simple(Params::Sample { family, alpha, n, seed }, out))
        }
        Command::Simulate(args) => {
            let config = simulate_config(&args)?;
            Ok(Plan {
                params: Params::Simulate {
                    config,
                    plot_from: args.plot_from,
                    json: args.json,
                    svg: args.svg.is_some(),
                },
                input: None,
                input_path: None,
                outputs: OutputPaths { out: path_string(&args.out.out), svg: path_string(&args.svg) },
            })
        }
        Command::Replay { manifest, out, svg } => {
            let m = RunManifest::read(&manifest)?;
            let mut outputs = m.outputs.clone();
            if out.is_some() {
                outputs.out = path_string(&out);
            }
            if svg.is_some() {
                outputs.svg = path_string(&svg);
            }
            Ok(Plan { params: m.params, input: m.input, input_path: m.input_path, outputs })
        }
    }
}

/// Runs a parsed command; returns what should go to stdout.
pub fn execute(command: Command) -> CliResult<String> {
    let plan = plan(command)?;
    let Outputs { primary, svg } = commands::run(&plan.params, plan.input.as_deref())?;
    let manifest = RunManifest::new(plan.params, plan.input, plan.input_path, plan.outputs.clone());
    let mut stdout = String::new();
    let mut written = Vec::new();
    match &plan.outputs.out {
        Some(path) => {
            write_text(Path::new(path), &primary)?;
            written.push(path.clone());
        }
        None => stdout = primary,
    }
    if let (Some(path), Some(chart)) = (&plan.outputs.svg, svg) {
        write_text(Path::new(path), &chart)?;
        written.push(path.clone());
    }
    let manifest_text = manifest.to_json();
    for path in written {
        write_text(&RunManifest::path_for(Path::new(&path)), &manifest_text)?;
    }
    Ok(stdout)
}
