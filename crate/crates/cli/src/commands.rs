use serde::{Deserialize, Serialize};
use serde_json::json;

use tailratio::estimators::{self, EstimatorKind};
use tailratio::montecarlo::{run_figure_experiment, SimConfig};
use tailratio::theory::{DensityKind, DensitySpec};
use tailratio::{DistributionSpec, Family, RatioConfig, Sample};

use crate::error::{CliError, CliResult};
use crate::grid::GridSpec;
use crate::svg;

/// Fully resolved parameters of one run; together with the embedded input
/// data this is everything needed to reproduce the outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "lowercase")]
pub enum Params {
    Estimate {
        kind: EstimatorKind,
        i: usize,
        s: usize,
    },
    Quantile {
        family: Family,
        kind: EstimatorKind,
        i: usize,
        s: usize,
        p: f64,
    },
    Ci {
        i: usize,
        s: usize,
        level: f64,
    },
    Density {
        kind: DensityKind,
        i: usize,
        s: usize,
        grid: GridSpec,
    },
    Sample {
        family: Family,
        alpha: f64,
        n: usize,
        seed: u64,
    },
    Simulate {
        config: SimConfig,
        plot_from: usize,
        json: bool,
        svg: bool,
    },
}

impl Params {
    pub fn name(&self) -> &'static str {
        match self {
            Params::Estimate { .. } => "estimate",
            Params::Quantile { .. } => "quantile",
            Params::Ci { .. } => "ci",
            Params::Density { .. } => "density",
            Params::Sample { .. } => "sample",
            Params::Simulate { .. } => "simulate",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Params::Sample { seed, .. } => Some(*seed),
            Params::Simulate { config, .. } => Some(config.seed),
            _ => None,
        }
    }

    pub fn needs_input(&self) -> bool {
        matches!(self, Params::Estimate { .. } | Params::Quantile { .. } | Params::Ci { .. })
    }
}

/// Text produced by a run: the primary output and an optional chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Outputs {
    pub primary: String,
    pub svg: Option<String>,
}

fn to_json_line(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values always serialize");
    text.push('\n');
    text
}

fn parse_input(input: Option<&str>) -> CliResult<Sample> {
    let text = input.ok_or_else(|| CliError::Input("this subcommand needs --input".into()))?;
    Ok(Sample::from_reader(text.as_bytes())?)
}

pub fn run(params: &Params, input: Option<&str>) -> CliResult<Outputs> {
    let primary = match params {
        Params::Estimate { kind, i, s } => {
            let sample = parse_input(input)?;
            let cfg = RatioConfig::new(*i, *s)?;
            let est = estimators::estimate(*kind, &sample, &cfg)?;
            to_json_line(&serde_json::to_value(&est).expect("estimate serializes"))
        }
        Params::Quantile { family, kind, i, s, p } => {
            let sample = parse_input(input)?;
            let cfg = RatioConfig::new(*i, *s)?;
            let quantile = estimators::quantile_extrapolate(&sample, &cfg, *p, *family, *kind)?;
            let inv_alpha = estimators::estimate(*kind, &sample, &cfg)?.inv_alpha_hat;
            let n = cfg.n();
            to_json_line(&json!({
                "family": family,
                "kind": kind,
                "i": i,
                "s": s,
                "n": n,
                "p": p,
                "inv_alpha_hat": inv_alpha,
                "quantile": quantile,
                "sample_max": sample.max(),
                "beyond_data_range": *p > 1.0 - 1.0 / n as f64,
                "exceeds_sample_max": quantile > sample.max(),
            }))
        }
        Params::Ci { i, s, level } => {
            let sample = parse_input(input)?;
            let cfg = RatioConfig::new(*i, *s)?;
            let ci = estimators::confidence_interval(&sample, &cfg, *level)?;
            to_json_line(&json!({
                "i": i,
                "s": s,
                "n": cfg.n(),
                "level": ci.level,
                "alpha_hat": ci.alpha_hat,
                "lo": ci.lo,
                "hi": ci.hi,
                "half_width": ci.half_width,
                "z": ci.z,
            }))
        }
        Params::Density { kind, i, s, grid } => {
            let spec = DensitySpec::new(*kind, *i, *s)?;
            let mut out = String::from("x,density\n");
            for x in grid.points() {
                out.push_str(&format!("{x},{}\n", spec.pdf(x)?));
            }
            out
        }
        Params::Sample { family, alpha, n, seed } => {
            let dist = DistributionSpec::new(*family, *alpha)?;
            dist.sample(*n, *seed)?.to_text()
        }
        Params::Simulate { config, plot_from, json, svg: want_svg } => {
            let table = run_figure_experiment(config)?;
            let chart = if *want_svg {
                let target = config.target()?;
                let title = format!(
                    "{} alpha = {}, p = {}, {} replications",
                    config.family, config.alpha, config.p, config.replications
                );
                Some(svg::line_chart(&table, target, *plot_from, &title))
            } else {
                None
            };
            let primary = if *json { table.to_json() } else { table.to_csv() };
            return Ok(Outputs { primary, svg: chart });
        }
    };
    Ok(Outputs { primary, svg: None })
}
