//! Replication engine for the simulation studies.
//!
//! Replications are independent work units run in parallel with rayon.
//! Replication `r` of series `tag` draws from
//! `rng::stream_rng(seed, rng::replication_stream(tag, r))`, and per-replication
//! results are reduced in replication order with compensated summation, so
//! every output is a deterministic function of the configuration.

use std::fmt::Write as _;

use rand::distr::Open01;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::estimators::{
    confidence_interval_from_estimate, extrapolate_quantile, harmonic_difference,
    inverse_alpha_from_log_ratio, log_of_ratio, EstimatorKind,
};
use crate::order_stats::RatioConfig;
use crate::rng::{replication_stream, stream_rng};
use crate::stats::{ks_distance_on_grid, ks_distance_sorted, mean_variance, normal_cdf};
use crate::theory::{asymptotic_variance, DensityKind, DensitySpec};

/// What is averaged over replications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// The family's quantile extrapolator at level `p`.
    Extrapolate,
    /// The estimate of `1/α` itself.
    Estimate,
}

/// How the estimate at index `i` is obtained from a replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexMode {
    /// One sample of size `i_max(s+1) - 1`; step `i` uses `X_(i,n)` and
    /// `X_(is,n)` of that full sample.
    Full,
    /// Step `i` uses the first `i(s+1) - 1` draws of the replication, so
    /// each step sees a sample of exactly the size its estimator assumes.
    Prefix,
}

fn default_s_values() -> Vec<usize> {
    vec![2, 3, 4, 5]
}
fn default_i_max() -> usize {
    150
}
fn default_replications() -> usize {
    1000
}
fn default_p() -> f64 {
    0.999
}
fn default_seed() -> u64 {
    1
}
fn default_statistic() -> Statistic {
    Statistic::Extrapolate
}
fn default_mode() -> IndexMode {
    IndexMode::Full
}

/// Configuration of a figure-style experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub family: Family,
    pub alpha: f64,
    #[serde(default = "default_s_values")]
    pub s_values: Vec<usize>,
    #[serde(default = "default_i_max")]
    pub i_max: usize,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_statistic")]
    pub statistic: Statistic,
    /// Defaults to the family's matched estimator.
    #[serde(default)]
    pub kind: Option<EstimatorKind>,
    #[serde(default = "default_mode")]
    pub mode: IndexMode,
}

/// Named presets reproducing the three extrapolation figures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "figure-ll")]
    FigureLogLogistic,
    #[serde(rename = "figure-fr")]
    FigureFrechet,
    #[serde(rename = "figure-hh")]
    FigureHillHorror,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "figure-ll" => Ok(Preset::FigureLogLogistic),
            "figure-fr" => Ok(Preset::FigureFrechet),
            "figure-hh" => Ok(Preset::FigureHillHorror),
            _ => Err(Error::Config(format!(
                "unknown preset '{s}' (expected figure-ll, figure-fr or figure-hh)"
            ))),
        }
    }
}

impl Preset {
    pub fn family(&self) -> Family {
        match self {
            Preset::FigureLogLogistic => Family::LogLogistic,
            Preset::FigureFrechet => Family::Frechet,
            Preset::FigureHillHorror => Family::HillHorror,
        }
    }
}

impl SimConfig {
    /// 1000 replications of `150(s+1) - 1` observations, `s = 2..5`,
    /// `p = 0.999`, averaging the matched extrapolator.
    pub fn preset(preset: Preset, alpha: f64) -> Self {
        SimConfig {
            family: preset.family(),
            alpha,
            s_values: default_s_values(),
            i_max: default_i_max(),
            replications: default_replications(),
            p: default_p(),
            seed: default_seed(),
            statistic: Statistic::Extrapolate,
            kind: None,
            mode: IndexMode::Full,
        }
    }

    /// Parses JSON (when the text starts with `{`) or flat `key = value`
    /// lines with `#` comments. Keys are the field names; `s_values` takes a
    /// comma-separated list.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SimConfig = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            let mut map = serde_json::Map::new();
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Config(format!("line {}: expected key = value", idx + 1))
                })?;
                let key = key.trim();
                let value = value.trim();
                let json = match key {
                    "family" | "statistic" | "kind" | "mode" => {
                        serde_json::Value::String(value.to_ascii_lowercase())
                    }
                    "s_values" => serde_json::Value::Array(
                        value
                            .split(',')
                            .map(|v| {
                                v.trim().parse::<u64>().map(Into::into).map_err(|_| {
                                    Error::Config(format!("line {}: bad s value '{v}'", idx + 1))
                                })
                            })
                            .collect::<Result<_>>()?,
                    ),
                    _ => serde_json::from_str(value).map_err(|_| {
                        Error::Config(format!("line {}: bad value '{value}' for {key}", idx + 1))
                    })?,
                };
                if map.insert(key.to_string(), json).is_some() {
                    return Err(Error::Config(format!("line {}: duplicate key {key}", idx + 1)));
                }
            }
            serde_json::from_value(serde_json::Value::Object(map))
                .map_err(|e| Error::Config(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Flat `key = value` rendering accepted by [`SimConfig::parse`].
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let s_values: Vec<String> = self.s_values.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "family = {}", self.family);
        let _ = writeln!(out, "alpha = {}", self.alpha);
        let _ = writeln!(out, "s_values = {}", s_values.join(","));
        let _ = writeln!(out, "i_max = {}", self.i_max);
        let _ = writeln!(out, "replications = {}", self.replications);
        let _ = writeln!(out, "p = {}", self.p);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "statistic = {}", serde_name(&self.statistic));
        if let Some(kind) = self.kind {
            let _ = writeln!(out, "kind = {kind}");
        }
        let _ = writeln!(out, "mode = {}", serde_name(&self.mode));
        out
    }

    pub fn distribution(&self) -> Result<DistributionSpec> {
        DistributionSpec::new(self.family, self.alpha).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn kind(&self) -> EstimatorKind {
        self.kind.unwrap_or_else(|| EstimatorKind::matched(self.family))
    }

    pub fn validate(&self) -> Result<()> {
        self.distribution()?;
        if self.s_values.is_empty() {
            return Err(Error::Config("s_values must not be empty".into()));
        }
        for (k, &s) in self.s_values.iter().enumerate() {
            if !(2..(1 << 20)).contains(&s) {
                return Err(Error::Config(format!("s = {s} is out of range (need s >= 2)")));
            }
            if self.s_values[..k].contains(&s) {
                return Err(Error::Config(format!("s = {s} is listed twice")));
            }
        }
        if self.i_max == 0 {
            return Err(Error::Config("i_max must be at least 1".into()));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::Config(format!("p must lie in (0, 1), got {}", self.p)));
        }
        let kind = self.kind();
        match self.statistic {
            Statistic::Extrapolate => {
                crate::estimators::check_extrapolation_pair(self.family, kind)
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
            Statistic::Estimate => check_kind_family(kind, self.family)?,
        }
        Ok(())
    }

    /// The quantity the averaged statistic should approach: `F←(p)` for
    /// extrapolation, `1/α` for estimates.
    pub fn target(&self) -> Result<f64> {
        match self.statistic {
            Statistic::Extrapolate => self.distribution()?.quantile(self.p),
            Statistic::Estimate => Ok(1.0 / self.alpha),
        }
    }
}

fn serde_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn check_kind_family(kind: EstimatorKind, family: Family) -> Result<()> {
    if kind.family() == family {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "estimator {kind} is designed for {} data, not {family}",
            kind.family()
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub family: Family,
    pub alpha: f64,
    pub s: usize,
    pub i: usize,
    pub mean: f64,
    pub sd: f64,
    pub replications: usize,
}

/// Long-format results, one row per `(s, i)`, ordered by `s` then `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimTable {
    pub rows: Vec<SimRow>,
}

pub const SIM_TABLE_CSV_HEADER: &str = "family,alpha,s,i,mean,sd,replications";

impl SimTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(SIM_TABLE_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.family, r.alpha, r.s, r.i, r.mean, r.sd, r.replications
            );
        }
        out
    }

    /// JSON array of row objects with the CSV field names.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rows).expect("rows serialize");
        s.push('\n');
        s
    }

    pub fn row(&self, s: usize, i: usize) -> Option<&SimRow> {
        self.rows.iter().find(|r| r.s == s && r.i == i)
    }

    pub fn s_values(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.s) {
                out.push(r.s);
            }
        }
        out
    }

    /// `|mean - target| / |target|` at `(s, i)`.
    pub fn relative_error(&self, s: usize, i: usize, target: f64) -> Option<f64> {
        self.row(s, i).map(|r| (r.mean - target).abs() / target.abs())
    }
}

/// Averages the configured statistic over replications for every `s` and
/// every `i = 1..=i_max`.
pub fn run_figure_experiment(cfg: &SimConfig) -> Result<SimTable> {
    cfg.validate()?;
    let dist = cfg.distribution()?;
    let kind = cfg.kind();
    let mut rows = Vec::with_capacity(cfg.s_values.len() * cfg.i_max);
    for &s in &cfg.s_values {
        let n_total = cfg.i_max * (s + 1) - 1;
        let per_rep: Vec<Vec<f64>> = (0..cfg.replications)
            .into_par_iter()
            .map(|r| {
                let mut rng = stream_rng(cfg.seed, replication_stream(s as u64, r as u64));
                let log_ratios = match cfg.mode {
                    IndexMode::Full => full_sample_log_ratios(&dist, n_total, cfg.i_max, s, &mut rng),
                    IndexMode::Prefix => prefix_log_ratios(&dist, n_total, cfg.i_max, s, &mut rng),
                };
                log_ratios
                    .into_iter()
                    .enumerate()
                    .map(|(idx, l)| statistic_value(cfg, kind, l, idx + 1, s))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        let mut column = vec![0.0; cfg.replications];
        for i in 1..=cfg.i_max {
            for (slot, values) in column.iter_mut().zip(&per_rep) {
                *slot = values[i - 1];
            }
            let (mean, var) = mean_variance(&column);
            rows.push(SimRow {
                family: cfg.family,
                alpha: cfg.alpha,
                s,
                i,
                mean,
                sd: var.sqrt(),
                replications: cfg.replications,
            });
        }
    }
    Ok(SimTable { rows })
}

fn statistic_value(cfg: &SimConfig, kind: EstimatorKind, log_ratio: f64, i: usize, s: usize) -> Result<f64> {
    let inv = inverse_alpha_from_log_ratio(kind, log_ratio, i, s)?;
    match cfg.statistic {
        Statistic::Estimate => Ok(inv),
        Statistic::Extrapolate => extrapolate_quantile(cfg.family, inv, cfg.p),
    }
}

fn full_sample_log_ratios<R: Rng>(dist: &DistributionSpec, n: usize, i_max: usize, s: usize, rng: &mut R) -> Vec<f64> {
    let sample = dist.sample_with(n, rng);
    let v = sample.values();
    (1..=i_max).map(|i| log_of_ratio(v[i - 1], v[i * s - 1])).collect()
}

fn prefix_log_ratios<R: Rng>(dist: &DistributionSpec, n: usize, i_max: usize, s: usize, rng: &mut R) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| rng.sample(Open01)).collect();
    let mut sorted: Vec<f64> = Vec::with_capacity(n);
    let mut used = 0;
    let mut out = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        let size = i * (s + 1) - 1;
        for &u in &draws[used..size] {
            let pos = sorted.partition_point(|&x| x < u);
            sorted.insert(pos, u);
        }
        used = size;
        let lower = dist.quantile_unchecked(sorted[i - 1]);
        let upper = dist.quantile_unchecked(sorted[i * s - 1]);
        out.push(log_of_ratio(lower, upper));
    }
    out
}

/// Draws `replications` fresh samples of size `i(s+1) - 1` and returns the
/// estimates of `1/α`, in replication order.
pub fn simulate_estimates(
    kind: EstimatorKind,
    dist: &DistributionSpec,
    cfg: &RatioConfig,
    replications: usize,
    seed: u64,
    tag: u64,
) -> Result<Vec<f64>> {
    if replications == 0 {
        return Err(Error::Config("replications must be at least 1".into()));
    }
    let (i, s, n) = (cfg.i(), cfg.s(), cfg.n());
    (0..replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, replication_stream(tag, r as u64));
            let sample = dist.sample_with(n, &mut rng);
            let v = sample.values();
            inverse_alpha_from_log_ratio(kind, log_of_ratio(v[i - 1], v[i * s - 1]), i, s)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasVarianceRow {
    pub i: usize,
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    /// Exact expectation where it is known in closed form.
    pub expected_mean: Option<f64>,
    /// `n · α² · variance`, the variance of `√n · αQ`.
    pub scaled_variance: f64,
    pub replications: usize,
}

/// Closed-form `E[Q]` for the pairings where it is known: `QLL` (Log-Logistic)
/// and `Q` (Pareto) are unbiased for `1/α`; `QLLStar` (Log-Logistic) and
/// `QStar` (Pareto) have mean `(H_{is-1} - H_{i-1}) / (α log s)`.
pub fn exact_mean(kind: EstimatorKind, family: Family, alpha: f64, i: usize, s: usize) -> Option<f64> {
    let ln_s = (s as f64).ln();
    match (kind, family) {
        (EstimatorKind::QLL, Family::LogLogistic) | (EstimatorKind::Q, Family::Pareto) => Some(1.0 / alpha),
        (EstimatorKind::QLLStar, Family::LogLogistic) | (EstimatorKind::QStar, Family::Pareto) => {
            Some(harmonic_difference(i, s) / (alpha * ln_s))
        }
        _ => None,
    }
}

/// Monte Carlo mean, variance and standard error of an estimator for each
/// `i` in `i_list`, drawing fresh samples of size `i(s+1) - 1`.
pub fn bias_variance_study(
    kind: EstimatorKind,
    dist: &DistributionSpec,
    s: usize,
    i_list: &[usize],
    replications: usize,
    seed: u64,
) -> Result<Vec<BiasVarianceRow>> {
    check_kind_family(kind, dist.family())?;
    i_list
        .iter()
        .map(|&i| {
            let cfg = RatioConfig::new(i, s).map_err(|e| Error::Config(e.to_string()))?;
            let values = simulate_estimates(kind, dist, &cfg, replications, seed, i as u64)?;
            let (mean, variance) = mean_variance(&values);
            let n = cfg.n();
            Ok(BiasVarianceRow {
                i,
                n,
                mean,
                variance,
                std_error: (variance / replications as f64).sqrt(),
                expected_mean: exact_mean(kind, dist.family(), dist.alpha(), i, s),
                scaled_variance: n as f64 * dist.alpha().powi(2) * variance,
                replications,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityReport {
    pub kind: EstimatorKind,
    pub alpha: f64,
    pub s: usize,
    pub i: usize,
    pub n: usize,
    pub replications: usize,
    /// Mean of the scaled, centred statistic.
    pub mean: f64,
    /// Variance of the scaled, centred statistic.
    pub empirical_var: f64,
    pub asymptotic_var: f64,
    /// `empirical_var / asymptotic_var`.
    pub variance_ratio: f64,
    /// Kolmogorov distance between the standardized statistic and N(0, 1).
    pub ks_distance: f64,
}

/// Builds `√n(αQ^{LL*} - 1)` (for `QLLStar`) or
/// `2√n (H_{is-1} - H_{i-1}) (αQ^{LL} - log s / (H_{is-1} - H_{i-1}))`
/// (for `QLL`) on Log-Logistic samples and compares it with its normal limit.
pub fn normality_check(
    kind: EstimatorKind,
    alpha: f64,
    s: usize,
    i: usize,
    replications: usize,
    seed: u64,
) -> Result<NormalityReport> {
    if !matches!(kind, EstimatorKind::QLL | EstimatorKind::QLLStar) {
        return Err(Error::Config(format!(
            "normality check is defined for qll and qllstar, not {kind}"
        )));
    }
    let dist = DistributionSpec::new(Family::LogLogistic, alpha).map_err(|e| Error::Config(e.to_string()))?;
    let cfg = RatioConfig::new(i, s).map_err(|e| Error::Config(e.to_string()))?;
    let estimates = simulate_estimates(kind, &dist, &cfg, replications, seed, 0)?;
    let n = cfg.n() as f64;
    let hd = harmonic_difference(i, s);
    let ln_s = (s as f64).ln();
    let mut scaled: Vec<f64> = estimates
        .iter()
        .map(|q| match kind {
            EstimatorKind::QLLStar => n.sqrt() * (alpha * q - 1.0),
            _ => 2.0 * n.sqrt() * hd * (alpha * q - ln_s / hd),
        })
        .collect();
    let (mean, empirical_var) = mean_variance(&scaled);
    let asymptotic_var = asymptotic_variance(kind, s)?;
    let sd = asymptotic_var.sqrt();
    scaled.sort_by(f64::total_cmp);
    let ks_distance = ks_distance_sorted(&scaled, |x| normal_cdf(x / sd));
    Ok(NormalityReport {
        kind,
        alpha,
        s,
        i,
        n: cfg.n(),
        replications,
        mean,
        empirical_var,
        asymptotic_var,
        variance_ratio: empirical_var / asymptotic_var,
        ks_distance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub alpha: f64,
    pub s: usize,
    pub i: usize,
    pub level: f64,
    pub replications: usize,
    pub coverage: f64,
    /// Binomial standard error of `coverage`.
    pub std_error: f64,
    pub mean_half_width: f64,
}

/// Fraction of Log-Logistic replications whose interval contains `α`.
pub fn coverage_study(alpha: f64, s: usize, i: usize, level: f64, replications: usize, seed: u64) -> Result<CoverageReport> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Config(format!("level must lie in (0, 1), got {level}")));
    }
    let dist = DistributionSpec::new(Family::LogLogistic, alpha).map_err(|e| Error::Config(e.to_string()))?;
    let cfg = RatioConfig::new(i, s).map_err(|e| Error::Config(e.to_string()))?;
    let estimates = simulate_estimates(EstimatorKind::QLLStar, &dist, &cfg, replications, seed, 0)?;
    let mut covered = 0usize;
    let mut widths = Vec::with_capacity(replications);
    for q in estimates {
        match confidence_interval_from_estimate(q, &cfg, level) {
            Ok(ci) => {
                if ci.contains(alpha) {
                    covered += 1;
                }
                widths.push(ci.half_width);
            }
            // a zero log-ratio gives no interval; it counts as a miss
            Err(_) => widths.push(f64::INFINITY),
        }
    }
    let coverage = covered as f64 / replications as f64;
    Ok(CoverageReport {
        alpha,
        s,
        i,
        level,
        replications,
        coverage,
        std_error: (coverage * (1.0 - coverage) / replications as f64).sqrt(),
        mean_half_width: mean_variance(&widths).0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityKsReport {
    pub kind: DensityKind,
    pub i: usize,
    pub s: usize,
    pub replications: usize,
    /// Kolmogorov distance measured on the comparison grid.
    pub ks_distance: f64,
    /// Largest c.d.f. increment between grid points; bounds the part of the
    /// distance the grid cannot see.
    pub grid_resolution: f64,
}

/// Simulated values of `αQ^{LL*}` (Log-Logistic data) or `αQ^{Fr*}`
/// (Fréchet data), sorted.
pub fn simulate_normalized(kind: DensityKind, alpha: f64, i: usize, s: usize, replications: usize, seed: u64) -> Result<Vec<f64>> {
    let (family, estimator) = match kind {
        DensityKind::LLStar => (Family::LogLogistic, EstimatorKind::QLLStar),
        DensityKind::FrStar => (Family::Frechet, EstimatorKind::QFrStar),
    };
    let dist = DistributionSpec::new(family, alpha).map_err(|e| Error::Config(e.to_string()))?;
    let cfg = RatioConfig::new(i, s).map_err(|e| Error::Config(e.to_string()))?;
    let mut values: Vec<f64> = simulate_estimates(estimator, &dist, &cfg, replications, seed, 0)?
        .into_iter()
        .map(|q| alpha * q)
        .collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Compares simulated normalized estimates with the exact density's c.d.f.,
/// tabulated by quadrature on a grid of `grid_points` empirical quantiles.
pub fn density_ks_check(
    kind: DensityKind,
    alpha: f64,
    i: usize,
    s: usize,
    replications: usize,
    seed: u64,
    grid_points: usize,
) -> Result<DensityKsReport> {
    let values = simulate_normalized(kind, alpha, i, s, replications, seed)?;
    let density = DensitySpec::new(kind, i, s)?;
    let step = (values.len() / grid_points.max(1)).max(1);
    let mut grid: Vec<f64> = values.iter().step_by(step).copied().collect();
    grid.push(*values.last().expect("non-empty"));
    grid.dedup();
    let cdf = density.cdf_table(&grid)?;
    let mut resolution = cdf[0];
    for w in cdf.windows(2) {
        resolution = resolution.max(w[1] - w[0]);
    }
    Ok(DensityKsReport {
        kind,
        i,
        s,
        replications,
        ks_distance: ks_distance_on_grid(&values, &grid, &cdf),
        grid_resolution: resolution.max(1.0 - cdf[cdf.len() - 1]),
    })
}
