//! Ratio estimators of `1/α`, harmonic normalizers, the Log-Logistic
//! confidence interval and quantile extrapolation.
//!
//! With `L = log X_(is,n) - log X_(i,n)` and `n = i(s+1) - 1`:
//!
//! | kind      | estimate of `1/α`                   |
//! |-----------|-------------------------------------|
//! | `Q`       | `L / (H_{is-1} - H_{i-1})`          |
//! | `QStar`   | `L / log s`                         |
//! | `QLL`     | `Q / 2`                             |
//! | `QLLStar` | `QStar / 2`                         |
//! | `QFrStar` | `L / c_s`                           |
//! | `QHHStar` | `(L - c_s) / log s`                 |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distributions::Family;
use crate::error::{Error, Result};
use crate::order_stats::{RatioConfig, Sample};
use crate::stats::{two_sided_z, CompensatedSum};
use crate::theory::constant_c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Q,
    QStar,
    QLL,
    QLLStar,
    QFrStar,
    QHHStar,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::Q,
        EstimatorKind::QStar,
        EstimatorKind::QLL,
        EstimatorKind::QLLStar,
        EstimatorKind::QFrStar,
        EstimatorKind::QHHStar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EstimatorKind::Q => "q",
            EstimatorKind::QStar => "qstar",
            EstimatorKind::QLL => "qll",
            EstimatorKind::QLLStar => "qllstar",
            EstimatorKind::QFrStar => "qfrstar",
            EstimatorKind::QHHStar => "qhhstar",
        }
    }

    /// The family each estimator is designed for.
    pub fn family(&self) -> Family {
        match self {
            EstimatorKind::Q | EstimatorKind::QStar => Family::Pareto,
            EstimatorKind::QLL | EstimatorKind::QLLStar => Family::LogLogistic,
            EstimatorKind::QFrStar => Family::Frechet,
            EstimatorKind::QHHStar => Family::HillHorror,
        }
    }

    /// Estimator used by default with a family's quantile extrapolator.
    pub fn matched(family: Family) -> EstimatorKind {
        match family {
            Family::Pareto => EstimatorKind::QStar,
            Family::LogLogistic => EstimatorKind::QLLStar,
            Family::Frechet => EstimatorKind::QFrStar,
            Family::HillHorror => EstimatorKind::QHHStar,
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace(['_', '-', '^'], "").replace('*', "star");
        EstimatorKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Domain(format!("unknown estimator kind '{s}'")))
    }
}

/// `H_n = Σ_{k=1}^n 1/k`.
pub fn harmonic(n: usize) -> Result<f64> {
    generalized_harmonic(n, 1)
}

/// `H_{n,m} = Σ_{k=1}^n k^{-m}`, summed from the smallest term up.
pub fn generalized_harmonic(n: usize, m: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("harmonic numbers start at n = 1".into()));
    }
    if m == 0 {
        return Err(Error::Domain("harmonic power m must be at least 1".into()));
    }
    let exp = -(m as f64);
    Ok((1..=n)
        .rev()
        .map(|k| (k as f64).powf(exp))
        .collect::<CompensatedSum>()
        .value())
}

/// `H_{is-1} - H_{i-1} = Σ_{k=i}^{is-1} 1/k`, for any `i >= 1`, `s >= 2`.
pub fn harmonic_difference(i: usize, s: usize) -> f64 {
    (i..i * s)
        .rev()
        .map(|k| 1.0 / k as f64)
        .collect::<CompensatedSum>()
        .value()
}

/// `log(X_(is,n) / X_(i,n))`.
pub fn log_ratio(sample: &Sample, cfg: &RatioConfig) -> Result<f64> {
    let (lower, upper) = sample.select_ratio_pair(cfg)?;
    Ok(log_of_ratio(lower, upper))
}

/// `log(upper / lower)`; dividing first keeps the result exactly invariant
/// to a common rescaling up to a few ulps.
pub(crate) fn log_of_ratio(lower: f64, upper: f64) -> f64 {
    (upper / lower).ln()
}

/// Estimate of `1/α` from a log-ratio `L` at indices `(i, is)`.
///
/// Defined for every `i >= 1` so the Monte Carlo engine can evaluate
/// index pairs inside larger samples.
pub fn inverse_alpha_from_log_ratio(kind: EstimatorKind, log_ratio: f64, i: usize, s: usize) -> Result<f64> {
    if i == 0 || s < 2 {
        return Err(Error::Domain(format!("need i >= 1 and s >= 2, got i = {i}, s = {s}")));
    }
    let ln_s = (s as f64).ln();
    Ok(match kind {
        EstimatorKind::Q => log_ratio / harmonic_difference(i, s),
        EstimatorKind::QStar => log_ratio / ln_s,
        EstimatorKind::QLL => (log_ratio / harmonic_difference(i, s)) / 2.0,
        EstimatorKind::QLLStar => (log_ratio / ln_s) / 2.0,
        EstimatorKind::QFrStar => log_ratio / constant_c(s)?,
        EstimatorKind::QHHStar => (log_ratio - constant_c(s)?) / ln_s,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateWarning {
    /// `X_(is,n) = X_(i,n)`: the estimate of `1/α` is zero, `α̂` infinite.
    ZeroLogRatio,
    /// Negative estimate of `1/α` (possible for `QHHStar` on small samples).
    NegativeEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateResult {
    pub kind: EstimatorKind,
    /// Estimate of `1/α`.
    pub inv_alpha_hat: f64,
    /// `1 / inv_alpha_hat`; non-finite when the log-ratio is zero.
    pub alpha_hat: f64,
    pub i: usize,
    pub s: usize,
    pub n: usize,
    pub warnings: Vec<EstimateWarning>,
}

impl EstimateResult {
    /// Fails with a domain error when `alpha_hat` is not finite.
    pub fn require_finite_alpha(&self) -> Result<f64> {
        if self.alpha_hat.is_finite() {
            Ok(self.alpha_hat)
        } else {
            Err(Error::Domain(format!(
                "{} estimate of 1/alpha is {}; alpha is not finite",
                self.kind, self.inv_alpha_hat
            )))
        }
    }
}

pub fn estimate(kind: EstimatorKind, sample: &Sample, cfg: &RatioConfig) -> Result<EstimateResult> {
    let l = log_ratio(sample, cfg)?;
    let inv = inverse_alpha_from_log_ratio(kind, l, cfg.i(), cfg.s())?;
    let mut warnings = Vec::new();
    if l == 0.0 {
        warnings.push(EstimateWarning::ZeroLogRatio);
    }
    if inv < 0.0 {
        warnings.push(EstimateWarning::NegativeEstimate);
    }
    Ok(EstimateResult {
        kind,
        inv_alpha_hat: inv,
        alpha_hat: 1.0 / inv,
        i: cfg.i(),
        s: cfg.s(),
        n: cfg.n(),
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    /// `1 / QLL*`.
    pub alpha_hat: f64,
    pub half_width: f64,
    pub level: f64,
    pub z: f64,
}

impl ConfidenceInterval {
    pub fn contains(&self, alpha: f64) -> bool {
        self.lo <= alpha && alpha <= self.hi
    }
}

/// Large-sample interval for `α` under Log-Logistic data, centred at
/// `1/QLL*` with half-width `z (s+1) / (QLL* s log s) · sqrt((s-1) / (2n))`.
pub fn confidence_interval(sample: &Sample, cfg: &RatioConfig, level: f64) -> Result<ConfidenceInterval> {
    let z = two_sided_z(level)?;
    let q = estimate(EstimatorKind::QLLStar, sample, cfg)?.inv_alpha_hat;
    interval_from_estimate(q, cfg, level, z)
}

/// The same interval from a known `QLL*` value.
pub fn confidence_interval_from_estimate(q_ll_star: f64, cfg: &RatioConfig, level: f64) -> Result<ConfidenceInterval> {
    interval_from_estimate(q_ll_star, cfg, level, two_sided_z(level)?)
}

fn interval_from_estimate(q: f64, cfg: &RatioConfig, level: f64, z: f64) -> Result<ConfidenceInterval> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::Domain(format!(
            "confidence interval needs a positive QLL* estimate, got {q}"
        )));
    }
    let s = cfg.s() as f64;
    let n = cfg.n() as f64;
    let half_width = z * (s + 1.0) / (q * s * s.ln()) * ((s - 1.0) / (2.0 * n)).sqrt();
    let center = 1.0 / q;
    Ok(ConfidenceInterval {
        lo: center - half_width,
        hi: center + half_width,
        alpha_hat: center,
        half_width,
        level,
        z,
    })
}

/// Plug an estimate of `1/α` into a family's quantile function:
///
/// * Log-Logistic: `(p / (1-p))^Q`
/// * Fréchet: `(-log p)^(-Q)`
/// * Hill-horror: `-log(1-p) / (1-p)^Q`
pub fn extrapolate_quantile(family: Family, inv_alpha: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {p}")));
    }
    match family {
        Family::LogLogistic => Ok((inv_alpha * (p.ln() - (-p).ln_1p())).exp()),
        Family::Frechet => Ok((-inv_alpha * (-p.ln()).ln()).exp()),
        Family::HillHorror => {
            let ln_tail = (-p).ln_1p();
            Ok(-ln_tail * (-inv_alpha * ln_tail).exp())
        }
        Family::Pareto => Err(Error::UnsupportedFamily(
            "no quantile extrapolator is defined for the Pareto family".into(),
        )),
    }
}

/// Checks that `kind` is the estimator a family's extrapolator uses.
pub fn check_extrapolation_pair(family: Family, kind: EstimatorKind) -> Result<()> {
    let ok = match family {
        Family::Pareto => {
            return Err(Error::UnsupportedFamily(
                "no quantile extrapolator is defined for the Pareto family".into(),
            ))
        }
        Family::LogLogistic => matches!(kind, EstimatorKind::QLL | EstimatorKind::QLLStar),
        Family::Frechet => kind == EstimatorKind::QFrStar,
        Family::HillHorror => kind == EstimatorKind::QHHStar,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedKind(format!(
            "estimator {kind} cannot drive the {family} quantile extrapolator"
        )))
    }
}

/// Estimate of `F←(p)` possibly beyond the largest observation.
pub fn quantile_extrapolate(
    sample: &Sample,
    cfg: &RatioConfig,
    p: f64,
    family: Family,
    kind: EstimatorKind,
) -> Result<f64> {
    check_extrapolation_pair(family, kind)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {p}")));
    }
    let q = estimate(kind, sample, cfg)?.inv_alpha_hat;
    extrapolate_quantile(family, q, p)
}
