//! The four heavy-tailed families with unit scale: exact c.d.f.s, quantile
//! functions and inverse-transform sampling.
//!
//! Quantiles and c.d.f.s go through `libm` so seeded samples are identical
//! across platforms.

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order_stats::Sample;
use crate::rng::stream_rng;
use crate::theory::constant_c;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `F(x) = 1 - x^-α` on `[1, ∞)`.
    Pareto,
    /// `F(x) = 1 / (1 + x^-α)` on `(0, ∞)`.
    LogLogistic,
    /// `F(x) = exp(-x^-α)` on `(0, ∞)`.
    Frechet,
    /// Defined through `F←(p) = -log(1-p) / (1-p)^(1/α)`.
    HillHorror,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Pareto,
        Family::LogLogistic,
        Family::Frechet,
        Family::HillHorror,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Pareto => "pareto",
            Family::LogLogistic => "loglogistic",
            Family::Frechet => "frechet",
            Family::HillHorror => "hillhorror",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "pareto" => Ok(Family::Pareto),
            "loglogistic" | "ll" => Ok(Family::LogLogistic),
            "frechet" | "fr" => Ok(Family::Frechet),
            "hillhorror" | "hh" => Ok(Family::HillHorror),
            _ => Err(Error::Domain(format!("unknown family '{s}'"))),
        }
    }
}

/// A family together with its shape `α > 0`. The scale is fixed at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionSpec {
    family: Family,
    alpha: f64,
}

impl<'de> Deserialize<'de> for DistributionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            family: Family,
            alpha: f64,
        }
        let raw = Raw::deserialize(d)?;
        DistributionSpec::new(raw.family, raw.alpha).map_err(serde::de::Error::custom)
    }
}

const HH_BISECTION_MAX_ITER: usize = 200;
const HH_BISECTION_TOL: f64 = 1e-13;

impl DistributionSpec {
    pub fn new(family: Family, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::Domain(format!("alpha must be positive, got {alpha}")));
        }
        Ok(DistributionSpec { family, alpha })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let a = self.alpha;
        match self.family {
            Family::Pareto => {
                if x <= 1.0 {
                    0.0
                } else {
                    -libm::expm1(-a * libm::log(x))
                }
            }
            Family::LogLogistic => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 / (1.0 + libm::exp(-a * libm::log(x)))
                }
            }
            Family::Frechet => {
                if x <= 0.0 {
                    0.0
                } else {
                    libm::exp(-libm::exp(-a * libm::log(x)))
                }
            }
            Family::HillHorror => self.hill_horror_cdf(x),
        }
    }

    /// Bisection in p-space on the strictly increasing quantile function.
    fn hill_horror_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x.is_nan() {
            return 0.0;
        }
        if x == f64::INFINITY {
            return 1.0;
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..HH_BISECTION_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo < HH_BISECTION_TOL {
                break;
            }
            if self.quantile_unchecked(mid) < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `F←(p)` for `p ∈ (0, 1)`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "quantile level must lie in (0, 1), got {p}"
            )));
        }
        Ok(self.quantile_unchecked(p))
    }

    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        let a = self.alpha;
        match self.family {
            Family::Pareto => libm::exp(-libm::log1p(-p) / a),
            Family::LogLogistic => libm::exp((libm::log(p) - libm::log1p(-p)) / a),
            Family::Frechet => libm::exp(-libm::log(-libm::log(p)) / a),
            Family::HillHorror => {
                let t = -libm::log1p(-p);
                t * libm::exp(t / a)
            }
        }
    }

    /// `n` i.i.d. draws `F←(U)`, `U ~ Uniform(0, 1)` open, returned sorted.
    ///
    /// Uses stream 0 of the ChaCha8 generator seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        if n == 0 {
            return Err(Error::Domain("sample size must be at least 1".into()));
        }
        let mut rng = stream_rng(seed, 0);
        Ok(self.sample_with(n, &mut rng))
    }

    /// Sorted draws from a caller-supplied generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Sample {
        let mut u: Vec<f64> = (0..n).map(|_| rng.sample(Open01)).collect();
        // the quantile is increasing, so sorting the uniforms sorts the draws
        u.sort_by(f64::total_cmp);
        let values = u.into_iter().map(|p| self.quantile_unchecked(p)).collect();
        Sample::from_sorted(values)
    }

    /// Closed form of `log F←(s/(s+1)) - log F←(1/(s+1))`, the limit in
    /// probability of the log-ratio statistic.
    pub fn theoretical_log_ratio(&self, s: usize) -> Result<f64> {
        if s < 2 {
            return Err(Error::Domain(format!("s must be at least 2, got {s}")));
        }
        let ln_s = (s as f64).ln();
        let a = self.alpha;
        Ok(match self.family {
            Family::Pareto => ln_s / a,
            Family::LogLogistic => 2.0 * ln_s / a,
            Family::Frechet => constant_c(s)? / a,
            Family::HillHorror => ln_s / a + constant_c(s)?,
        })
    }

    /// The same quantity evaluated through the quantile function.
    pub fn quantile_log_ratio(&self, s: usize) -> Result<f64> {
        if s < 2 {
            return Err(Error::Domain(format!("s must be at least 2, got {s}")));
        }
        let sp1 = (s + 1) as f64;
        Ok(self.quantile(s as f64 / sp1)?.ln() - self.quantile(1.0 / sp1)?.ln())
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(alpha={})", self.family, self.alpha)
    }
}
