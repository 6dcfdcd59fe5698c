//! Samples, order statistics, and the type-1 empirical quantile.

use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used to decide whether a floating-point `n·p` is an integer.
///
/// The empirical quantile jumps between the two branches at integer `n·p`,
/// so a float `p` such as `0.4` with `n = 5` must land on the integer branch
/// even though `5.0 * 0.4` is not exactly `2.0` in binary. Callers holding an
/// exact rational should use [`Sample::empirical_quantile_ratio`].
pub const INTEGER_NP_TOLERANCE: f64 = 1e-9;

/// Immutable, sorted sample of positive observations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Sorts `values` (stable, ties kept) and validates them.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a sample needs at least one observation".into()));
        }
        if let Some((idx, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::Domain(format!(
                "observation #{} is {v}; observations must be finite and positive",
                idx + 1
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Sample { values })
    }

    /// Wraps values that are already sorted, finite and positive.
    pub(crate) fn from_sorted(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|v| v.is_finite() && *v > 0.0));
        Sample { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always `false`; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted observations.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// The sample multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain(format!("scale factor must be positive, got {c}")));
        }
        Sample::new(self.values.iter().map(|v| v * c).collect())
    }

    /// The `k`-th smallest observation `X_(k,n)`, 1-indexed.
    pub fn order_statistic(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.len() {
            return Err(Error::Index { k, n: self.len() });
        }
        Ok(self.values[k - 1])
    }

    /// Type-1 empirical quantile: `X_(np,n)` when `np` is an integer,
    /// `X_(ceil(np),n)` otherwise, and the minimum at `p = 0`.
    pub fn empirical_quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("probability must lie in [0, 1], got {p}")));
        }
        if p == 0.0 {
            return Ok(self.min());
        }
        let np = self.len() as f64 * p;
        let nearest = np.round();
        let k = if (np - nearest).abs() < INTEGER_NP_TOLERANCE {
            nearest as usize
        } else {
            np.ceil() as usize
        };
        // p > 0 but np within tolerance of 0 still selects the minimum.
        self.order_statistic(k.clamp(1, self.len()))
    }

    /// Empirical quantile at the exact rational `p = num / den`.
    pub fn empirical_quantile_ratio(&self, num: u64, den: u64) -> Result<f64> {
        if den == 0 || num > den {
            return Err(Error::Domain(format!(
                "probability {num}/{den} is not in [0, 1]"
            )));
        }
        if num == 0 {
            return Ok(self.min());
        }
        let np = self.len() as u64 * num;
        let k = np.div_ceil(den);
        self.order_statistic(k as usize)
    }

    /// `(X_(i,n), X_(is,n))` for a configuration matching this sample's size.
    pub fn select_ratio_pair(&self, cfg: &RatioConfig) -> Result<(f64, f64)> {
        cfg.check_sample(self)?;
        Ok((
            self.order_statistic(cfg.lower_index())?,
            self.order_statistic(cfg.upper_index())?,
        ))
    }

    /// Reads one positive number per line; `#` starts a comment and blank
    /// lines are skipped.
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let content = match line.find('#') {
                Some(pos) => &line[..pos],
                None => &line[..],
            }
            .trim();
            if content.is_empty() {
                continue;
            }
            let v: f64 = content.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("'{content}' is not a number"),
            })?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("{content} is not a finite positive number"),
                });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no observations found".into(),
            });
        }
        Sample::new(values)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Sample::from_reader(std::io::BufReader::new(file))
    }

    /// One value per line, written with shortest round-trip formatting.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 20);
        for v in &self.values {
            out.push_str(&format!("{v}\n"));
        }
        out
    }
}

/// The pair `(i, s)` selecting `X_(i,n)` and `X_(is,n)` with `n = i(s+1) - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatioConfig {
    i: usize,
    s: usize,
}

impl RatioConfig {
    pub fn new(i: usize, s: usize) -> Result<Self> {
        if i < 2 {
            return Err(Error::Domain(format!("i must be at least 2, got {i}")));
        }
        if s < 2 {
            return Err(Error::Domain(format!("s must be at least 2, got {s}")));
        }
        let cfg = RatioConfig { i, s };
        let n = cfg
            .i
            .checked_mul(cfg.s + 1)
            .ok_or_else(|| Error::Domain(format!("i(s+1) overflows for i = {i}, s = {s}")))?
            - 1;
        assert!(cfg.lower_index() >= 1 && cfg.upper_index() <= n);
        Ok(cfg)
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Sample size `i(s+1) - 1`.
    pub fn n(&self) -> usize {
        self.i * (self.s + 1) - 1
    }

    pub fn lower_index(&self) -> usize {
        self.i
    }

    pub fn upper_index(&self) -> usize {
        self.i * self.s
    }

    pub(crate) fn check_sample(&self, sample: &Sample) -> Result<()> {
        if sample.len() != self.n() {
            return Err(Error::Shape {
                expected: self.n(),
                got: sample.len(),
                i: self.i,
                s: self.s,
            });
        }
        Ok(())
    }
}
