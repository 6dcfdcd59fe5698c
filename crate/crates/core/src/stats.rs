//! Small numerical helpers shared by the Monte Carlo engine and tests.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Mean and unbiased variance (two compensated passes). The variance of a
/// single value is reported as 0.
pub fn mean_variance(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().copied().collect::<CompensatedSum>().value() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss = values
        .iter()
        .map(|x| (x - mean) * (x - mean))
        .collect::<CompensatedSum>()
        .value();
    (mean, ss / (n - 1.0))
}

/// Standard normal quantile.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("normal quantile needs p in (0, 1), got {p}")));
    }
    Ok(standard_normal().inverse_cdf(p))
}

pub fn normal_cdf(x: f64) -> f64 {
    standard_normal().cdf(x)
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// Two-sided quantile `z_{1 - (1-level)/2}` for a confidence level in (0, 1).
pub fn two_sided_z(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!("confidence level must lie in (0, 1), got {level}")));
    }
    normal_quantile(0.5 + 0.5 * level)
}

/// Kolmogorov distance `sup |F_n - F|` of a sorted sample against a continuous c.d.f.
pub fn ks_distance_sorted(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            let f = cdf(x);
            (f - k as f64 / n).abs().max((k as f64 + 1.0) / n - f)
        })
        .fold(0.0, f64::max)
}

/// Kolmogorov distance against a c.d.f. known only on a grid.
///
/// Compares the empirical c.d.f. with the tabulated values at every grid
/// point, from both sides. The true distance exceeds the result by at most
/// the largest increment of `cdf_values` between neighbouring grid points.
pub fn ks_distance_on_grid(sorted: &[f64], grid: &[f64], cdf_values: &[f64]) -> f64 {
    assert_eq!(grid.len(), cdf_values.len());
    let n = sorted.len() as f64;
    let mut d = 0.0f64;
    for (&g, &f) in grid.iter().zip(cdf_values) {
        let below = sorted.partition_point(|&x| x < g) as f64 / n;
        let at_or_below = sorted.partition_point(|&x| x <= g) as f64 / n;
        d = d.max((at_or_below - f).abs()).max((below - f).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = xs.iter().sum();
        let comp: CompensatedSum = xs.iter().copied().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(comp.value(), 2.0);
    }

    #[test]
    fn mean_variance_small() {
        let (m, v) = mean_variance(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((v - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(mean_variance(&[3.0]), (3.0, 0.0));
    }

    #[test]
    fn z_values() {
        assert!((two_sided_z(0.95).unwrap() - 1.959963984540054).abs() < 1e-9);
        assert!((two_sided_z(0.5).unwrap() - 0.674489750196082).abs() < 1e-9);
        assert!(two_sided_z(1.0).is_err());
        assert!(two_sided_z(0.0).is_err());
    }

    #[test]
    fn ks_distances() {
        let u: Vec<f64> = (0..100).map(|k| (k as f64 + 0.5) / 100.0).collect();
        let d = ks_distance_sorted(&u, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-12);
        let grid: Vec<f64> = (0..=1000).map(|k| k as f64 / 1000.0).collect();
        let d_grid = ks_distance_on_grid(&u, &grid, &grid);
        assert!(d_grid <= d + 1e-12 && d_grid >= d - 1e-3);
    }
}
