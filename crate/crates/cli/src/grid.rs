use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

const MAX_POINTS: usize = 10_000_000;

/// Evenly spaced grid written as `min:max:step`; `max` is included when it
/// falls on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn len(&self) -> usize {
        // Tolerate rounding in (max - min) / step so 0:5:0.01 yields 501 points.
        ((self.max - self.min) / self.step * (1.0 + 1e-12)).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.min + k as f64 * self.step).collect()
    }
}

impl FromStr for GridSpec {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Input(format!("invalid grid '{text}': {why}"));
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected min:max:step"));
        }
        let mut v = [0.0f64; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.trim().parse().map_err(|_| bad("fields must be numbers"))?;
            if !slot.is_finite() {
                return Err(bad("fields must be finite"));
            }
        }
        let [min, max, step] = v;
        if step <= 0.0 {
            return Err(bad("step must be positive"));
        }
        if max < min {
            return Err(bad("max must not be below min"));
        }
        let grid = GridSpec { min, max, step };
        if (max - min) / step >= MAX_POINTS as f64 {
            return Err(bad("too many points"));
        }
        Ok(grid)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}
