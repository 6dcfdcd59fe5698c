//! Estimators of the index of regular variation built from ratios of two
//! central order statistics, with exact densities, confidence intervals,
//! quantile extrapolation and a Monte Carlo engine.

pub mod distributions;
pub mod error;
pub mod estimators;
pub mod montecarlo;
pub mod order_stats;
pub mod rng;
pub mod stats;
pub mod theory;

pub use distributions::{DistributionSpec, Family};
pub use error::{Error, Result};
pub use estimators::{EstimateResult, EstimatorKind};
pub use order_stats::{RatioConfig, Sample};
