//! Parametric bootstrap confidence intervals for spectral risk measures.
//!
//! Each trial simulates `n` losses from the assumed model, sorts them, and
//! feeds the `j`-th order statistic to the `j`-th node of the same grid the
//! deterministic estimate would use. The spread of the `b` trial estimates
//! gives a percentile interval.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{rng::derive_seed, sample_into, NormalLossModel};
use crate::error::{Error, Result};
use crate::quadrature::{
    build_grid_with, integrate_ordered, sum::neumaier_sum, EndpointPolicy, Grid, QuadratureRule,
};
use crate::spectra::SpectrumSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    /// Sample size per trial, which is also the grid's node count.
    pub n: usize,
    /// Number of trials.
    pub b: usize,
    pub confidence: f64,
    pub master_seed: u64,
    pub rule: QuadratureRule,
    pub policy: EndpointPolicy,
    pub spectrum: SpectrumSpec,
    pub model: NormalLossModel,
}

impl BootstrapConfig {
    /// Simpson, default endpoint policy, standard normal losses.
    pub fn new(
        spectrum: SpectrumSpec,
        n: usize,
        b: usize,
        confidence: f64,
        master_seed: u64,
    ) -> Self {
        Self {
            n,
            b,
            confidence,
            master_seed,
            rule: QuadratureRule::Simpson,
            policy: EndpointPolicy::default(),
            spectrum,
            model: NormalLossModel::standard(),
        }
    }

    pub fn validate(&self) -> Result<Grid> {
        if self.b < 2 {
            return Err(Error::Config(format!(
                "need at least 2 bootstrap trials, got {}",
                self.b
            )));
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::domain(
                "confidence",
                self.confidence,
                "0 < confidence < 1",
            ));
        }
        build_grid_with(self.rule, self.n, self.policy)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub estimates_mean: f64,
    pub lower: f64,
    pub upper: f64,
    /// `lower / estimates_mean`.
    pub std_lower: f64,
    /// `upper / estimates_mean`.
    pub std_upper: f64,
    pub config: BootstrapConfig,
    /// Trial estimates in trial order.
    #[serde(skip)]
    pub estimates: Vec<f64>,
    pub elapsed: Duration,
}

impl BootstrapResult {
    /// `(upper - lower) / estimates_mean`.
    pub fn standardized_width(&self) -> f64 {
        self.std_upper - self.std_lower
    }
}

fn run_trial(
    config: &BootstrapConfig,
    grid: &Grid,
    trial_index: usize,
    buf: &mut Vec<f64>,
) -> Result<f64> {
    let seed = derive_seed(config.master_seed, trial_index as u64);
    sample_into(&config.model, seed, config.n, buf);
    buf.sort_unstable_by(f64::total_cmp);
    integrate_ordered(&config.spectrum, buf, grid)
}

/// SRM estimate from one simulated sample. Depends only on
/// `(config, trial_index)`.
pub fn bootstrap_trial(config: &BootstrapConfig, trial_index: usize) -> Result<f64> {
    let grid = config.validate()?;
    if trial_index >= config.b {
        return Err(Error::IndexOutOfRange {
            index: trial_index,
            len: config.b,
        });
    }
    run_trial(
        config,
        &grid,
        trial_index,
        &mut Vec::with_capacity(config.n),
    )
}

/// Runs all `b` trials (in parallel) and forms the percentile interval.
///
/// Trials are seeded independently and collected by index, so the result is
/// bit-identical for any thread count.
pub fn bootstrap_ci(config: &BootstrapConfig) -> Result<BootstrapResult> {
    let grid = config.validate()?;
    let start = Instant::now();
    let estimates = (0..config.b)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(config.n),
            |buf, i| run_trial(config, &grid, i, buf),
        )
        .collect::<Result<Vec<f64>>>()?;
    let elapsed = start.elapsed();

    let mean = neumaier_sum(estimates.iter().copied()) / estimates.len() as f64;
    let mut sorted = estimates.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let tail = 0.5 * (1.0 - config.confidence);
    let lower = interpolated_quantile(&sorted, tail);
    let upper = interpolated_quantile(&sorted, 1.0 - tail);
    Ok(BootstrapResult {
        estimates_mean: mean,
        lower,
        upper,
        std_lower: lower / mean,
        std_upper: upper / mean,
        config: *config,
        estimates,
        elapsed,
    })
}

/// Sample quantile at level `q` of ascending `sorted` using the rank
/// `r = (m + 1) q`, clamped to `[1, m]`, with linear interpolation between
/// neighbouring order statistics.
pub fn interpolated_quantile(sorted: &[f64], q: f64) -> f64 {
    let m = sorted.len();
    assert!(m > 0, "quantile of an empty sample");
    let rank = ((m + 1) as f64 * q).clamp(1.0, m as f64);
    let below = rank.floor() as usize;
    let frac = rank - below as f64;
    if below >= m {
        return sorted[m - 1];
    }
    sorted[below - 1] + frac * (sorted[below] - sorted[below - 1])
}
