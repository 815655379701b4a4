use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Loss distribution given by an ordered sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalLossModel {
    sorted_losses: Vec<f64>,
}

impl EmpiricalLossModel {
    /// Sorts `losses` ascending. NaNs are rejected.
    pub fn from_unsorted(mut losses: Vec<f64>) -> Result<Self> {
        if losses.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(bad) = losses.iter().find(|x| x.is_nan()) {
            return Err(Error::domain("loss", *bad, "not NaN"));
        }
        losses.sort_unstable_by(f64::total_cmp);
        Ok(Self {
            sorted_losses: losses,
        })
    }

    pub fn from_sorted(sorted_losses: Vec<f64>) -> Result<Self> {
        if sorted_losses.is_empty() {
            return Err(Error::EmptySample);
        }
        if sorted_losses.windows(2).any(|w| !w[0].le(&w[1])) {
            return Err(Error::Config("losses are not sorted ascending".into()));
        }
        Ok(Self { sorted_losses })
    }

    pub fn len(&self) -> usize {
        self.sorted_losses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted_losses.is_empty()
    }

    pub fn sorted_losses(&self) -> &[f64] {
        &self.sorted_losses
    }

    /// The `grid_index`-th order statistic (zero based).
    pub fn empirical_quantile(&self, grid_index: usize) -> Result<f64> {
        self.sorted_losses
            .get(grid_index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index: grid_index,
                len: self.sorted_losses.len(),
            })
    }

    /// Left-continuous inverse of the empirical CDF: the smallest loss whose
    /// cumulative frequency reaches `p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("p", p, "0 < p < 1"));
        }
        let n = self.sorted_losses.len();
        let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
        Ok(self.sorted_losses[rank - 1])
    }

    /// Fraction of losses `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        let count = self.sorted_losses.partition_point(|&l| l <= x);
        count as f64 / self.sorted_losses.len() as f64
    }

    pub fn mean(&self) -> f64 {
        crate::quadrature::sum::neumaier_sum(self.sorted_losses.iter().copied())
            / self.sorted_losses.len() as f64
    }
}
