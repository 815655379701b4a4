use rayon::prelude::*;

use super::grid::Grid;
use super::sum::{neumaier_sum, NeumaierSum};
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

/// Nodes per work unit. Partial sums are formed per chunk and combined in
/// chunk order, so the result does not depend on the thread count.
const CHUNK: usize = 1 << 15;

/// Discretised spectral integral `sum_j w_j phi(p_j) q(p_j)` over `grid`.
///
/// `quantile` is evaluated once per node; a non-finite weight or quantile is
/// reported with the offending node.
pub fn integrate_weighted<S, Q>(spectrum: &S, quantile: Q, grid: &Grid) -> Result<f64>
where
    S: Spectrum + ?Sized,
    Q: Fn(f64) -> f64 + Sync,
{
    reduce(grid, |j, p| {
        let phi = spectrum.weight(p);
        if !phi.is_finite() {
            return Err(non_finite(j, p, "weight", phi));
        }
        let q = quantile(p);
        if !q.is_finite() {
            return Err(non_finite(j, p, "quantile", q));
        }
        Ok(grid.weight(j) * phi * q)
    })
}

/// Same sum with `values[j]` standing in for the quantile at node `j`, e.g.
/// the `j`-th order statistic of a simulated sample.
pub fn integrate_ordered<S>(spectrum: &S, values: &[f64], grid: &Grid) -> Result<f64>
where
    S: Spectrum + ?Sized,
{
    if values.len() != grid.n() {
        return Err(Error::InvalidGrid(format!(
            "{} values for a {}-node grid",
            values.len(),
            grid.n()
        )));
    }
    reduce(grid, |j, p| {
        let phi = spectrum.weight(p);
        if !phi.is_finite() {
            return Err(non_finite(j, p, "weight", phi));
        }
        let v = values[j];
        if !v.is_finite() {
            return Err(non_finite(j, p, "value", v));
        }
        Ok(grid.weight(j) * phi * v)
    })
}

fn non_finite(index: usize, p: f64, what: &'static str, value: f64) -> Error {
    Error::NonFinite {
        index,
        p,
        what,
        value,
    }
}

fn reduce<F>(grid: &Grid, term: F) -> Result<f64>
where
    F: Fn(usize, f64) -> Result<f64> + Sync,
{
    let n = grid.n();
    let chunk_sum = |c: usize| -> Result<f64> {
        let mut acc = NeumaierSum::new();
        for j in c * CHUNK..((c + 1) * CHUNK).min(n) {
            acc.add(term(j, grid.node(j))?);
        }
        Ok(acc.value())
    };
    let chunks = n.div_ceil(CHUNK);
    if chunks == 1 {
        return chunk_sum(0);
    }
    let partials = (0..chunks)
        .into_par_iter()
        .map(chunk_sum)
        .collect::<Result<Vec<f64>>>()?;
    Ok(neumaier_sum(partials))
}
