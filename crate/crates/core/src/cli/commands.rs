use std::time::Duration;

use super::table::{Cell, Table};
use crate::bootstrap::{bootstrap_ci, BootstrapConfig};
use crate::distributions::{LossModel, NormalLossModel};
use crate::error::{Error, Result};
use crate::quadrature::{build_grid_with, EndpointPolicy, QuadratureRule};
use crate::riskmeasures::{es, reference_srm, srm_on_grid, EsMode};
use crate::spectra::{validate_spectrum, Spectrum, SpectrumSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct ComputeConfig {
    pub model: NormalLossModel,
    /// One output row per spectrum, in order.
    pub spectra: Vec<SpectrumSpec>,
    pub rule: QuadratureRule,
    pub n: usize,
    pub policy: EndpointPolicy,
    /// Only consulted for ES spectra.
    pub es_mode: EsMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeConfig {
    pub model: NormalLossModel,
    pub spectrum: SpectrumSpec,
    pub rules: Vec<QuadratureRule>,
    pub n_list: Vec<usize>,
    pub policy: EndpointPolicy,
    /// Each timing is the fastest of this many integrations.
    pub repeat: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateConfig {
    pub spectrum: SpectrumSpec,
    pub grid_size: usize,
    pub tolerance: f64,
}

pub const COMPUTE_HEADERS: [&str; 11] = [
    "spectrum",
    "a",
    "alpha",
    "srm_value",
    "rule",
    "n",
    "policy",
    "mu",
    "sigma",
    "mode",
    "elapsed_seconds",
];

pub const CONVERGE_HEADERS: [&str; 11] = [
    "spectrum",
    "rule",
    "n",
    "policy",
    "mu",
    "sigma",
    "estimate",
    "reference",
    "pct_error",
    "repeat",
    "elapsed_seconds",
];

pub const CI_HEADERS: [&str; 15] = [
    "spectrum",
    "rule",
    "n",
    "b",
    "confidence",
    "seed",
    "policy",
    "mu",
    "sigma",
    "estimates_mean",
    "lower",
    "upper",
    "std_lower",
    "std_upper",
    "standardized_width",
];

pub const VALIDATE_HEADERS: [&str; 8] = [
    "spectrum",
    "grid_size",
    "tolerance",
    "positivity_ok",
    "normalisation_value",
    "normalisation_ok",
    "increasing_ok",
    "all_ok",
];

pub const WEIGHTS_HEADERS: [&str; 3] = ["spectrum", "p", "weight"];

fn spectrum_params(s: &SpectrumSpec) -> (Cell, Cell) {
    match s {
        SpectrumSpec::Exponential(e) => (e.a().into(), Cell::Empty),
        SpectrumSpec::ExpectedShortfall(e) => (Cell::Empty, e.alpha().into()),
    }
}

/// One row per spectrum: the risk measure and the integration time.
pub fn cmd_compute(config: &ComputeConfig) -> Result<Table> {
    let model = LossModel::from(config.model);
    let grid = build_grid_with(config.rule, config.n, config.policy)?;
    let mut table = Table::new(&COMPUTE_HEADERS);
    for spectrum in &config.spectra {
        let (a, alpha) = spectrum_params(spectrum);
        let closed = matches!(
            (spectrum, config.es_mode),
            (SpectrumSpec::ExpectedShortfall(_), EsMode::ClosedForm)
        );
        let (value, rule, n, policy, mode, elapsed) = if closed {
            let alpha = spectrum.parameter();
            let start = std::time::Instant::now();
            let value = es(&model, alpha, EsMode::ClosedForm, 0)?;
            (
                value,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                "closed-form",
                start.elapsed(),
            )
        } else {
            let est = srm_on_grid(spectrum, &model, &grid)?;
            (
                est.value,
                est.rule.name().into(),
                est.n.into(),
                est.policy.name().into(),
                "quadrature",
                est.elapsed,
            )
        };
        table.push(vec![
            spectrum.kind().into(),
            a,
            alpha,
            value.into(),
            rule,
            n,
            policy,
            config.model.mu().into(),
            config.model.sigma().into(),
            mode.into(),
            elapsed.as_secs_f64().into(),
        ]);
    }
    Ok(table)
}

/// Exact value the convergence study measures against.
fn reference_value(spectrum: &SpectrumSpec, model: &LossModel) -> Result<f64> {
    match spectrum {
        SpectrumSpec::Exponential(e) => reference_srm(e.a(), model),
        SpectrumSpec::ExpectedShortfall(e) => es(model, e.alpha(), EsMode::ClosedForm, 0),
    }
}

/// One row per `(rule, n)`: estimate, percentage error against the reference
/// value and integration time.
pub fn cmd_converge(config: &ConvergeConfig) -> Result<Table> {
    if config.repeat == 0 {
        return Err(Error::Config("repeat must be at least 1".into()));
    }
    let model = LossModel::from(config.model);
    let reference = reference_value(&config.spectrum, &model)?;
    let mut table = Table::new(&CONVERGE_HEADERS);
    for &rule in &config.rules {
        for &n in &config.n_list {
            let grid = build_grid_with(rule, n, config.policy)?;
            let mut best = Duration::MAX;
            let mut estimate = f64::NAN;
            for _ in 0..config.repeat {
                let est = srm_on_grid(&config.spectrum, &model, &grid)?;
                best = best.min(est.elapsed);
                estimate = est.value;
            }
            let pct_error = 100.0 * (estimate - reference) / reference;
            table.push(vec![
                config.spectrum.to_string().into(),
                rule.name().into(),
                n.into(),
                config.policy.name().into(),
                config.model.mu().into(),
                config.model.sigma().into(),
                estimate.into(),
                reference.into(),
                pct_error.into(),
                config.repeat.into(),
                best.as_secs_f64().into(),
            ]);
        }
    }
    Ok(table)
}

/// Single-row bootstrap interval plus the time the trials took. The timing is
/// kept out of the table so the table is reproducible byte for byte.
pub fn cmd_ci(config: &BootstrapConfig) -> Result<(Table, Duration)> {
    let result = bootstrap_ci(config)?;
    let mut table = Table::new(&CI_HEADERS);
    table.push(vec![
        config.spectrum.to_string().into(),
        config.rule.name().into(),
        config.n.into(),
        config.b.into(),
        config.confidence.into(),
        config.master_seed.into(),
        config.policy.name().into(),
        config.model.mu().into(),
        config.model.sigma().into(),
        result.estimates_mean.into(),
        result.lower.into(),
        result.upper.into(),
        result.std_lower.into(),
        result.std_upper.into(),
        result.standardized_width().into(),
    ]);
    Ok((table, result.elapsed))
}

/// Admissibility report; the flag is true when every check passed.
pub fn cmd_validate(config: &ValidateConfig) -> Result<(Table, bool)> {
    let report = validate_spectrum(&config.spectrum, config.grid_size, config.tolerance)?;
    let mut table = Table::new(&VALIDATE_HEADERS);
    table.push(vec![
        config.spectrum.to_string().into(),
        report.grid_size.into(),
        report.tolerance.into(),
        report.positivity_ok.into(),
        report.normalisation_value.into(),
        report.normalisation_ok().into(),
        report.increasing_ok.into(),
        report.all_ok().into(),
    ]);
    Ok((table, report.all_ok()))
}

/// `phi(p)` on `points` evenly spaced values of `p` in `[0, 1]`, per spectrum.
pub fn cmd_weights(spectra: &[SpectrumSpec], points: usize) -> Result<Table> {
    if points < 2 {
        return Err(Error::Config("need at least 2 points".into()));
    }
    let mut table = Table::new(&WEIGHTS_HEADERS);
    for spectrum in spectra {
        for j in 0..points {
            let p = j as f64 / (points - 1) as f64;
            table.push(vec![
                spectrum.to_string().into(),
                p.into(),
                spectrum.weight(p).into(),
            ]);
        }
    }
    Ok(table)
}
