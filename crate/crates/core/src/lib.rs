//! Exponential spectral risk measures, VaR and Expected Shortfall for loss
//! distributions.
//!
//! A spectral risk measure weights the loss quantiles `q_p` by a
//! risk-aversion function `phi(p)`:
//!
//! ```text
//! M_phi = int_0^1 phi(p) q_p dp
//! ```
//!
//! The crate provides the spectra ([`spectra`]), the loss models
//! ([`distributions`]), four quadrature rules for the integral
//! ([`quadrature`]), the risk measures themselves ([`riskmeasures`]) and
//! parametric bootstrap confidence intervals ([`bootstrap`]). The [`cli`]
//! module backs the `spectral-risk` binary.
//!
//! ```
//! use spectral_risk::{srm, ExponentialSpectrum, LossModel, QuadratureRule};
//!
//! let spectrum = ExponentialSpectrum::new(5.0)?;
//! let est = srm(&spectrum, &LossModel::standard_normal(), QuadratureRule::Simpson, 10_001)?;
//! assert!((est.value - 1.0816).abs() < 5e-3);
//! # Ok::<(), spectral_risk::Error>(())
//! ```

pub mod bootstrap;
pub mod cli;
pub mod distributions;
mod error;
pub mod quadrature;
pub mod riskmeasures;
pub mod spectra;

pub use bootstrap::{bootstrap_ci, bootstrap_trial, BootstrapConfig, BootstrapResult};
pub use distributions::{EmpiricalLossModel, LossModel, NormalLossModel};
pub use error::{Error, Result};
pub use quadrature::{
    build_grid, build_grid_with, integrate_weighted, EndpointPolicy, Grid, QuadratureRule,
};
pub use riskmeasures::{
    es, lpm, reference_srm, srm, srm_on_grid, var, EsMode, LpmInput, SrmEstimate,
};
pub use spectra::{
    validate_spectrum, EsSpectrum, ExponentialSpectrum, Spectrum, SpectrumReport, SpectrumSpec,
};
