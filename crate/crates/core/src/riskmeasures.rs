//! Quantile-based risk measures: spectral risk measures over any admissible
//! spectrum, VaR, Expected Shortfall and lower partial moments.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::distributions::{normal_pdf, normal_quantile, LossModel};
use crate::error::{Error, Result};
use crate::quadrature::{
    build_grid, integrate_adaptive, integrate_weighted, sum::NeumaierSum, EndpointPolicy, Grid,
    QuadratureRule,
};
use crate::spectra::{validate_spectrum, EsSpectrum, ExponentialSpectrum, Spectrum, SpectrumSpec};

/// One spectral risk measure value together with how it was computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrmEstimate {
    pub value: f64,
    /// `None` for ad hoc spectra.
    pub spectrum: Option<SpectrumSpec>,
    pub rule: QuadratureRule,
    pub n: usize,
    pub policy: EndpointPolicy,
    /// Wall-clock time of the integration alone.
    pub elapsed: Duration,
}

// Built-in spectra are admissible by construction; ad hoc ones get a coarse check.
fn check_admissible<S: Spectrum + ?Sized>(spectrum: &S) -> Result<()> {
    if spectrum.spec().is_some() {
        return Ok(());
    }
    let report = validate_spectrum(spectrum, 1001, 1e-2)?;
    if report.all_ok() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "spectrum is not admissible: {report:?}"
        )))
    }
}

/// Spectral risk measure `int_0^1 phi(p) q_p dp` of `model` under `rule`
/// with `n` nodes.
pub fn srm<S: Spectrum + ?Sized>(
    spectrum: &S,
    model: &LossModel,
    rule: QuadratureRule,
    n: usize,
) -> Result<SrmEstimate> {
    srm_on_grid(spectrum, model, &build_grid(rule, n)?)
}

/// [`srm`] on a prebuilt grid, e.g. one with a non-default endpoint policy.
pub fn srm_on_grid<S: Spectrum + ?Sized>(
    spectrum: &S,
    model: &LossModel,
    grid: &Grid,
) -> Result<SrmEstimate> {
    check_admissible(spectrum)?;
    let start = Instant::now();
    let value = integrate_weighted(spectrum, |p| model.quantile(p).unwrap_or(f64::NAN), grid)?;
    let elapsed = start.elapsed();
    Ok(SrmEstimate {
        value,
        spectrum: spectrum.spec(),
        rule: grid.rule(),
        n: grid.n(),
        policy: grid.policy(),
        elapsed,
    })
}

/// Probability mass cut from each end of the unit interval by
/// [`reference_srm`].
pub const REFERENCE_EPSILON: f64 = 1e-14;
const REFERENCE_TOLERANCE: f64 = 1e-9;
const TRUNCATION_TOLERANCE: f64 = 1e-10;

/// High-accuracy exponential SRM used as the yardstick for quadrature error.
///
/// For a normal model the integrand is integrated adaptively over
/// `[eps, 1 - eps]` with `eps = 1e-14` to an absolute error estimate of 1e-9.
/// The truncation is checked by integrating the slices `[eps/2, eps]` and
/// `[1 - eps, 1 - eps/2]`, which must contribute less than 1e-10 together.
/// For an empirical model the step quantile function is integrated exactly.
pub fn reference_srm(a: f64, model: &LossModel) -> Result<f64> {
    let spectrum = ExponentialSpectrum::new(a)?;
    match model {
        LossModel::Empirical(emp) => {
            // phi integrates in closed form over each step of the quantile function
            let losses = emp.sorted_losses();
            let n = losses.len() as f64;
            let scale = spectrum.lambda() / a;
            let mut acc = NeumaierSum::new();
            for (i, &x) in losses.iter().enumerate() {
                let lo = i as f64 / n;
                let hi = (i + 1) as f64 / n;
                let mass = scale * ((-a * (1.0 - hi)).exp() - (-a * (1.0 - lo)).exp());
                acc.add(mass * x);
            }
            Ok(acc.value())
        }
        LossModel::Normal(normal) => {
            let integrand = |p: f64| spectrum.weight(p) * normal.quantile(p).unwrap_or(f64::NAN);
            let eps = REFERENCE_EPSILON;
            let breaks = [
                eps,
                1e-9,
                1e-4,
                0.5,
                1.0 - 1e-3,
                1.0 - 1e-6,
                1.0 - 1e-9,
                1.0 - 1e-12,
                1.0 - eps,
            ];
            let (value, _) = integrate_adaptive(integrand, &breaks, REFERENCE_TOLERANCE, 20_000)?;
            let (low_slice, _) = integrate_adaptive(integrand, &[0.5 * eps, eps], 1e-13, 200)?;
            let (high_slice, _) =
                integrate_adaptive(integrand, &[1.0 - eps, 1.0 - 0.5 * eps], 1e-13, 200)?;
            let truncation = (low_slice + high_slice).abs();
            if truncation >= TRUNCATION_TOLERANCE {
                return Err(Error::NoConvergence(format!(
                    "tail slices beyond eps = {eps:e} contribute {truncation:.3e}"
                )));
            }
            Ok(value)
        }
    }
}

fn check_confidence(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "0 < alpha < 1"))
    }
}

/// Value-at-Risk: the `alpha` loss quantile.
pub fn var(model: &LossModel, alpha: f64) -> Result<f64> {
    check_confidence(alpha)?;
    model.quantile(alpha)
}

/// How [`es`] evaluates the tail average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EsMode {
    /// `mu + sigma pdf(z_alpha) / (1 - alpha)`; normal models only.
    ClosedForm,
    /// Simpson integration of the ES spectrum over the whole unit interval.
    Quadrature,
}

impl std::str::FromStr for EsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "closed-form" => Ok(EsMode::ClosedForm),
            "quadrature" => Ok(EsMode::Quadrature),
            other => Err(Error::Config(format!("unknown ES mode `{other}`"))),
        }
    }
}

/// Expected Shortfall: the average loss beyond the `alpha` quantile.
/// `n` is the Simpson node count and is ignored in closed form.
pub fn es(model: &LossModel, alpha: f64, mode: EsMode, n: usize) -> Result<f64> {
    check_confidence(alpha)?;
    match mode {
        EsMode::ClosedForm => match model {
            LossModel::Normal(m) => {
                let z = normal_quantile(alpha)?;
                Ok(m.mu() + m.sigma() * normal_pdf(z) / (1.0 - alpha))
            }
            LossModel::Empirical(_) => Err(Error::Unsupported(
                "closed-form ES is only available for normal models".into(),
            )),
        },
        EsMode::Quadrature => {
            let spectrum = EsSpectrum::new(alpha)?;
            Ok(srm(&spectrum, model, QuadratureRule::Simpson, n)?.value)
        }
    }
}

/// Returns over which a lower partial moment is taken.
#[derive(Debug, Clone, Copy)]
pub enum LpmInput<'a> {
    /// Monte Carlo over `draws` variates from `model`, seeded by `seed`.
    Model {
        model: &'a LossModel,
        draws: usize,
        seed: u64,
    },
    /// Exact average over the given returns.
    Sample(&'a [f64]),
}

/// Lower partial moment `E[max(0, target - r)^k]` of order `k >= 0`.
///
/// Uses the convention `0^0 = 0`, so `k = 0` gives the shortfall
/// probability `P(r < target)`.
pub fn lpm(input: LpmInput<'_>, k: f64, target: f64) -> Result<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain("k", k, "0 <= k < inf"));
    }
    let term = |r: f64| {
        let shortfall = target - r;
        if shortfall <= 0.0 {
            0.0
        } else if k == 0.0 {
            1.0
        } else {
            shortfall.powf(k)
        }
    };
    let (sum, count) = match input {
        LpmInput::Sample(rs) => {
            if rs.is_empty() {
                return Err(Error::EmptySample);
            }
            (
                rs.iter().map(|&r| term(r)).collect::<NeumaierSum>(),
                rs.len(),
            )
        }
        LpmInput::Model { model, draws, seed } => {
            let rs = model.sample(seed, draws)?;
            (rs.iter().map(|&r| term(r)).collect::<NeumaierSum>(), draws)
        }
    };
    Ok(sum.value() / count as f64)
}
