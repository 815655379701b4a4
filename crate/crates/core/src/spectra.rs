//! Risk-aversion spectra `phi(p)`: weighting functions over cumulative
//! probability that turn a quantile function into a spectral risk measure.
//!
//! An admissible spectrum is non-negative, integrates to one over `[0, 1]` and
//! is non-decreasing, so worse losses never get less weight than better ones.
//! [`validate_spectrum`] checks all three numerically.
//!
//! The exponential spectrum comes from exponential utility `U(x) = -exp(-a x)`
//! with constant absolute risk aversion `a`:
//!
//! ```text
//! phi(p) = lambda * exp(-a (1 - p)),   lambda = a / (1 - exp(-a))
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{newton_cotes_weight, sum::neumaier_sum, QuadratureRule};

/// A weighting function over cumulative probability.
pub trait Spectrum: Sync {
    /// `phi(p)` for `p` in `[0, 1]`. Implementations may assume the argument
    /// is in range.
    fn weight(&self, p: f64) -> f64;

    /// Parameters identifying a built-in spectrum, `None` for ad hoc ones.
    fn spec(&self) -> Option<SpectrumSpec> {
        None
    }
}

impl<F> Spectrum for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn weight(&self, p: f64) -> f64 {
        self(p)
    }
}

fn check_ara(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("a", a, "0 < a < inf"))
    }
}

fn check_unit(name: &'static str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(name, p, "0 <= p <= 1"))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "0 < alpha < 1"))
    }
}

/// `lambda = a / (1 - exp(-a))`, the constant that normalises the exponential
/// spectrum. Tends to 1 as `a -> 0+`.
pub fn normalization_constant(a: f64) -> Result<f64> {
    check_ara(a)?;
    Ok(a / -(-a).exp_m1())
}

/// Exponential risk-aversion weight at `p`.
pub fn exp_weight(p: f64, a: f64) -> Result<f64> {
    check_unit("p", p)?;
    Ok(ExponentialSpectrum::new(a)?.weight(p))
}

/// Expected Shortfall weight: zero below `alpha`, `1 / (1 - alpha)` from
/// `alpha` up (the boundary belongs to the tail).
pub fn es_weight(p: f64, alpha: f64) -> Result<f64> {
    check_unit("p", p)?;
    Ok(EsSpectrum::new(alpha)?.weight(p))
}

/// Exponential spectrum with absolute risk aversion `a > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentialSpectrum {
    a: f64,
    ln_lambda: f64,
}

impl ExponentialSpectrum {
    pub fn new(a: f64) -> Result<Self> {
        let lambda = normalization_constant(a)?;
        Ok(Self {
            a,
            ln_lambda: lambda.ln(),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn lambda(&self) -> f64 {
        self.ln_lambda.exp()
    }
}

impl Spectrum for ExponentialSpectrum {
    // log space keeps lambda * exp(-a) representable for very large a
    #[inline]
    fn weight(&self, p: f64) -> f64 {
        (self.ln_lambda - self.a * (1.0 - p)).exp()
    }

    fn spec(&self) -> Option<SpectrumSpec> {
        Some(SpectrumSpec::Exponential(*self))
    }
}

/// Expected Shortfall spectrum at confidence level `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsSpectrum {
    alpha: f64,
    tail_weight: f64,
}

impl EsSpectrum {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            tail_weight: 1.0 / (1.0 - alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Spectrum for EsSpectrum {
    #[inline]
    fn weight(&self, p: f64) -> f64 {
        if p >= self.alpha {
            self.tail_weight
        } else {
            0.0
        }
    }

    fn spec(&self) -> Option<SpectrumSpec> {
        Some(SpectrumSpec::ExpectedShortfall(*self))
    }
}

/// One of the built-in spectra. Parses from and prints as `exp:<a>` or
/// `es:<alpha>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumSpec {
    Exponential(ExponentialSpectrum),
    ExpectedShortfall(EsSpectrum),
}

impl SpectrumSpec {
    pub fn exponential(a: f64) -> Result<Self> {
        ExponentialSpectrum::new(a).map(SpectrumSpec::Exponential)
    }

    pub fn expected_shortfall(alpha: f64) -> Result<Self> {
        EsSpectrum::new(alpha).map(SpectrumSpec::ExpectedShortfall)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpectrumSpec::Exponential(_) => "exp",
            SpectrumSpec::ExpectedShortfall(_) => "es",
        }
    }

    /// `a` or `alpha`.
    pub fn parameter(&self) -> f64 {
        match self {
            SpectrumSpec::Exponential(s) => s.a(),
            SpectrumSpec::ExpectedShortfall(s) => s.alpha(),
        }
    }
}

impl Spectrum for SpectrumSpec {
    #[inline]
    fn weight(&self, p: f64) -> f64 {
        match self {
            SpectrumSpec::Exponential(s) => s.weight(p),
            SpectrumSpec::ExpectedShortfall(s) => s.weight(p),
        }
    }

    fn spec(&self) -> Option<SpectrumSpec> {
        Some(*self)
    }
}

impl fmt::Display for SpectrumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self.parameter())
    }
}

impl FromStr for SpectrumSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s.split_once(':').ok_or_else(|| {
            Error::Config(format!(
                "spectrum `{s}` must look like exp:<a> or es:<alpha>"
            ))
        })?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("spectrum parameter `{value}` is not a number")))?;
        match kind.trim() {
            "exp" => Self::exponential(value),
            "es" => Self::expected_shortfall(value),
            other => Err(Error::Config(format!("unknown spectrum kind `{other}`"))),
        }
    }
}

impl Serialize for SpectrumSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpectrumSpec {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Outcome of the three admissibility checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub positivity_ok: bool,
    /// Simpson estimate of the integral of `phi` over `[0, 1]`, recorded even
    /// when the check fails.
    pub normalisation_value: f64,
    pub increasing_ok: bool,
    pub tolerance: f64,
    pub grid_size: usize,
}

impl SpectrumReport {
    pub fn normalisation_ok(&self) -> bool {
        (self.normalisation_value - 1.0).abs() <= self.tolerance
    }

    pub fn all_ok(&self) -> bool {
        self.positivity_ok && self.normalisation_ok() && self.increasing_ok
    }
}

/// Checks positivity, normalisation and monotonicity of `spectrum` on a
/// uniform closed grid of `grid_size` points (odd, at least 3). Failed checks
/// are reported in the result, not as errors.
pub fn validate_spectrum<S: Spectrum + ?Sized>(
    spectrum: &S,
    grid_size: usize,
    tolerance: f64,
) -> Result<SpectrumReport> {
    if grid_size < 3 || grid_size.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "validation grid needs an odd size of at least 3, got {grid_size}"
        )));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::domain("tolerance", tolerance, "tolerance >= 0"));
    }
    let step = 1.0 / (grid_size - 1) as f64;
    let weights: Vec<f64> = (0..grid_size)
        .map(|j| spectrum.weight(j as f64 * step))
        .collect();

    let positivity_ok = weights.iter().all(|&w| w >= 0.0);
    let increasing_ok = weights.windows(2).all(|w| w[1] >= w[0]);
    let normalisation_value = neumaier_sum(
        weights
            .iter()
            .enumerate()
            .map(|(j, &w)| newton_cotes_weight(QuadratureRule::Simpson, j, grid_size) * step * w),
    );
    Ok(SpectrumReport {
        positivity_ok,
        normalisation_value,
        increasing_ok,
        tolerance,
        grid_size,
    })
}

/// Exponential utility `U(x) = -exp(-a x)`.
pub fn utility(x: f64, a: f64) -> Result<f64> {
    check_ara(a)?;
    Ok(-(-a * x).exp())
}

/// Arrow-Pratt absolute risk aversion `-U''/U'`, constant for exponential
/// utility.
pub fn absolute_risk_aversion(a: f64) -> Result<f64> {
    check_ara(a)?;
    Ok(a)
}

/// Relative risk aversion `-x U''/U' = x a`.
pub fn relative_risk_aversion(x: f64, a: f64) -> Result<f64> {
    check_ara(a)?;
    Ok(x * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn lambda_values() {
        assert_abs_diff_eq!(
            normalization_constant(5.0).unwrap(),
            5.033_918_274_531_52,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            normalization_constant(1.0).unwrap(),
            1.581_976_706_869_33,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            normalization_constant(1e-8).unwrap(),
            1.000_000_005,
            epsilon = 1e-9
        );
        assert!(normalization_constant(0.0).is_err());
        assert!(normalization_constant(-1.0).is_err());
    }

    #[test]
    fn exponential_weights() {
        assert_abs_diff_eq!(
            exp_weight(1.0, 5.0).unwrap(),
            5.033_918_274_531_52,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            exp_weight(0.0, 5.0).unwrap(),
            0.033_918_274_531_521_2,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(exp_weight(0.5, 1e-9).unwrap(), 1.0, epsilon = 1e-8);
        assert_eq!(
            exp_weight(1.0, 5.0).unwrap(),
            ExponentialSpectrum::new(5.0).unwrap().lambda()
        );
        assert!(exp_weight(1.1, 5.0).is_err());
        assert!(exp_weight(0.5, 0.0).is_err());
    }

    #[test]
    fn large_aversion_does_not_overflow() {
        let s = ExponentialSpectrum::new(1000.0).unwrap();
        assert_abs_diff_eq!(s.weight(1.0), 1000.0, epsilon = 1e-9);
        assert_eq!(s.weight(0.0), 0.0);
        let report =
            validate_spectrum(&ExponentialSpectrum::new(100.0).unwrap(), 100_001, 1e-8).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn expected_shortfall_weights() {
        assert_eq!(es_weight(0.9, 0.95).unwrap(), 0.0);
        assert_abs_diff_eq!(es_weight(0.99, 0.95).unwrap(), 20.0, epsilon = 1e-12);
        assert_abs_diff_eq!(es_weight(0.95, 0.95).unwrap(), 20.0, epsilon = 1e-12);
        assert!(es_weight(0.5, 1.0).is_err());
        assert!(es_weight(0.5, 0.0).is_err());
    }

    #[test]
    fn validation_examples() {
        let exp = validate_spectrum(&ExponentialSpectrum::new(5.0).unwrap(), 10_001, 1e-8).unwrap();
        assert!(exp.all_ok());
        assert!((exp.normalisation_value - 1.0).abs() < 1e-10);

        let es = validate_spectrum(&EsSpectrum::new(0.95).unwrap(), 10_001, 1e-3).unwrap();
        assert!(
            es.positivity_ok && es.increasing_ok && es.normalisation_ok(),
            "{es:?}"
        );

        let linear = validate_spectrum(&|p: f64| 2.0 * p, 10_001, 1e-12).unwrap();
        assert!(linear.all_ok());
    }

    #[test]
    fn validation_reports_failures() {
        let decreasing = validate_spectrum(&|p: f64| 2.0 - 2.0 * p, 101, 1e-9).unwrap();
        assert!(decreasing.positivity_ok);
        assert!(decreasing.normalisation_ok());
        assert!(!decreasing.increasing_ok);

        let negative = validate_spectrum(&|p: f64| 4.0 * p - 1.0, 101, 1e-9).unwrap();
        assert!(!negative.positivity_ok);

        let unnormalised = validate_spectrum(&|_p: f64| 2.0, 101, 1e-9).unwrap();
        assert!(!unnormalised.normalisation_ok());
        assert_abs_diff_eq!(unnormalised.normalisation_value, 2.0, epsilon = 1e-12);

        assert!(validate_spectrum(&|_p: f64| 1.0, 100, 1e-9).is_err());
        assert!(validate_spectrum(&|_p: f64| 1.0, 1, 1e-9).is_err());
    }

    #[test]
    fn steeper_spectrum_crosses_above() {
        // Higher aversion puts more weight on the worst outcomes only.
        let lo = ExponentialSpectrum::new(5.0).unwrap();
        let hi = ExponentialSpectrum::new(25.0).unwrap();
        assert!(hi.weight(0.99) > lo.weight(0.99));
        assert!(hi.weight(0.5) < lo.weight(0.5));
    }

    #[test]
    fn preference_quantities() {
        assert_eq!(utility(0.0, 3.0).unwrap(), -1.0);
        assert_abs_diff_eq!(
            utility(1.0, 1.0).unwrap(),
            -0.367_879_441_171_442_3,
            epsilon = 1e-15
        );
        assert!(utility(1e6, 1.0).unwrap() <= 0.0);
        assert!(utility(1e6, 1.0).unwrap() > -1e-300);
        assert_eq!(absolute_risk_aversion(5.0).unwrap(), 5.0);
        assert_eq!(relative_risk_aversion(2.0, 5.0).unwrap(), 10.0);
        assert_eq!(relative_risk_aversion(0.0, 5.0).unwrap(), 0.0);
        assert!(utility(1.0, 0.0).is_err());
        assert!(absolute_risk_aversion(-2.0).is_err());
        assert!(relative_risk_aversion(1.0, 0.0).is_err());
    }

    #[test]
    fn spec_strings() {
        let s: SpectrumSpec = "exp:5".parse().unwrap();
        assert_eq!(s.to_string(), "exp:5");
        assert_eq!(s.parameter(), 5.0);
        let e: SpectrumSpec = "es:0.95".parse().unwrap();
        assert_eq!(e.kind(), "es");
        assert!("exp:0".parse::<SpectrumSpec>().is_err());
        assert!("es:1".parse::<SpectrumSpec>().is_err());
        assert!("power:2".parse::<SpectrumSpec>().is_err());
        assert!("exp".parse::<SpectrumSpec>().is_err());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"exp:5\"");
        assert_eq!(serde_json::from_str::<SpectrumSpec>(&json).unwrap(), s);
    }

    proptest! {
        #[test]
        fn weight_matches_closed_form(a in 1e-6f64..200.0, p in 0.0f64..=1.0) {
            let w = exp_weight(p, a).unwrap();
            let direct = normalization_constant(a).unwrap() * (-a * (1.0 - p)).exp();
            prop_assert!((w - direct).abs() <= 1e-12 * direct.max(1.0));
        }

        #[test]
        fn weight_strictly_increasing(a in 1e-3f64..200.0, p in 0.0f64..0.99, dp in 1e-3f64..0.01) {
            let s = ExponentialSpectrum::new(a).unwrap();
            prop_assert!(s.weight(p + dp) > s.weight(p));
            prop_assert!(s.weight(p) > 0.0);
        }

        #[test]
        fn more_aversion_weights_the_top_more(a1 in 0.1f64..50.0, gap in 0.1f64..50.0) {
            let a2 = a1 + gap;
            let (l1, l2) = (normalization_constant(a1).unwrap(), normalization_constant(a2).unwrap());
            let crossover = 1.0 - (l2 / l1).ln() / (a2 - a1);
            let p = crossover + 0.5 * (1.0 - crossover);
            prop_assert!(exp_weight(p, a2).unwrap() > exp_weight(p, a1).unwrap());
            prop_assert!(exp_weight(1.0, a2).unwrap() > exp_weight(1.0, a1).unwrap());
        }

        #[test]
        fn utility_is_concave(x in -5.0f64..5.0, y in -5.0f64..5.0, a in 0.01f64..5.0) {
            let mid = utility(0.5 * (x + y), a).unwrap();
            let chord = 0.5 * (utility(x, a).unwrap() + utility(y, a).unwrap());
            prop_assert!(mid >= chord - 1e-12 * chord.abs());
            prop_assert!(utility(x, a).unwrap() < 0.0);
        }
    }
}
