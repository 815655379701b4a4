//! Standard and general normal loss models.
//!
//! The inverse CDF is Wichura's AS241 (`PPND16`), which is accurate to about
//! 1e-16 relative over the whole double range. The CDF goes through `erfc`
//! so the lower tail keeps full relative precision.

#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SPLIT_CENTRAL: f64 = 0.425;
const SPLIT_TAIL: f64 = 5.0;

const CENTRAL_NUM: [f64; 8] = [
    3.387_132_872_796_366_608_0,
    1.331_416_678_917_843_774_5e2,
    1.971_590_950_306_551_442_7e3,
    1.373_169_376_550_946_112_5e4,
    4.592_195_393_154_987_145_7e4,
    6.726_577_092_700_870_085_3e4,
    3.343_057_558_358_812_810_5e4,
    2.509_080_928_730_122_672_7e3,
];
const CENTRAL_DEN: [f64; 8] = [
    1.0,
    4.231_333_070_160_091_125_2e1,
    6.871_870_074_920_579_083_0e2,
    5.394_196_021_424_751_107_7e3,
    2.121_379_430_158_659_586_7e4,
    3.930_789_580_009_271_061_0e4,
    2.872_908_573_572_194_267_4e4,
    5.226_495_278_852_854_561_0e3,
];
const NEAR_NUM: [f64; 8] = [
    1.423_437_110_749_683_577_34,
    4.630_337_846_156_545_295_90,
    5.769_497_221_460_691_405_50,
    3.647_848_324_763_204_605_04,
    1.270_458_252_452_368_382_58,
    2.417_807_251_774_506_117_70e-1,
    2.272_384_498_926_918_458_33e-2,
    7.745_450_142_783_414_076_40e-4,
];
const NEAR_DEN: [f64; 8] = [
    1.0,
    2.053_191_626_637_758_821_87,
    1.676_384_830_183_803_849_40,
    6.897_673_349_851_000_045_50e-1,
    1.481_039_764_274_800_745_90e-1,
    1.519_866_656_361_645_719_66e-2,
    5.475_938_084_995_344_946_00e-4,
    1.050_750_071_644_416_843_24e-9,
];
const FAR_NUM: [f64; 8] = [
    6.657_904_643_501_103_777_20,
    5.463_784_911_164_114_369_90,
    1.784_826_539_917_291_335_80,
    2.965_605_718_285_048_912_30e-1,
    2.653_218_952_657_612_309_30e-2,
    1.242_660_947_388_078_438_60e-3,
    2.711_555_568_743_487_578_15e-5,
    2.010_334_399_292_288_132_65e-7,
];
const FAR_DEN: [f64; 8] = [
    1.0,
    5.998_322_065_558_879_376_90e-1,
    1.369_298_809_227_358_053_10e-1,
    1.487_536_129_085_061_485_25e-2,
    7.868_691_311_456_132_591_00e-4,
    1.846_318_317_510_054_681_80e-5,
    1.421_511_758_316_445_888_70e-7,
    2.044_263_103_389_939_785_64e-15,
];

#[inline]
fn horner(coeffs: &[f64; 8], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Inverse of the standard normal CDF.
///
/// `p` must lie strictly inside `(0, 1)`; callers integrating over the unit
/// interval are expected to keep their nodes away from the endpoints.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", p, "0 < p < 1"));
    }
    Ok(quantile_unchecked(p))
}

// `libm::log` rather than `f64::ln` so sampled streams are bit-identical
// across platforms.
#[inline]
pub(crate) fn quantile_unchecked(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= SPLIT_CENTRAL {
        let r = 0.180_625 - q * q;
        return q * horner(&CENTRAL_NUM, r) / horner(&CENTRAL_DEN, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let r = libm::sqrt(-libm::log(tail));
    let z = if r <= SPLIT_TAIL {
        let r = r - 1.6;
        horner(&NEAR_NUM, r) / horner(&NEAR_DEN, r)
    } else {
        let r = r - SPLIT_TAIL;
        horner(&FAR_NUM, r) / horner(&FAR_DEN, r)
    };
    if q < 0.0 {
        -z
    } else {
        z
    }
}

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Normal loss distribution with location `mu` and scale `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalLossModel {
    mu: f64,
    sigma: f64,
}

impl NormalLossModel {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::domain("mu", mu, "finite"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain("sigma", sigma, "0 < sigma < inf"));
        }
        Ok(Self { mu, sigma })
    }

    pub fn standard() -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.mu + self.sigma * normal_quantile(p)?)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf((x - self.mu) / self.sigma)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        normal_pdf((x - self.mu) / self.sigma) / self.sigma
    }
}

impl Default for NormalLossModel {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn median_is_zero() {
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
        assert_eq!(normal_cdf(0.0), 0.5);
    }

    #[test]
    fn known_quantiles() {
        // 30-digit reference values
        assert_abs_diff_eq!(
            normal_quantile(0.95).unwrap(),
            1.644_853_626_951_472_3,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            normal_quantile(0.975).unwrap(),
            1.959_963_984_540_054,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            normal_quantile(0.05).unwrap(),
            -1.644_853_626_951_472_7,
            epsilon = 1e-14
        );
    }

    #[test]
    fn known_cdf_values() {
        assert_abs_diff_eq!(normal_cdf(1.644_853_626_951), 0.95, epsilon = 1e-13);
        let lower = normal_cdf(-8.0);
        assert!((lower / 6.220_960_574_271_784e-16 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn known_densities() {
        assert_abs_diff_eq!(normal_pdf(0.0), 0.398_942_280_401_432_7, epsilon = 1e-16);
        assert_abs_diff_eq!(
            normal_pdf(1.644_853_627),
            0.103_135_640_367_139,
            epsilon = 1e-12
        );
        for x in [0.3, 1.7, 4.2, 10.0] {
            assert_eq!(normal_pdf(x), normal_pdf(-x));
            assert!(normal_pdf(x) < normal_pdf(0.0));
        }
    }

    #[test]
    fn rejects_closed_endpoints() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(normal_quantile(p), Err(Error::Domain { .. })));
        }
    }

    #[test]
    fn extreme_tails_are_finite() {
        let lo = normal_quantile(1e-300).unwrap();
        assert!((lo + 37.047_096_299_361_2).abs() < 1e-12);
        let hi = normal_quantile(1.0 - 1e-16).unwrap();
        assert!(hi.is_finite() && hi > 8.0);
    }

    #[test]
    fn model_rejects_bad_sigma() {
        assert!(NormalLossModel::new(3.0, 0.0).is_err());
        assert!(NormalLossModel::new(3.0, -1.0).is_err());
        assert!(NormalLossModel::new(f64::NAN, 1.0).is_err());
        assert!(NormalLossModel::new(3.0, 1e-12).is_ok());
    }

    #[test]
    fn affine_composition_is_exact() {
        let m = NormalLossModel::new(1.0, 2.0).unwrap();
        for p in [0.01, 0.3, 0.5, 0.95, 0.999] {
            assert_eq!(
                m.quantile(p).unwrap(),
                1.0 + 2.0 * normal_quantile(p).unwrap()
            );
        }
        assert_eq!(m.quantile(0.5).unwrap(), 1.0);
        assert_abs_diff_eq!(
            m.quantile(0.95).unwrap(),
            4.289_707_253_902_945,
            epsilon = 1e-12
        );
    }

    proptest::proptest! {
        #[test]
        fn model_quantile_is_affine(mu in -1e3f64..1e3, sigma in 1e-6f64..1e3, p in 1e-12f64..1.0) {
            let m = NormalLossModel::new(mu, sigma).unwrap();
            proptest::prop_assert_eq!(m.quantile(p).unwrap(), mu + sigma * normal_quantile(p).unwrap());
        }

        #[test]
        fn quantile_is_odd(p in 1e-300f64..0.5) {
            let q = 1.0 - p;
            // 1 - p is rounded, so compare against the rounded mirror
            let back = 1.0 - q;
            proptest::prop_assert_eq!(normal_quantile(back).unwrap(), -normal_quantile(q).unwrap());
        }
    }
}
