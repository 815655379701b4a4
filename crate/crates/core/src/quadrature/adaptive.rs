//! Globally adaptive 7/15-point Gauss-Kronrod quadrature.
//!
//! Used only as a high-accuracy reference, not as a user-facing rule.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::sum::neumaier_sum;
use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss points.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(centre - dx) + f(centre + dx);
        k += WGK[i] * pair;
        if i % 2 == 1 {
            g += WG[i / 2] * pair;
        }
    }
    let (value, error) = (k * half, ((k - g) * half).abs());
    if !value.is_finite() {
        return Err(Error::NoConvergence(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error,
    })
}

/// Integral of `f` over each consecutive pair of `breaks`, refined until the
/// summed error estimate is below `abs_tol`. Returns `(value, error_estimate)`.
pub fn integrate_adaptive<F>(
    f: F,
    breaks: &[f64],
    abs_tol: f64,
    max_segments: usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if breaks.len() < 2 || breaks.windows(2).any(|w| !w[0].lt(&w[1])) {
        return Err(Error::Config(
            "breakpoints must be strictly increasing".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        heap.push(kronrod(&f, w[0], w[1])?);
    }
    loop {
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        if total_error <= abs_tol {
            let value = neumaier_sum(heap.iter().map(|s| s.value));
            return Ok((value, total_error));
        }
        if heap.len() >= max_segments {
            return Err(Error::NoConvergence(format!(
                "error estimate {total_error:.3e} above {abs_tol:.1e} after {max_segments} segments"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) {
            return Err(Error::NoConvergence(format!(
                "segment [{}, {}] cannot be split further",
                worst.lo, worst.hi
            )));
        }
        heap.push(kronrod(&f, worst.lo, mid)?);
        heap.push(kronrod(&f, mid, worst.hi)?);
    }
}
