//! One-dimensional low-discrepancy sequences.

use crate::error::{Error, Result};

/// `round((sqrt(2) - 1) * 2^128)`.
const WEYL_SQRT2_FRACTION: u128 = 0x6A09_E667_F3BC_C908_B2FB_1366_EA95_7D3E;
const TWO_POW_MINUS_53: f64 = 1.0 / (1u64 << 53) as f64;
const TWO_POW_MINUS_64: f64 = TWO_POW_MINUS_53 / 2048.0;

fn check_index(index: u64) -> Result<()> {
    if index == 0 {
        return Err(Error::domain("index", 0.0, "index >= 1"));
    }
    Ok(())
}

/// Base-2 radical inverse of `index` (the van der Corput sequence).
pub fn van_der_corput(index: u64) -> Result<f64> {
    check_index(index)?;
    Ok(van_der_corput_unchecked(index))
}

#[inline]
pub(crate) fn van_der_corput_unchecked(index: u64) -> f64 {
    // exact while index < 2^53
    index.reverse_bits() as f64 * TWO_POW_MINUS_64
}

/// `frac(index * (sqrt(2) - 1))`, evaluated in 128-bit fixed point so the
/// node does not lose digits as `index` grows.
pub fn weyl_node(index: u64) -> Result<f64> {
    check_index(index)?;
    Ok(weyl_unchecked(index))
}

#[inline]
pub(crate) fn weyl_unchecked(index: u64) -> f64 {
    let frac = (index as u128).wrapping_mul(WEYL_SQRT2_FRACTION);
    (frac >> 75) as f64 * TWO_POW_MINUS_53
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn radical_inverse() {
        assert_eq!(van_der_corput(1).unwrap(), 0.5);
        assert_eq!(van_der_corput(2).unwrap(), 0.25);
        assert_eq!(van_der_corput(3).unwrap(), 0.75);
        assert_eq!(van_der_corput(4).unwrap(), 0.125);
        assert_eq!(van_der_corput(5).unwrap(), 0.625);
        assert!(van_der_corput(0).is_err());
    }

    #[test]
    fn weyl_values() {
        assert_abs_diff_eq!(weyl_node(1).unwrap(), 0.414_213_562_4, epsilon = 1e-10);
        assert_abs_diff_eq!(weyl_node(2).unwrap(), 0.828_427_124_7, epsilon = 1e-10);
        assert_abs_diff_eq!(weyl_node(5).unwrap(), 0.071_067_811_9, epsilon = 1e-10);
        assert_abs_diff_eq!(
            weyl_node(5).unwrap(),
            5.0 * 2f64.sqrt() - 7.0,
            epsilon = 1e-15
        );
        // frac(10^6 (sqrt 2 - 1)) from 60-digit arithmetic
        assert_abs_diff_eq!(
            weyl_node(1_000_000).unwrap(),
            0.562_373_095_048_801_7,
            epsilon = 1e-15
        );
        assert!(weyl_node(0).is_err());
    }

    #[test]
    fn sequences_fill_the_interval() {
        // Every cell of width 1/64 receives a point among the first 1024 terms.
        for f in [van_der_corput_unchecked as fn(u64) -> f64, weyl_unchecked] {
            let mut hit = [false; 64];
            for i in 1..=1024 {
                let x = f(i);
                assert!(x > 0.0 && x < 1.0);
                hit[(x * 64.0) as usize] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }
}
