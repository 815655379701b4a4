//! Exponential SRM of standard normal losses for several risk-aversion
//! coefficients, with Simpson's rule.
//!
//!     cargo run --release --example srm_values [n]

use spectral_risk::{reference_srm, srm, ExponentialSpectrum, LossModel, QuadratureRule};

fn main() -> spectral_risk::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be an odd integer"))
        .unwrap_or(10_000_001);
    let model = LossModel::standard_normal();

    println!(
        "{:>6} {:>12} {:>12} {:>10}",
        "a", "simpson", "reference", "seconds"
    );
    for a in [1.0, 5.0, 25.0, 100.0] {
        let spectrum = ExponentialSpectrum::new(a)?;
        let est = srm(&spectrum, &model, QuadratureRule::Simpson, n)?;
        let exact = reference_srm(a, &model)?;
        println!(
            "{a:>6} {:>12.6} {exact:>12.6} {:>10.4}",
            est.value,
            est.elapsed.as_secs_f64()
        );
    }
    Ok(())
}
