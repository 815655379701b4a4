//! Risk-aversion functions: weights over p, admissibility checks, and a
//! user-supplied spectrum.
//!
//!     cargo run --release --example spectrum_shapes

use spectral_risk::spectra::{absolute_risk_aversion, exp_weight, utility};
use spectral_risk::{
    srm, validate_spectrum, EsSpectrum, ExponentialSpectrum, LossModel, QuadratureRule, Spectrum,
};

fn main() -> spectral_risk::Result<()> {
    println!("{:>5} {:>10} {:>10}", "p", "phi(a=5)", "phi(a=25)");
    for j in 0..=10 {
        let p = j as f64 / 10.0;
        println!(
            "{p:>5.1} {:>10.4} {:>10.4}",
            exp_weight(p, 5.0)?,
            exp_weight(p, 25.0)?
        );
    }

    println!();
    for (name, report) in [
        (
            "exp:5",
            validate_spectrum(&ExponentialSpectrum::new(5.0)?, 10_001, 1e-10)?,
        ),
        (
            "es:0.95",
            validate_spectrum(&EsSpectrum::new(0.95)?, 10_001, 1e-3)?,
        ),
        // decreasing weights: admissible as a density, not as a risk spectrum
        (
            "2(1-p)",
            validate_spectrum(&|p: f64| 2.0 * (1.0 - p), 10_001, 1e-10)?,
        ),
    ] {
        println!(
            "{name:>8}: positive {}, integral {:.12}, non-decreasing {} -> {}",
            report.positivity_ok,
            report.normalisation_value,
            report.increasing_ok,
            if report.all_ok() { "ok" } else { "rejected" }
        );
    }

    // a power spectrum phi(p) = 3 p^2 is admissible and can be used directly
    let power = |p: f64| 3.0 * p * p;
    let est = srm(
        &power,
        &LossModel::standard_normal(),
        QuadratureRule::Simpson,
        100_001,
    )?;
    println!("\nSRM with phi(p) = 3p^2: {:.6}", est.value);
    println!("weight at p = 0.99: {:.4}", power.weight(0.99));

    println!(
        "\nexponential utility with a = 2: U(1) = {:.6}, ARA = {}",
        utility(1.0, 2.0)?,
        absolute_risk_aversion(2.0)?
    );
    Ok(())
}
