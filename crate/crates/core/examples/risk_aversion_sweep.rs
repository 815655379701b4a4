//! SRM as a function of the absolute risk-aversion coefficient, as CSV.
//!
//!     cargo run --release --example risk_aversion_sweep > sweep.csv

use spectral_risk::{srm, ExponentialSpectrum, LossModel, QuadratureRule};

fn main() -> spectral_risk::Result<()> {
    let model = LossModel::standard_normal();
    println!("a,srm");
    for a in 1..=100 {
        let est = srm(
            &ExponentialSpectrum::new(a as f64)?,
            &model,
            QuadratureRule::Simpson,
            10_001,
        )?;
        println!("{a},{}", est.value);
    }
    Ok(())
}
