//! SRM of a historical loss sample, using its order statistics as quantiles.
//!
//!     cargo run --release --example empirical_losses

use spectral_risk::distributions::sample;
use spectral_risk::{
    reference_srm, srm, EmpiricalLossModel, ExponentialSpectrum, LossModel, NormalLossModel,
    QuadratureRule,
};

fn main() -> spectral_risk::Result<()> {
    // stand-in for a history of daily P&L losses
    let draws = sample(&NormalLossModel::new(0.0, 1.5)?, 2024, 2500)?;
    let model = LossModel::from(EmpiricalLossModel::from_unsorted(draws)?);

    for a in [1.0, 5.0, 25.0] {
        let spectrum = ExponentialSpectrum::new(a)?;
        let exact = reference_srm(a, &model)?;
        let est = srm(&spectrum, &model, QuadratureRule::Simpson, 10_001)?;
        println!(
            "a = {a:>4}: step-function integral {exact:.5}, Simpson on 10001 nodes {:.5}",
            est.value
        );
    }
    println!("99% VaR of the sample: {:.4}", model.quantile(0.99)?);
    Ok(())
}
