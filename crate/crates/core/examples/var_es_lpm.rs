//! VaR, Expected Shortfall and lower partial moments for a normal loss model.
//!
//!     cargo run --release --example var_es_lpm

use spectral_risk::{es, lpm, var, EsMode, LossModel, LpmInput, NormalLossModel};

fn main() -> spectral_risk::Result<()> {
    let model = LossModel::from(NormalLossModel::new(0.5, 2.0)?);

    println!(
        "{:>6} {:>10} {:>12} {:>12}",
        "alpha", "VaR", "ES closed", "ES quad"
    );
    for alpha in [0.90, 0.95, 0.99, 0.999] {
        println!(
            "{alpha:>6} {:>10.5} {:>12.6} {:>12.6}",
            var(&model, alpha)?,
            es(&model, alpha, EsMode::ClosedForm, 0)?,
            es(&model, alpha, EsMode::Quadrature, 100_001)?,
        );
    }

    // downside moments of returns below a 1% target
    let returns = [0.031, -0.012, 0.004, -0.027, 0.015, 0.009, -0.041, 0.022];
    println!();
    for k in [0.0, 1.0, 2.0] {
        println!(
            "LPM{k} of sample around 0.01: {:.6}",
            lpm(LpmInput::Sample(&returns), k, 0.01)?
        );
    }
    let simulated = LpmInput::Model {
        model: &model,
        draws: 1_000_000,
        seed: 7,
    };
    println!(
        "P(loss model < 0) by simulation: {:.4}",
        lpm(simulated, 0.0, 0.0)?
    );
    println!("P(loss model < 0) exact:         {:.4}", model.cdf(0.0));
    Ok(())
}
