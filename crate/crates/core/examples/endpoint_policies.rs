//! How the handling of the p = 0 and p = 1 endpoints moves Simpson estimates.
//!
//!     cargo run --release --example endpoint_policies

use spectral_risk::{
    build_grid_with, es, reference_srm, srm_on_grid, EndpointPolicy, EsMode, EsSpectrum,
    ExponentialSpectrum, LossModel, QuadratureRule,
};

fn main() -> spectral_risk::Result<()> {
    let model = LossModel::standard_normal();
    let exact = reference_srm(5.0, &model)?;
    let spectrum = ExponentialSpectrum::new(5.0)?;
    let policies = [EndpointPolicy::Truncate, EndpointPolicy::HalfSpacingClip];

    println!("exponential a = 5, percentage error");
    for n in [1001, 10_001, 100_001] {
        print!("{n:>8}");
        for policy in policies {
            let grid = build_grid_with(QuadratureRule::Simpson, n, policy)?;
            let v = srm_on_grid(&spectrum, &model, &grid)?.value;
            print!(
                "  {:>9}: {:+.5}%",
                policy.name(),
                100.0 * (v - exact) / exact
            );
        }
        println!();
    }

    println!("\nES at n = 100001, quadrature minus closed form");
    for alpha in [0.90, 0.95, 0.99] {
        let closed = es(&model, alpha, EsMode::ClosedForm, 0)?;
        print!("{alpha:>8}");
        for policy in policies {
            let grid = build_grid_with(QuadratureRule::Simpson, 100_001, policy)?;
            let v = srm_on_grid(&EsSpectrum::new(alpha)?, &model, &grid)?.value;
            print!("  {:>9}: {:+.2e}", policy.name(), v - closed);
        }
        println!();
    }
    Ok(())
}
