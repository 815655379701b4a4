//! Percentage error of each quadrature rule against the adaptive reference,
//! for a range of node counts.
//!
//!     cargo run --release --example convergence_study [a]

use spectral_risk::{reference_srm, srm, ExponentialSpectrum, LossModel, QuadratureRule};

fn main() -> spectral_risk::Result<()> {
    let a: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("a must be a positive number"))
        .unwrap_or(5.0);
    let model = LossModel::standard_normal();
    let spectrum = ExponentialSpectrum::new(a)?;
    let exact = reference_srm(a, &model)?;
    println!("reference SRM(a = {a}) = {exact:.10}\n");

    print!("{:>10}", "n");
    for rule in QuadratureRule::ALL {
        print!(" {:>14}", rule.name());
    }
    println!();
    for n in [101, 1001, 10_001, 100_001, 1_000_001, 10_000_001] {
        print!("{n:>10}");
        for rule in QuadratureRule::ALL {
            let est = srm(&spectrum, &model, rule, n)?;
            print!(" {:>13.5}%", 100.0 * (est.value - exact) / exact);
        }
        println!();
    }
    Ok(())
}
