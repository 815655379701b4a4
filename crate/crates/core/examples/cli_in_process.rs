//! Driving the command-line front end from Rust and reading its CSV back.
//!
//!     cargo run --release --example cli_in_process

use spectral_risk::cli::run;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "spectral-risk",
        "converge",
        "--spectrum",
        "exp:5",
        "--rules",
        "simpson,weyl",
        "--n-list",
        "1001,10001",
    ];
    let status = run(args, &mut out, &mut err);
    assert_eq!(status, 0, "{}", String::from_utf8_lossy(&err));

    let mut rdr = csv::Reader::from_reader(out.as_slice());
    for row in rdr.records() {
        let row = row.expect("valid csv");
        println!(
            "{:>8} n={:>6}  error {:>10}%",
            &row[1],
            &row[2],
            &row[8][..10.min(row[8].len())]
        );
    }
}
