use std::process::{Command, Output};

use spectral_risk::cli::{CI_HEADERS, COMPUTE_HEADERS};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-risk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn records(text: &str) -> (csv::StringRecord, Vec<csv::StringRecord>) {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let rows = rdr.records().map(Result::unwrap).collect();
    (headers, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (headers, rows) = records(text);
    let idx = headers.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[idx].parse().unwrap()).collect()
}

#[test]
fn compute_single_spectrum() {
    let out = run(&[
        "compute",
        "--dist",
        "normal:0,1",
        "--spectrum",
        "exp:5",
        "--rule",
        "simpson",
        "--n",
        "100001",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let (headers, rows) = records(&text);
    assert_eq!(headers.iter().collect::<Vec<_>>(), COMPUTE_HEADERS);
    assert_eq!(rows.len(), 1);
    let v = column(&text, "srm_value")[0];
    assert!((v - 1.0816).abs() < 2e-3, "{v}");
}

#[test]
fn sweep_gives_increasing_values() {
    let out = run(&[
        "compute",
        "--spectrum",
        "exp:5",
        "--sweep-a",
        "1:100:99",
        "--n",
        "10001",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let a = column(&text, "a");
    let v = column(&text, "srm_value");
    assert_eq!(v.len(), 99);
    assert_eq!((a[0], a[98]), (1.0, 100.0));
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn closed_form_es() {
    let out = run(&["compute", "--spectrum", "es:0.95", "--mode", "closed-form"]);
    assert!(out.status.success());
    let v = column(&stdout(&out), "srm_value")[0];
    assert!((v - 2.0627128).abs() < 1e-7);
}

#[test]
fn converge_reports_negative_bias() {
    let out = run(&[
        "converge",
        "--rules",
        "simpson",
        "--n-list",
        "1001,10001",
        "--spectrum",
        "exp:5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let e = column(&stdout(&out), "pct_error");
    assert_eq!(e.len(), 2);
    assert!(e[0] < e[1] && e[1] < 0.0);
    assert!(e[0] / -1.55 > 0.4 && e[0] / -1.55 < 2.5);
    assert!(e[1] / -0.18 > 0.4 && e[1] / -0.18 < 2.5);
}

#[test]
fn converge_over_all_rules() {
    let out = run(&[
        "converge",
        "--rules",
        "trapezoid,simpson,niederreiter,weyl",
        "--n-list",
        "101..20001:1000",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let (headers, rows) = records(&text);
    let rule = headers.iter().position(|h| h == "rule").unwrap();
    let err = headers.iter().position(|h| h == "pct_error").unwrap();
    for name in ["trapezoid", "simpson", "niederreiter", "weyl"] {
        let e: Vec<f64> = rows
            .iter()
            .filter(|r| &r[rule] == name)
            .map(|r| r[err].parse().unwrap())
            .collect();
        assert_eq!(e.len(), 20);
        assert!(
            e[19].abs() < e[0].abs() && e[19].abs() < 1.0,
            "{name}: {e:?}"
        );
    }
}

#[test]
fn ci_is_reproducible_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let args = |path: &str, workers: &'static str| {
        vec![
            "--workers".to_owned(),
            workers.to_owned(),
            "ci".to_owned(),
            "--spectrum".to_owned(),
            "exp:5".to_owned(),
            "--n".to_owned(),
            "2001".to_owned(),
            "--b".to_owned(),
            "200".to_owned(),
            "--confidence".to_owned(),
            "0.90".to_owned(),
            "--seed".to_owned(),
            "42".to_owned(),
            "--out".to_owned(),
            path.to_owned(),
        ]
    };
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "1", "4"].into_iter().enumerate() {
        let path = dir.path().join(format!("ci{i}.csv"));
        let path = path.to_str().unwrap();
        let a = args(path, workers);
        let out = run(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
        assert!(stderr(&out).starts_with("ci: elapsed_seconds="));
        outputs.push(std::fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let text = String::from_utf8(outputs.swap_remove(0)).unwrap();
    let (headers, rows) = records(&text);
    assert_eq!(headers.iter().collect::<Vec<_>>(), CI_HEADERS);
    let lower = column(&text, "lower")[0];
    let upper = column(&text, "upper")[0];
    let mean = column(&text, "estimates_mean")[0];
    assert!(lower <= mean && mean <= upper);
    assert_eq!(&rows[0][5], "42");
}

#[test]
fn json_matches_csv() {
    let csv_out = run(&[
        "converge",
        "--spectrum",
        "exp:25",
        "--rules",
        "weyl,trapezoid",
        "--n-list",
        "11,101",
    ]);
    let json_out = run(&[
        "converge",
        "--spectrum",
        "exp:25",
        "--rules",
        "weyl,trapezoid",
        "--n-list",
        "11,101",
        "--format",
        "json",
    ]);
    assert!(csv_out.status.success() && json_out.status.success());
    let text = stdout(&csv_out);
    let json: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let rows = json.as_array().unwrap();
    let estimates = column(&text, "estimate");
    assert_eq!(rows.len(), estimates.len());
    for (row, want) in rows.iter().zip(estimates) {
        assert_eq!(row["estimate"].as_f64().unwrap().to_bits(), want.to_bits());
    }
}

#[test]
fn validate_exit_status() {
    let ok = run(&["validate", "--spectrum", "exp:5"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("true,true,true"));

    let es = run(&["validate", "--spectrum", "es:0.95"]);
    assert_eq!(es.status.code(), Some(0));

    let strict = run(&["validate", "--spectrum", "es:0.95", "--tolerance", "1e-9"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(stdout(&strict).contains("false"));
}

#[test]
fn usage_errors_are_one_line() {
    for args in [
        &["ci", "--b", "1"][..],
        &["validate", "--spectrum", "exp:0"],
        &["compute", "--rule", "simpson", "--n", "1000"],
        &["compute", "--dist", "normal:0,-1"],
        &["compute", "--sweep-a", "1:5"],
        &["compute", "--bogus"],
        &["ci", "--confidence", "1.5"],
        &["converge", "--n-list", "5..1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert_eq!(
            stderr(&out).trim_end().lines().count(),
            1,
            "{args:?}: {}",
            stderr(&out)
        );
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn unwritable_output_path() {
    let out = run(&[
        "validate",
        "--spectrum",
        "exp:5",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr(&out).lines().count(), 1);
}

#[test]
fn weights_cover_the_unit_interval() {
    let out = run(&["weights", "--spectrum", "exp:5", "--n", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let p = column(&text, "p");
    let w = column(&text, "weight");
    assert_eq!((p[0], p[10]), (0.0, 1.0));
    assert!(w.windows(2).all(|x| x[1] > x[0]));
}
