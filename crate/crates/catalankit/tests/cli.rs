//! End-to-end tests of the `catalankit` binary: golden outputs, exit-code
//! contract, report determinism, and the documented command examples.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catalankit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn lerch_latex_golden() {
    let out = run(&["lerch", "--n", "2", "--emit", "latex"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\\frac{1-6z+z^2}{4(1+z)^3}\n");
}

#[test]
fn lerch_coeffs_goldens() {
    let out = run(&["lerch", "--n", "0", "--emit", "coeffs"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 / 1*(1+z)^1\n");

    let out = run(&["lerch", "--n", "7", "--emit", "coeffs"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "1, -2179, 60657, -259723, 259723, -60657, 2179, -1 / 128*(1+z)^8\n"
    );
}

#[test]
fn lerch_json_carries_exact_integers() {
    let out = run(&["lerch", "--n", "3", "--emit", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["pole_order"], 4);
    assert_eq!(v["scale"], "8");
    let nums: Vec<&str> = v["numerator"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(nums, ["1", "-23", "23", "-1"]);
}

#[test]
fn lerch_descending_order_flag() {
    let out = run(&["lerch", "--n", "3", "--emit", "latex", "--order", "descending"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\\frac{-z^3+23z^2-23z+1}{8(1+z)^4}\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["lerch", "--n", "40"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--bogus-flag"]).status.code(), Some(2));
    assert_eq!(run(&["not-a-command"]).status.code(), Some(2));
    // contradictory flag sets for integrate
    assert_eq!(
        run(&["integrate", "--rep", "single", "--cdf1", "cauchy"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["integrate", "--rep", "multi"]).status.code(),
        Some(2),
        "multi without --r or per-axis --cdf"
    );
    // bad numeric values are rejected before any work happens
    assert_eq!(
        run(&["verify", "--filter", "single_cauchy", "--tol", "1e-20"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--help"]).status.code(), Some(0));
}

#[test]
fn verify_with_unmatched_filter_warns_and_passes() {
    let out = run(&["verify", "--filter", "zzz_nomatch", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "vacuous pass");
    assert!(stderr(&out).contains("matched no cases"));
    assert!(stdout(&out).contains("passed 0/0"));
}

#[test]
fn verify_json_is_byte_identical_across_runs() {
    let args = [
        "verify",
        "--filter",
        "single_cauchy",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "deterministic report bytes");

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["tool"], "catalankit");
    assert_eq!(doc["reference_g"], "0.915965594177219015054603514932");
    assert_eq!(doc["summary"]["passed"], 1);
    assert!(doc.get("generated_unix_ms").is_none());
    let row = &doc["cases"][0];
    assert_eq!(row["case"], "single_cauchy");
    assert_eq!(row["pass"], true);
    assert!((row["value"].as_f64().unwrap() - 0.915965594177219).abs() <= 1e-9);
}

#[test]
fn verify_emits_timestamp_unless_suppressed() {
    let with = run(&["verify", "--filter", "single_cauchy", "--format", "json"]);
    assert!(stdout(&with).contains("generated_unix_ms"));
    let without = run(&[
        "verify",
        "--filter",
        "single_cauchy",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert!(!stdout(&without).contains("generated_unix_ms"));
}

#[test]
fn verify_csv_has_full_precision_rows() {
    let out = run(&[
        "verify",
        "--filter",
        "single_*",
        "--format",
        "csv",
        "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    // engine and reference header as comments, then the column header
    assert!(lines.next().unwrap().starts_with("# engine:"));
    assert!(lines.next().unwrap().starts_with("# reference:"));
    assert_eq!(
        lines.next().unwrap(),
        "case,method,value,expected,abs_error,error_estimate,evaluations,seed,pass"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9);
        let value: f64 = fields[2].parse().unwrap();
        assert!((value - 0.915965594177219).abs() <= 1e-9, "row: {row}");
        assert!(fields[2].contains('e'), "scientific notation: {row}");
        assert_eq!(fields[8], "true");
    }
}

#[test]
fn qmc_report_is_identical_across_thread_counts() {
    let args = [
        "verify",
        "--filter",
        "dim4",
        "--samples",
        "16384",
        "--format",
        "json",
        "--no-timestamp",
    ];
    let one = bin()
        .args(args)
        .env("CATALANKIT_THREADS", "1")
        .output()
        .unwrap();
    let three = bin()
        .args(args)
        .env("CATALANKIT_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, three.stdout, "thread count must not leak in");
}

#[test]
fn integrate_double_example_reaches_the_reference() {
    let out = run(&[
        "integrate",
        "--rep",
        "double",
        "--cdf1",
        "cauchy",
        "--cdf2",
        "rademacher",
        "--a",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value_line = text
        .lines()
        .find(|l| l.starts_with("value:"))
        .expect("value line present");
    let value: f64 = value_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((value - 0.915965594177219).abs() < 1e-8, "value {value}");
}

#[test]
fn integrate_single_normal_example() {
    let out = run(&["integrate", "--rep", "single", "--cdf", "normal", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "adaptive");
    assert!((v["value"].as_f64().unwrap() - 0.915965594177219).abs() < 1e-9);
    assert!(v["abs_error_vs_reference"].as_f64().unwrap() < 1e-9);
}

#[test]
fn integrate_multi_dim10_stays_within_standard_errors() {
    let out = run(&[
        "integrate",
        "--rep",
        "multi",
        "--r",
        "10",
        "--samples",
        "4194304",
        "--seed",
        "42",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "qmc");
    assert_eq!(v["seed"], 42);
    let abs_error = v["abs_error_vs_reference"].as_f64().unwrap();
    let se = v["error_estimate"].as_f64().unwrap();
    assert!(
        abs_error <= 4.0 * se,
        "abs_error {abs_error:e} vs 4*SE {:e}",
        4.0 * se
    );
}

#[test]
fn integrate_rejects_unknown_cdf_with_runtime_error() {
    let out = run(&["integrate", "--rep", "single", "--cdf", "not_a_cdf"]);
    assert_eq!(out.status.code(), Some(1), "runtime failure, not usage");
    assert!(stderr(&out).contains("error"));
}
