//! End-to-end runs of the `mixedreg` binary against fixture code files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn mixedreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixedreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn params_reports_example_dimensions() {
    let out = mixedreg(&["params", fixture("example1.code").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "n=3 moduli=2,6,3 |S|=6 K=6\n");
}

#[test]
fn params_with_distance_cap_appends_witness() {
    let out = mixedreg(&[
        "params",
        fixture("example1.code").to_str().unwrap(),
        "--distance-cap",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n=3 moduli=2,6,3 |S|=6 K=6\n"));
    assert!(text.contains("distance=1 witness="), "got: {text}");
}

#[test]
fn params_rejects_non_commuting_input_with_domain_exit() {
    let out = mixedreg(&["params", fixture("mixed65.code").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr.clone()).unwrap().contains("commute"));
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.code");
    std::fs::write(&bad, "moduli 2 6 3\ngen 9 0 0 / 0 0 0\n").unwrap();
    let out = mixedreg(&["params", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr.clone()).unwrap().contains("line 2"));

    let missing = dir.path().join("missing.code");
    let out = mixedreg(&["params", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn commutes_prints_zero_matrix_for_example() {
    let out = mixedreg(&["commutes", fixture("example1.code").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 0\n0 0\n");
}

#[test]
fn commutes_prints_rationals_for_mixed_pair() {
    let out = mixedreg(&["commutes", fixture("mixed65.code").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0 9/10\n1/10 0\n");
}

#[test]
fn decompose_reports_pair_and_radical() {
    let out = mixedreg(&["decompose", fixture("mixed65.code").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("isotropic 1"), "got: {text}");
    assert!(text.contains("pairs 1"), "got: {text}");
    assert!(text.contains("d 10"), "got: {text}");
}

#[test]
fn resolve_writes_three_register_code() {
    let out = mixedreg(&["resolve", fixture("mixed65.code").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("moduli 6 5 10\n"), "got: {text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("gen")).count(), 3);

    // the emitted file parses back into a commuting code
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("resolved.code");
    let out = mixedreg(&[
        "resolve",
        fixture("mixed65.code").to_str().unwrap(),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let check = mixedreg(&["params", path.to_str().unwrap()]);
    assert!(check.status.success());
    assert!(stdout(&check).starts_with("n=3 moduli=6,5,10"));
}

#[test]
fn scan_reproduces_the_joined_example() {
    let out = mixedreg(&[
        "scan",
        fixture("xx2.code").to_str().unwrap(),
        fixture("xx3.code").to_str().unwrap(),
        "--map1",
        "1,2",
        "--map2",
        "2,3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "moduli 2 6 3\ngen 1 3 0 / 0 0 0\ngen 0 2 1 / 0 0 0\n");
}

#[test]
fn scan_rejects_bad_map_as_domain_error() {
    let out = mixedreg(&[
        "scan",
        fixture("xx2.code").to_str().unwrap(),
        fixture("xx3.code").to_str().unwrap(),
        "--map1",
        "1,2",
        "--map2",
        "2,5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn embed_scales_exponents() {
    let out = mixedreg(&[
        "embed",
        fixture("xx2.code").to_str().unwrap(),
        "--modulus",
        "6",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "moduli 6 6\ngen 3 3 / 0 0\n");

    let out = mixedreg(&[
        "embed",
        fixture("xx2.code").to_str().unwrap(),
        "--modulus",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn split_emits_block_supported_generators() {
    let out = mixedreg(&["split", fixture("block2233.code").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("moduli 2 2 3 3\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("gen")).count(), 2);

    let out = mixedreg(&["split", fixture("example1.code").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn distance_prints_witness_or_none() {
    let out = mixedreg(&["distance", fixture("example1.code").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("distance=1 witness="));

    let out = mixedreg(&["distance", fixture("bell.code").to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("distance=none"));
}

#[test]
fn oracle_reports_trace_and_codeword() {
    let out = mixedreg(&[
        "oracle",
        fixture("example1.code").to_str().unwrap(),
        "--check-projector",
        "--codeword",
        "0,0,0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("trace=6.000000000000"), "got: {text}");
    assert!(text.contains("idempotence_residual=0.000000000000"), "got: {text}");
    let amps: Vec<&str> = text.lines().filter(|l| l.starts_with("amp ")).collect();
    assert_eq!(amps.len(), 6);
    for line in amps {
        // 1/sqrt(6) to 12 digits
        assert!(line.contains("0.408248290464 0.000000000000"), "got: {line}");
    }
}

#[test]
fn oracle_codeword_digits_validated() {
    let out = mixedreg(&[
        "oracle",
        fixture("example1.code").to_str().unwrap(),
        "--codeword",
        "0,9,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
