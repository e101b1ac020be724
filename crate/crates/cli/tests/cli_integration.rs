//! Black-box tests of the mixcert binary: exit-code contract, file round
//! trips, and report determinism across runs and thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mixcert")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_k4(dir: &Path) -> PathBuf {
    let path = dir.join("k4.el");
    std::fs::write(&path, "4 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    path
}

fn strip_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn generate_round_trips_through_the_reader() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.el");
    let res = run(&[
        "generate", "random-regular", "--n", "64", "--d", "4", "--seed", "7",
        "-o", out.to_str().unwrap(),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let g = mixcert_core::io::read_edge_list_path(&out).unwrap();
    assert_eq!((g.n(), g.d()), (64, 4));
}

#[test]
fn generate_parity_error_exits_2() {
    let res = run(&["generate", "random-regular", "--n", "5", "--d", "3", "--seed", "1"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn missing_seed_is_a_usage_error() {
    // clap reports missing required arguments with exit code 2
    let res = run(&["generate", "random-regular", "--n", "8", "--d", "3"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn certify_k4_exact_violated() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_k4(dir.path());
    let res = run(&[
        "certify", k4.to_str().unwrap(), "--alpha", "0.4", "--delta", "1",
        "--mode", "exact",
    ]);
    assert!(res.status.success());
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report["verdict"], "violated");
    assert_eq!(report["witness"]["surplus"], 0.5);
    assert_eq!(report["max_surplus_found"], 0.5);

    // alpha = d holds
    let res = run(&[
        "certify", k4.to_str().unwrap(), "--alpha", "3", "--delta", "1",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report["verdict"], "holds");
}

#[test]
fn certify_size_refusal_exits_3_with_guidance() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.el");
    let res = run(&[
        "generate", "random-regular", "--n", "64", "--d", "4", "--seed", "2",
        "-o", big.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let res = run(&[
        "certify", big.to_str().unwrap(), "--alpha", "2", "--mode", "exact",
    ]);
    assert_eq!(res.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&res.stderr).contains("heuristic"));
}

#[test]
fn heuristic_without_seed_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_k4(dir.path());
    let res = run(&[
        "certify", k4.to_str().unwrap(), "--alpha", "2", "--mode", "heuristic",
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn mix_and_spectrum_reports() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_k4(dir.path());
    let csv = dir.path().join("trace.csv");
    let res = run(&[
        "mix", k4.to_str().unwrap(), "--epsilon", "0.333",
        "--trace-csv", csv.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report["mixing"]["tau"], 1);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("t,d_tv,l2sq\n0,0.75,1\n"));

    let res = run(&["spectrum", k4.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let lambda = report["spectral"]["lambda"].as_f64().unwrap();
    assert!((lambda - 1.0 / 3.0).abs() < 1e-8);
    assert_eq!(report["spectral"]["is_ramanujan"], true);
}

#[test]
fn bad_graph_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "4 3\n0 1\n").unwrap();
    let res = run(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
    let res = run(&["spectrum", dir.path().join("missing.el").to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn verify_planted_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("planted.el");
    let sidecar = dir.path().join("planted.json");
    let res = run(&[
        "generate", "planted-expander", "--n", "48", "--d", "4", "--seed", "1",
        "-o", el.to_str().unwrap(), "--samples", "500",
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(sidecar.exists());

    let res = run(&[
        "verify", "--graph", el.to_str().unwrap(),
        "--sidecar", sidecar.to_str().unwrap(),
        "--seed", "5", "--samples", "1000",
    ]);
    assert!(
        res.status.success(),
        "verify failed: {}",
        String::from_utf8_lossy(&res.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(report["cross_check_failures"].as_array().unwrap().len(), 0);
    assert_eq!(report["lemma41"]["ok"], true);
    // the measured tau dominates the theorem floor
    let ratio = report["lemma41"]["tau_ratio"].as_f64().unwrap();
    assert!(ratio >= 1.0);
}

#[test]
fn verify_reports_are_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("p.el");
    run(&[
        "generate", "planted-expander", "--n", "48", "--d", "4", "--seed", "2",
        "-o", el.to_str().unwrap(), "--skip-claims",
    ]);
    let sidecar = dir.path().join("p.json");
    let mut outputs = Vec::new();
    for threads in ["1", "2", "4"] {
        let res = run(&[
            "verify", "--graph", el.to_str().unwrap(),
            "--sidecar", sidecar.to_str().unwrap(),
            "--seed", "9", "--samples", "500", "--threads", threads,
        ]);
        assert!(res.status.success());
        outputs.push(strip_timestamp(&String::from_utf8(res.stdout).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}
