//! End-to-end runs of the `frames` binary: flag handling, report shapes,
//! exit codes, and byte-for-byte reproducibility.

use std::process::{Command, Output};

fn frames(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frames"))
        .args(args)
        .env("FRAMES_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn field_report() {
    let v = stdout_json(&frames(&["field", "--q", "9"]));
    assert_eq!(v["p"], 3);
    assert_eq!(v["k"], 2);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1]));
    assert!(v["log_table_digest"].as_str().unwrap().len() == 16);
}

#[test]
fn field_rejects_non_prime_power() {
    let out = frames(&["field", "--q", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a prime power"));
}

#[test]
fn usage_error_is_exit_2() {
    let out = frames(&["field"]); // missing --q
    assert_eq!(out.status.code(), Some(2));
    let out = frames(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_eigen_shape() {
    let v = stdout_json(&frames(&["oracle", "--q", "2", "--n", "3", "--what", "eigen"]));
    assert_eq!(v["eigenvalues"], serde_json::json!([-8, -4, 2, 4, 8, 20]));
}

#[test]
fn garland_emits_exact_rationals() {
    let v = stdout_json(&frames(&["garland", "--q", "2", "--n", "3"]));
    assert_eq!(v["lambda_min"], "3/5");
    assert_eq!(v["p_values"]["3"], "9/2");
    assert_eq!(v["prop91_threshold"], 22);
    let v = stdout_json(&frames(&["garland", "--q", "3", "--n-max", "6"]));
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
}

#[test]
fn enumerate_csv_and_json() {
    let out = frames(&["enumerate", "--q", "2", "--n", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id,row0,row1"));
    assert_eq!(lines.count(), 20);

    let v = stdout_json(&frames(&["enumerate", "--q", "2", "--n", "2"]));
    assert_eq!(v["count"], 20);
    assert_eq!(v["planes"].as_array().unwrap().len(), 20);

    // degenerate ambient space: 4 planes for n=1, r=1, q=2
    let v = stdout_json(&frames(&["enumerate", "--q", "2", "--n", "1", "--r", "1"]));
    assert_eq!(v["count"], 4);
}

#[test]
fn census_matches_and_is_csvable() {
    let v = stdout_json(&frames(&["census", "--q", "2", "--n", "2"]));
    assert_eq!(v["matches_table1"], true);
    assert_eq!(v["constant"], true);
    assert_eq!(v["table1"], serde_json::json!([1, 9, 0, 1, 9, 0]));

    let out = frames(&["census", "--q", "2", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("case,count"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn graph_walks_mu_spectrum_homology() {
    let v = stdout_json(&frames(&["graph", "--q", "2", "--n", "2"]));
    assert_eq!(v["vertices"], 20);
    assert_eq!(v["components"], 10);

    let v = stdout_json(&frames(&["walks", "--q", "2", "--n", "3", "--r", "2"]));
    assert_eq!(v["match"], true);
    assert_eq!(v["walk_vector"][1], 4);

    let v = stdout_json(&frames(&["mu", "--q", "2", "--n", "2"]));
    assert_eq!(v["matches_oracle"], true);
    assert_eq!(v["policy"], "exhaustive");

    let v = stdout_json(&frames(&["spectrum", "--q", "2", "--n", "2"]));
    assert_eq!(v["annihilation_verified"], true);
    assert_eq!(v["multiplicities"], serde_json::json!([10, 10]));
    assert_eq!(v["lambda_min"], serde_json::Value::Null);

    let v = stdout_json(&frames(&["complex", "--q", "2", "--n", "2"]));
    assert_eq!(v["f_vector"], serde_json::json!([20, 10]));
    assert_eq!(v["euler"], 9);

    let v = stdout_json(&frames(&["homology", "--q", "2", "--n", "2"]));
    assert_eq!(v["betti"], serde_json::json!([9, 0]));
    assert_eq!(v["agree"], true);
}

#[test]
fn classify_pair() {
    let v = stdout_json(&frames(&["classify", "--q", "2", "--n", "2", "--s-id", "0", "--w-id", "0"]));
    assert_eq!(v["case"], 1);
}

#[test]
fn homology_budget_skip_and_strict() {
    // tiny budget: homology is skipped; default exit stays 0
    let out = frames(&["verify", "--q", "2", "--n", "2", "--max-cells", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "homology_betti" && c["status"] == "skipped"));

    // strict turns the skip into a failure
    let out = frames(&["verify", "--q", "2", "--n", "2", "--max-cells", "5", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_small_passes() {
    let out = frames(&["verify", "--q", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["seed"], frames_core::DEFAULT_SEED);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["verify", "--q", "2", "--n", "2"],
        vec!["mu", "--q", "2", "--n", "2"],
        vec!["enumerate", "--q", "2", "--n", "2", "--format", "csv"],
        vec!["spectrum", "--q", "2", "--n", "2"],
    ] {
        let a = frames(&args);
        let b = frames(&args);
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("frames-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("eigen.json");
    let out = frames(&[
        "oracle", "--q", "2", "--n", "3", "--what", "eigen",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["eigenvalues"][5], 20);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn homology_export_matrixmarket() {
    let dir = std::env::temp_dir().join(format!("frames-mm-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prefix = dir.join("bnd");
    let out = frames(&[
        "homology", "--q", "2", "--n", "2",
        "--export", prefix.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("bnd.d1.mtx")).unwrap();
    assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n20 10 20\n"));
    std::fs::remove_dir_all(&dir).ok();
}
