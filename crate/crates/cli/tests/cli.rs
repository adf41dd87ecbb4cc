//! End-to-end tests of the `qknot` binary: exit codes, output formats and
//! the JSON schema round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

use qknot_core::exactalg::{quantum_integer, LaurentPoly};

fn qknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qknot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_tangle(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const UNKNOT2: &str = "algebra A1\nbottom:\ncup_cw 0 [2]\ncap_cw 0\n";

#[test]
fn invariant_text_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tangle(&dir, "u2.tangle", UNKNOT2);
    let out = qknot(&["invariant", "--tangle", path.to_str().unwrap(), "--ribbon", "st"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), "q^2 + 1 + q^-2");
    // Standard ribbon gives the same value for color 2.
    let out = qknot(&["invariant", "--tangle", path.to_str().unwrap(), "--ribbon", "standard"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "q^2 + 1 + q^-2");
}

#[test]
fn invariant_json_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tangle(&dir, "u2.tangle", UNKNOT2);
    let out = qknot(&[
        "invariant",
        "--tangle",
        path.to_str().unwrap(),
        "--ribbon",
        "st",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["algebra"], "A1");
    assert_eq!(doc["ribbon"], "st");
    assert_eq!(doc["components"][0]["writhe"], 0);
    assert_eq!(doc["components"][0]["label"], "2");
    let poly = LaurentPoly::from_json(&doc["invariant"]).unwrap();
    assert_eq!(poly, quantum_integer(3, 1));
}

#[test]
fn invariant_both_reports_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tangle(&dir, "u1.tangle", "algebra A1\nbottom:\ncup_cw 0 [1]\ncap_cw 0\n");
    let out = qknot(&[
        "invariant",
        "--tangle",
        path.to_str().unwrap(),
        "--both",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["ratio"], -1);
    let st = LaurentPoly::from_json(&doc["st"]).unwrap();
    let std_v = LaurentPoly::from_json(&doc["standard"]).unwrap();
    assert_eq!(st, std_v.neg());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Parse error: unknown directive -> 1, message carries the line number.
    let bad = write_tangle(&dir, "bad.tangle", "algebra A1\nbottom:\nfrob 0\n");
    let out = qknot(&["invariant", "--tangle", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 3"));
    // Validation error: bad cap -> 2, message carries the slice index.
    let invalid = write_tangle(
        &dir,
        "invalid.tangle",
        "algebra A1\nbottom:\ncup_cw 0 [1]\ncup_cw 0 [1]\ncap_cw 1\n",
    );
    let out = qknot(&["invariant", "--tangle", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("slice 2"));
    // Unknown CLI flags are parse errors -> 1.
    let out = qknot(&["invariant", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rep_report() {
    let out = qknot(&["rep", "--algebra", "A2", "--weight", "1,0", "--output", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["dim"], 3);
    assert_eq!(doc["minuscule"], true);
    let qdim = LaurentPoly::from_json(&doc["quantum_dimension"]).unwrap();
    assert_eq!(qdim, quantum_integer(3, 1));
    assert_eq!(doc["weight_multiplicities"].as_array().unwrap().len(), 3);
}

#[test]
fn check_suites() {
    for args in [
        vec!["check", "--suite", "relations", "--algebra", "A1", "--weight", "2"],
        vec!["check", "--suite", "zigzag", "--algebra", "A1", "--weight", "2"],
        vec!["check", "--suite", "yangbaxter", "--algebra", "A1", "--weights", "1;1;1"],
        vec![
            "check",
            "--suite",
            "reidemeister",
            "--algebra",
            "A1",
            "--weight",
            "1",
            "--insertions",
            "4",
        ],
    ] {
        let out = qknot(&args);
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(out.status.success(), "{args:?}: {stdout}");
        assert!(stdout.contains("PASS"), "{args:?}: {stdout}");
    }
    // Unknown suite name is a parse error.
    let out = qknot(&["check", "--suite", "frobenius"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknot_homology_matches_closed_form() {
    let out = qknot(&["unknot-homology", "--tmax", "8", "--output", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["closed_form_match"], true);
    // Spot check the t^{-2} coefficient: q^2.
    let terms = doc["series"]["terms"].as_array().unwrap();
    let t_neg2 = terms.iter().find(|e| e["t"] == -2).unwrap();
    assert_eq!(
        LaurentPoly::from_json(&t_neg2["coeff"]).unwrap(),
        LaurentPoly::monomial(2, 1)
    );
    // Text mode prints a PASS line.
    let out = qknot(&["unknot-homology", "--tmax", "6"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS"));
}

#[test]
fn tangle_info_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tangle(&dir, "u2.tangle", UNKNOT2);
    let out = qknot(&["tangle", "--tangle", path.to_str().unwrap(), "--output", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["closed"], true);
    assert_eq!(doc["slices"].as_array().unwrap().len(), 2);
    // The cache directory fills with braid blocks and a second run succeeds
    // from the cached files.
    let cache = dir.path().join("cache");
    for _ in 0..2 {
        let out = qknot(&[
            "invariant",
            "--tangle",
            path.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8(out.stdout).unwrap().trim(),
            "q^2 + 1 + q^-2"
        );
    }
    assert!(std::fs::read_dir(&cache).unwrap().count() >= 1);
}
