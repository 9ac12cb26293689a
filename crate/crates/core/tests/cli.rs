use std::path::Path;
use std::process::{Command, Output};

use maxwell_photon::pwf::PwfFile;
use serde_json::Value;
use tempfile::TempDir;

fn bin(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxwell-photon"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Value {
    let out = bin(dir, args);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    let line = stdout.lines().find(|l| !l.starts_with('#')).expect("json report line");
    serde_json::from_str(line).expect("report is json")
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    bin(dir, args).status.code().expect("exit code")
}

#[test]
fn make_state_writes_a_readable_pwf() {
    let dir = TempDir::new().unwrap();
    ok(dir.path(), &["make-state", "--kind", "gaussian", "--dims", "8,8,8", "--seed", "3", "--out", "g.pwf"]);
    let file = PwfFile::read_path(dir.path().join("g.pwf")).unwrap();
    assert_eq!(file.header.dims, vec![8, 8, 8]);
    assert_eq!(file.payload.len(), file.header.payload_len());

    // write it again and compare bytes
    file.write_path(dir.path().join("copy.pwf")).unwrap();
    let a = std::fs::read(dir.path().join("g.pwf")).unwrap();
    let b = std::fs::read(dir.path().join("copy.pwf")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn evolve_to_zero_keeps_the_payload() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "random", "--dims", "8,8,8", "--k-max", "3", "--seed", "11", "--out", "r.pwf"]);
    let report = ok(d, &["evolve", "--in", "r.pwf", "--t", "0", "--out", "e.pwf"]);
    assert_eq!(report["energy_drift"].as_f64().unwrap(), 0.0);
    let a = PwfFile::read_path(d.join("r.pwf")).unwrap().payload;
    let b = PwfFile::read_path(d.join("e.pwf")).unwrap().payload;
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn evolve_oracle_agrees() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "gaussian", "--dims", "10,10,10", "--out", "g.pwf"]);
    let report = ok(d, &["evolve", "--in", "g.pwf", "--t", "0.05", "--dt", "0.005", "--oracle", "--out", "e.pwf"]);
    assert!(report["oracle_deviation"].as_f64().unwrap() < 1e-6);
    assert!(report["energy_drift"].as_f64().unwrap() < 1e-12);
}

#[test]
fn norms_report_the_energy_identity() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "single-mode", "--dims", "8,8,8", "--mode", "1,2,0", "--out", "m.pwf"]);
    let report = ok(d, &["norms", "--in", "m.pwf", "--out", "n.json"]);
    assert!(report["identity_residual"].as_f64().unwrap() < 1e-12);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(d.join("n.json")).unwrap()).unwrap();
    assert_eq!(written["momentum_norm"], report["momentum_norm"]);
}

#[test]
fn wigner_writes_csv_and_pwf() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "hermite-gauss", "--order", "0", "--points", "32", "--length", "12", "--out", "h.pwf"]);
    let report = ok(d, &["wigner", "--in", "h.pwf", "--out", "w"]);
    assert!((report["integral"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    let csv = std::fs::read_to_string(d.join("w.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("x,p,W"));
    assert_eq!(csv.lines().count(), 1 + 32 * 32);
    assert!(d.join("w.pwf").exists());
}

#[test]
fn sagnac_scan_at_the_origin_of_the_ground_state() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "hermite-gauss", "--order", "0", "--out", "h.pwf"]);
    let report = ok(d, &["sagnac-scan", "--in", "h.pwf", "--x-range", "0,0", "--p-range", "0,0", "--points", "1"]);
    assert!((report["rate"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let line = ok(d, &["sagnac-scan", "--in", "h.pwf", "--x-range", "-1,1", "--p-range", "0.2,0.2", "--points", "9"]);
    let expected = line["expected_slope"].as_f64().unwrap();
    assert!((line["slope"].as_f64().unwrap() - expected).abs() < 1e-8 * expected);
}

#[test]
fn two_photon_reports_entanglement() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(d, &["make-state", "--kind", "two-photon-gaussian", "--out", "p.pwf"]);
    let report = ok(d, &["two-photon", "--in", "p.pwf"]);
    assert!(report["schmidt_number"].as_f64().unwrap() > 1.0);
    assert!(report["parity_identity_deviation"].as_f64().unwrap() < 1e-8);

    // too small a box: the periodic parity image overlaps the pair
    ok(d, &["make-state", "--kind", "two-photon-gaussian", "--points", "16", "--length", "12", "--out", "small.pwf"]);
    assert_eq!(code(d, &["two-photon", "--in", "small.pwf"]), 3);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    std::fs::write(d.join("cfg.json"), r#"{"kind": "gaussian", "dims": [6, 6, 6], "out": "c.pwf"}"#).unwrap();
    ok(d, &["make-state", "--config", "cfg.json"]);
    assert_eq!(PwfFile::read_path(d.join("c.pwf")).unwrap().header.dims, vec![6, 6, 6]);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(code(d, &["make-state", "--kind", "gaussian", "--width", "0", "--out", "x.pwf"]), 2);
    assert_eq!(code(d, &["make-state", "--kind", "nonsense"]), 2);
    assert_eq!(code(d, &["norms", "--in", "missing.pwf"]), 4);

    std::fs::write(d.join("junk.pwf"), b"not a pwf file").unwrap();
    assert_eq!(code(d, &["norms", "--in", "junk.pwf"]), 4);

    ok(d, &["make-state", "--kind", "gaussian", "--dims", "6,6,6", "--out", "g.pwf"]);
    assert_ne!(code(d, &["wigner", "--in", "g.pwf", "--out", "w"]), 0);
}
