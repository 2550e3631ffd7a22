use std::process::{Command, Output};

use serde_json::Value;

fn spps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spps"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = spps(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn assert_one_line_error(args: &[&str]) {
    let out = spps(args);
    assert!(!out.status.success(), "{args:?} succeeded");
    assert!(out.stdout.is_empty(), "{args:?} wrote to stdout");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{args:?}: {err:?}");
    assert!(err.starts_with("error: "), "{err:?}");
}

#[test]
fn analyze_qec3_at_quarter_weight() {
    let v = json(&["analyze", "--code", "qec3", "--a", "1/4"]);
    assert_eq!(v["report"]["ratio_total"]["exact"], "3/4");
    assert_eq!(v["report"]["a_star"]["exact"], "1/4");
    assert_eq!(v["report"]["alpha"]["exact"], "3");
}

#[test]
fn analyze_dfs4x2_at_half_weight() {
    let v = json(&["analyze", "--code", "dfs4x2", "--a", "0.5"]);
    assert_eq!(v["report"]["ratio_total"]["exact"], "2/3");
    assert_eq!(v["report"]["alpha"]["exact"], "4/3");
}

#[test]
fn analyze_full_pseudo_pure() {
    let v = json(&["analyze", "--full-pp", "--n", "3"]);
    assert_eq!(v["report"]["ratio_total"]["exact"], "3/7");
    let v = json(&["analyze", "--full-pp", "--n", "4"]);
    assert_eq!(v["report"]["ratio_total"]["exact"], "4/15");
}

#[test]
fn analyze_ns3_decoded_polynomial() {
    let v = json(&["analyze", "--code", "ns3", "--a", "1"]);
    assert_eq!(v["pauli_decoded"]["text"], "1/8*III + 1/8*ZII + 1/8*IZI + 1/8*ZZI");
    assert_eq!(v["report"]["ratio_total"]["exact"], "2/3");
}

#[test]
fn analyze_layout_mode() {
    let v = json(&["analyze", "--n", "4", "--l", "1", "--s", "1"]);
    assert_eq!(v["report"]["a_star"]["exact"], "1/4");
}

#[test]
fn scan_snr_csv() {
    let out = spps(&["scan-snr", "--n", "10", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,spps_snr,full_pp_snr");
    assert_eq!(lines.len(), 6);
    assert!(lines[2].starts_with("4,1.41421356237,"));
    assert!(lines[3].starts_with("6,1.45945945946,"));
}

#[test]
fn scan_snr_json() {
    let v = json(&["scan-snr", "--n", "4"]);
    assert_eq!(v["rows"].as_array().map(Vec::len), Some(2));
}

#[test]
fn simulate_qec3_corrects_every_single_flip() {
    for site in ["none", "x1", "x2", "x3"] {
        let v = json(&["simulate", "--code", "qec3", "--error", site]);
        assert_eq!(v["correction"]["qubit1_coefficient"]["exact"], "1/4", "{site}");
    }
}

#[test]
fn simulate_dfs2_dephasing_does_not_leak() {
    let v = json(&["simulate", "--code", "dfs2", "--noise", "collective-z", "--phi", "0.9"]);
    assert!(v["protection"]["leakage"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn metrics_identity_channel() {
    let v = json(&["metrics", "--code", "dfs2"]);
    for key in ["c_total", "f_bar", "f_bar_l"] {
        assert_eq!(v["metrics"][key].as_f64(), Some(1.0), "{key}");
    }
    assert_eq!(v["metrics"]["c_blocks"]["LL"].as_f64(), Some(1.0));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.json"))).collect();
    for p in &paths {
        let out = spps(&[
            "simulate", "--code", "ns3", "--noise", "collective", "--seed", "11", "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}

#[test]
fn bad_input_gives_one_line_error() {
    assert_one_line_error(&["analyze", "--code", "steane"]);
    assert_one_line_error(&["analyze", "--code", "qec3", "--a", "2"]);
    assert_one_line_error(&["scan-snr", "--n", "7"]);
    assert_one_line_error(&["analyze", "--code", "qec3", "--format", "csv"]);
    assert_one_line_error(&["simulate", "--code", "dfs2", "--error", "x1"]);
    assert_one_line_error(&["simulate", "--code", "qec3", "--noise", "wobble"]);
    assert_one_line_error(&["analyze", "--bogus"]);
    assert_one_line_error(&["launch"]);
}
