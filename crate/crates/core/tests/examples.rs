#[allow(dead_code)]
#[path = "../examples/full_pseudo_pure.rs"]
mod full_pseudo_pure;
#[allow(dead_code)]
#[path = "../examples/dfs_pair.rs"]
mod dfs_pair;
#[allow(dead_code)]
#[path = "../examples/noiseless_subsystem.rs"]
mod noiseless_subsystem;
#[allow(dead_code)]
#[path = "../examples/bitflip_code.rs"]
mod bitflip_code;
#[allow(dead_code)]
#[path = "../examples/snr_scan.rs"]
mod snr_scan;
#[allow(dead_code)]
#[path = "../examples/control_metrics.rs"]
mod control_metrics;
#[allow(dead_code)]
#[path = "../examples/custom_encoding.rs"]
mod custom_encoding;

#[test]
fn full_pseudo_pure_runs() {
    let out = full_pseudo_pure::run_example().unwrap();
    assert!(out.contains("3  3/7  3/7  3/7"));
    assert!(out.contains("8  8/255  8/255  8/255"));
}

#[test]
fn dfs_pair_runs() {
    let out = dfs_pair::run_example().unwrap();
    assert!(out.contains("dfs2 deviation: 1/8*ZI - 1/8*IZ"));
    assert!(out.contains("dfs4x2 ratio_total: 2/3"));
}

#[test]
fn noiseless_subsystem_runs() {
    let out = noiseless_subsystem::run_example().unwrap();
    assert!(out.contains("1/8*III + 1/8*ZII + 1/8*IZI + 1/8*ZZI  ratio_total 2/3"));
    assert!(out.contains("a = 1/2: decoded 1/8*III + 1/16*ZII + 1/16*ZZI  ratio_total 1/2"));
}

#[test]
fn bitflip_code_runs() {
    let out = bitflip_code::run_example().unwrap();
    assert!(out.contains("a* = 1/4  ratio_total = 3/4"));
    assert_eq!(out.matches("qubit 1 deviation 1/8*Z  ancillas 1/4*II\n").count(), 4);
}

#[test]
fn snr_scan_runs() {
    let out = snr_scan::run_example().unwrap();
    assert!(out.contains("4  0.353553  Saturated  1.414214"));
    assert!(out.contains("6  0.333333  Balanced  1.459459"));
}

#[test]
fn control_metrics_runs() {
    let out = control_metrics::run_example().unwrap();
    assert!(out.contains("dfs2 / identity: C = 1.0000"));
    assert!(out.contains("F_L = 1.0000"));
}

#[test]
fn custom_encoding_runs() {
    let out = custom_encoding::run_example().unwrap();
    assert!(out.contains("a* = 1/8"));
    assert!(out.contains("round trip unitary error: 0.0e0"));
}
