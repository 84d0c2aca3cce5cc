//! End-to-end checks of the binary: constructs, verifies, exit codes,
//! and the JSON round trip through `verify`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multideriv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn basis_json_has_expected_exponents() {
    let out = run(&[
        "basis", "--h", "4", "--a1", "2", "--a2", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["exponents"], serde_json::json!([2, 2]));
    assert_eq!(value["verified"], serde_json::json!(true));
}

#[test]
fn basis_handles_negative_multiplicities() {
    let out = run(&[
        "basis", "--h", "6", "--a1", "-2", "--a2", "-2", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["exponents"], serde_json::json!([-6, -6]));
    assert!(value["case"].as_str().unwrap().starts_with("dual"));
}

#[test]
fn emitted_certificate_re_verifies_bit_identically() {
    let out = run(&[
        "basis", "--h", "6", "--a1", "1", "--a2", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("multideriv_cli_test_cert.json");
    std::fs::write(&path, out.stdout.clone()).unwrap();

    let verify = run(&[
        "verify",
        "--h",
        "6",
        "--a1",
        "1",
        "--a2",
        "1",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(verify.status.success());
    assert_eq!(stdout(&out).trim(), stdout(&verify).trim());
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_rejects_wrong_multiplicity_as_invalid_input() {
    let out = run(&[
        "basis", "--h", "4", "--a1", "1", "--a2", "1", "--format", "json",
    ]);
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("multideriv_cli_test_cert2.json");
    std::fs::write(&path, out.stdout).unwrap();
    let verify = run(&[
        "verify",
        "--h",
        "4",
        "--a1",
        "0",
        "--a2",
        "2",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_fails_on_non_basis_with_exit_1() {
    // a bare pair that is not a basis of D(A, (1,1)): {d1, d2}
    let zero = serde_json::json!({"num": [], "den_q1": 0, "den_q2": 0});
    let one = |i: u32, j: u32| {
        serde_json::json!({
            "num": [{"i": i, "j": j, "c": {"two_h": 8, "coeffs": ["1/1","0/1","0/1","0/1"]}}],
            "den_q1": 0, "den_q2": 0,
        })
    };
    let pair = serde_json::json!({
        "basis": [
            {"c1": one(0, 0), "c2": zero, "pdeg": 0},
            {"c1": zero, "c2": one(0, 0), "pdeg": 0},
        ],
    });
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("multideriv_cli_test_pair.json");
    std::fs::write(&path, serde_json::to_vec(&pair).unwrap()).unwrap();
    let verify = run(&[
        "verify",
        "--h",
        "4",
        "--a1",
        "1",
        "--a2",
        "1",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(verify.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn exponents_grid_matches_table() {
    let out = run(&["exponents", "--h", "6", "--range", "1", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cells = value["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 9);
    let c11 = cells
        .iter()
        .find(|c| c["a1"] == 1 && c["a2"] == 1)
        .unwrap();
    assert_eq!(c11["exponents"], serde_json::json!([1, 5]));
    assert_eq!(c11["constructed"], serde_json::json!([1, 5]));
}

#[test]
fn orbit_swap_swaps_multiplicities() {
    let plain = run(&[
        "basis", "--h", "4", "--a1", "0", "--a2", "2", "--format", "json",
    ]);
    let swapped = run(&[
        "basis",
        "--h",
        "4",
        "--a1",
        "2",
        "--a2",
        "0",
        "--orbit-swap",
        "--format",
        "json",
    ]);
    assert!(plain.status.success() && swapped.status.success());
    assert_eq!(stdout(&plain), stdout(&swapped));
}

#[test]
fn odd_h_is_invalid_input() {
    let out = run(&["show", "--h", "5"]);
    assert_eq!(out.status.code(), Some(2));
}
