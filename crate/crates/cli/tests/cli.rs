//! End-to-end tests of the `rankhull` binary: exit codes, byte-identical
//! reruns, and the file-based code input path.

use std::io::Write;
use std::process::{Command, Output};

fn rankhull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankhull"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn demo_cases_exit_zero() {
    for case in ["5.1", "5.2", "5.3", "remark-3.8"] {
        let out = rankhull(&["demo", "--case", case]);
        assert!(
            out.status.success(),
            "demo --case {case} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report: serde_json::Value =
            serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
        assert_eq!(report["command"], "demo");
        assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    }
}

#[test]
fn identical_arguments_give_byte_identical_output() {
    let args = [
        "mrd-with-hull", "--q", "2", "--m", "2", "--k", "2", "--ell", "1", "--s", "1",
        "--seed", "42",
    ];
    let first = rankhull(&args);
    assert!(first.status.success());
    for _ in 0..3 {
        let again = rankhull(&args);
        assert_eq!(first.stdout, again.stdout);
    }
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand (clap) and unknown shipped tower (resolver).
    let out = rankhull(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rankhull(&["basis", "--q", "7", "--m", "9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rankhull(&["demo", "--case", "99"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rankhull(&["hull", "--code", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mathematical_failures_exit_one() {
    // The Hermitian (q, n) = (2, 2) obstruction surfaces as a failed check.
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"field":{{"p":2,"e":1,"m":1,"base_modulus":null,"top_modulus":[1,1,1]}},
            "n":2,"k":1,"G":[[1,2]]}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let out = rankhull(&["lcd", "--code", path]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("hull-variation"), "names the failing check");

    // Targets above the hull dimension fail the same way.
    let out = rankhull(&["vary-hull", "--code", path, "--target", "2"]);
    assert_eq!(out.status.code(), Some(1));

    // The Euclidean flavor on the same code succeeds.
    let out = rankhull(&["lcd", "--code", path, "--flavor", "euclidean"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hull_command_reads_code_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    // The worked [4,2] code over F16, with elements in both encodings.
    write!(
        file,
        r#"{{"field":{{"p":2,"e":1,"m":2,"base_modulus":null,"top_modulus":[1,1,0,0,1]}},
            "n":4,"k":2,"G":[[1,1,1,1],[0,[1,0,0,0],2,3]]}}"#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let out = rankhull(&["hull", "--code", path]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["outputs"]["h"], 1);
    assert_eq!(report["outputs"]["hull_basis"][0], serde_json::json!([1, 1, 1, 1]));

    let out = rankhull(&["spectrum", "--code", path]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["outputs"]["group_size"], 20160);

    let out = rankhull(&["vary-hull", "--code", path, "--target", "0"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["outputs"]["trace"]["final_h"], 0);
    assert_eq!(report["outputs"]["code"]["G"][0], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn field_check_and_basis_and_gabidulin() {
    let out = rankhull(&["field-check", "--q", "3", "--m", "1"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["outputs"]["field_size"], 9);

    let out = rankhull(&["basis", "--q", "3", "--m", "1"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["outputs"]["alpha"], serde_json::json!([3, 7]));
    assert_eq!(report["outputs"]["lambda"], 4);

    let out = rankhull(&["gabidulin", "--q", "2", "--m", "2", "--k", "2", "--s", "3"]);
    assert!(out.status.success());

    // A custom (non-basis) alpha is a mathematical failure, not a crash.
    let out = rankhull(&[
        "gabidulin", "--q", "2", "--m", "2", "--k", "2", "--s", "1", "--alpha", "1,2,3,0",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // A reducible modulus is reported as a failed field check.
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"{{"p":2,"e":1,"m":2,"base_modulus":null,"top_modulus":[1,0,1,0,1]}}"#
    )
    .unwrap();
    let out = rankhull(&["field-check", "--field", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn so_mrd_command() {
    let out = rankhull(&["so-mrd", "--q", "4", "--m", "1", "--k", "1"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "gram-vanishes" && c["pass"] == true));

    // k above m is rejected mathematically.
    let out = rankhull(&["so-mrd", "--q", "4", "--m", "1", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
}
