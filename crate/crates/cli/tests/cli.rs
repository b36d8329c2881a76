//! End-to-end tests of the `pyr` binary: JSON outputs, exit codes, and
//! byte-determinism of repeated invocations.

use std::process::{Command, Output};

fn pyr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pyr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn oracle_member_matches_wire_format() {
    let out = pyr(&["oracle", "member", "--m", "5", "--order", "20"]);
    let v = stdout_json(&out);
    assert_eq!(v["m"], 5);
    assert_eq!(v["N"], 20);
    assert_eq!(v["member"], true);
    assert_eq!(v["set"], "Z");

    let out = pyr(&["oracle", "member", "--m", "5", "--order", "40"]);
    let v = stdout_json(&out);
    assert_eq!(v["member"], false);
    assert_eq!(v["set"], "none");

    let out = pyr(&["oracle", "member", "--m", "31", "--order", "992"]);
    let v = stdout_json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["set"], "Y");
}

#[test]
fn oracle_rejects_m_seven_with_exit_2() {
    let out = pyr(&["oracle", "member", "--m", "7", "--order", "14"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["error"].as_str().unwrap().contains("7"));
}

#[test]
fn usage_errors_exit_2() {
    let out = pyr(&["construct", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_analyze_round_trip() {
    let dir = std::env::temp_dir().join("pyr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d10.json");
    let path_str = path.to_str().unwrap();

    let out = pyr(&["construct", "dihedral", "--m", "5", "--out", path_str]);
    let v = stdout_json(&out);
    assert_eq!(v["degree"], 5);

    let out = pyr(&["analyze", "--in", path_str]);
    let report = stdout_json(&out);
    assert_eq!(report["m"], 5);
    assert_eq!(report["pyramidal"], true);
    assert_eq!(report["order"], 10);

    // identical invocations produce byte-identical output
    let again = pyr(&["analyze", "--in", path_str]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn witness_construction_and_analysis() {
    let dir = std::env::temp_dir().join("pyr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w20.json");
    let path_str = path.to_str().unwrap();

    let out = pyr(&["oracle", "witness", "--m", "5", "--order", "20", "--out", path_str]);
    stdout_json(&out);
    let out = pyr(&["analyze", "--in", path_str]);
    let report = stdout_json(&out);
    assert_eq!(report["order"], 20);
    assert_eq!(report["m"], 5);
    assert_eq!(report["pyramidal"], true);

    let out = pyr(&["oracle", "witness", "--m", "5", "--order", "40", "--out", path_str]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nt_scans() {
    let out = pyr(&["nt", "zsigmondy", "--a", "2", "--n", "6"]);
    let v = stdout_json(&out);
    assert_eq!(v["exception"], true);

    let out = pyr(&["nt", "zsigmondy", "--a", "2", "--n", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["exception"], false);
    assert_eq!(v["primitive"], 5);

    let out = pyr(&["nt", "mersenne", "--amax", "3", "--nmax", "5"]);
    let v = stdout_json(&out);
    let list = v.as_array().unwrap();
    assert!(list.iter().any(|w| w["p"] == 2 && w["k"] == 3 && w["a"] == 3 && w["n"] == 2));
}

#[test]
fn design_workflow() {
    let dir = std::env::temp_dir().join("pyr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let design = dir.join("kts9.json");
    let design_str = design.to_str().unwrap();

    let out = pyr(&["design", "search", "--v", "9", "--out", design_str]);
    let v = stdout_json(&out);
    assert_eq!(v["v"], 9);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 12);

    let out = pyr(&["design", "validate", "--in", design_str]);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], true);

    let out = pyr(&["design", "aut", "--in", design_str]);
    let v = stdout_json(&out);
    assert!(v["order"].as_u64().unwrap() >= 1);

    let out = pyr(&["design", "pyramidal", "--in", design_str, "--m", "3"]);
    let v = stdout_json(&out);
    if v["found"] == true {
        let out = pyr(&["design", "prop1", "--in", design_str, "--m", "3"]);
        let v = stdout_json(&out);
        assert_eq!(v["verdict"]["verdict"], "verified");
    }

    let out = pyr(&["design", "search", "--v", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn element_cap_env_var_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_pyr"))
        .args(["construct", "dihedral", "--m", "25"])
        .env("PYR_ELEMENT_CAP", "10")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("cap"));
}

#[test]
fn invalid_design_exits_1() {
    let dir = std::env::temp_dir().join("pyr-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"v": 7, "blocks": [[0,1,2],[0,1,3]]}"#,
    )
    .unwrap();
    let out = pyr(&["design", "validate", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
}
