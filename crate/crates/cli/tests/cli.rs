use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const SL2_F3: &str = r#"{"ring":{"p":3,"n":1,"f":1},"generators":[[[1],[1],[0],[1]],[[1],[0],[1],[1]]]}"#;
const SL2_Z9: &str = r#"{"ring":{"p":3,"n":2,"f":1},"generators":[[[1],[1],[0],[1]],[[1],[0],[1],[1]]]}"#;
const GAMMA3_Z27: &str =
    r#"{"ring":{"p":3,"n":3,"f":1},"generators":[[[1],[3],[0],[1]],[[1],[0],[3],[1]],[[4],[0],[0],[7]]]}"#;

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().expect("spawn twistlab")
}

fn json_out(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_err(out: &Output, code: i32) -> Value {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn analyze_sl2_f3_is_tetrahedral() {
    let v = json_out(&twistlab(&["analyze", "--input", SL2_F3]));
    assert_eq!(v["projective_class"], "A4");
    assert_eq!(v["group_order"], 24);
}

#[test]
fn trivial_image_is_not_regular() {
    let input = r#"{"ring":{"p":5,"n":1,"f":1},"generators":[[[1],[0],[0],[1]]]}"#;
    let v = json_out(&twistlab(&["analyze", "--input", input]));
    assert_eq!(v["projective_class"], "cyclic(1)");
    assert_eq!(v["regular"], false);
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(["analyze", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SL2_F3.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json_out(&out)["projective_class"], "A4");
}

#[test]
fn input_errors_exit_2() {
    let bad_poly = r#"{"ring":{"p":3,"n":2,"f":1,"ext":{"var":"u","minpoly":[1,0,1]}},"generators":[]}"#;
    let e = json_err(&twistlab(&["analyze", "--input", bad_poly]), 2);
    assert_eq!(e["error"]["kind"], "input");
    let singular = r#"{"ring":{"p":3,"n":1,"f":1},"generators":[[[1],[1],[1],[1]]]}"#;
    json_err(&twistlab(&["analyze", "--input", singular]), 2);
    json_err(&twistlab(&["analyze", "--input", r#"{"ring":{"p":3,"n":1,"f":1}}"#]), 2);
    json_err(&twistlab(&["analyze", "--input", "/nonexistent/file.json"]), 2);
    json_err(&twistlab(&["analyze", "--input", SL2_F3, "--caps", "colour=3"]), 2);
    json_err(&twistlab(&["frobnicate"]), 2);
}

#[test]
fn caps_exit_3() {
    let e = json_err(&twistlab(&["analyze", "--input", SL2_Z9, "--caps", "group=100"]), 3);
    assert_eq!(e["error"]["kind"], "cap_exceeded");
    json_err(&twistlab(&["analyze", "--input", SL2_Z9, "--caps", "ring=8"]), 3);
}

#[test]
fn pinklie_levels_of_gamma3() {
    let v = json_out(&twistlab(&["pinklie", "--input", GAMMA3_Z27, "--depth", "3"]));
    let cards: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["cardinality"].as_u64().unwrap()).collect();
    assert_eq!(cards, [729, 27, 1]);
    assert!(v["levels"].as_array().unwrap().iter().all(|l| l["strong"] == true));
}

#[test]
fn pinklie_requires_sr1() {
    let e = json_err(&twistlab(&["pinklie", "--input", SL2_Z9]), 2);
    assert_eq!(e["error"]["kind"], "precondition");
}

#[test]
fn level_examples() {
    let full = json_out(&twistlab(&["level", "--input", SL2_Z9]));
    assert_eq!(full["level_cardinality"], 9);
    let gamma = json_out(&twistlab(&["level", "--input", GAMMA3_Z27]));
    assert_eq!(gamma["level_cardinality"], 9);
    assert_eq!(gamma["level_ideal_generators"], serde_json::json!([[3]]));
    let borel = r#"{"ring":{"p":3,"n":2,"f":1},"generators":[[[1],[1],[0],[1]],[[2],[0],[0],[5]]]}"#;
    let b = json_out(&twistlab(&["level", "--input", borel]));
    assert_eq!(b["level_cardinality"], 1);
}

#[test]
fn level_with_conjugator_file() {
    let dir = std::env::temp_dir().join(format!("twistlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("conj.json");
    std::fs::write(&path, "[[[1],[0],[0],[1]],[[0],[1],[1],[0]]]").unwrap();
    let v = json_out(&twistlab(&["level", "--input", GAMMA3_Z27, "--conjugators", path.to_str().unwrap()]));
    assert_eq!(v["level_cardinality"], 9);
    std::fs::write(&path, "[[[1],[1],[1],[1]]]").unwrap();
    json_err(&twistlab(&["level", "--input", GAMMA3_Z27, "--conjugators", path.to_str().unwrap()]), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cst_over_f9_finds_frobenius() {
    // SL2(F3) viewed over F9: Frobenius fixes every trace
    let input = r#"{"ring":{"p":3,"n":1,"f":2},"generators":[[[1],[1],[0],[1]],[[1],[0],[1],[1]]]}"#;
    let v = json_out(&twistlab(&["cst", "--input", input]));
    assert_eq!(v["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(v["abelian"], true);
    assert_eq!(v["fixed_subring_cardinality"], 3);
}

#[test]
fn output_is_deterministic_and_echo_round_trips() {
    let dir = std::env::temp_dir().join(format!("twistlab-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for p in [&a, &b] {
        let out = twistlab(&["analyze", "--input", SL2_F3, "--output", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    let echo = v["input"].to_string();
    let again = json_out(&twistlab(&["analyze", "--input", &echo]));
    assert_eq!(again, v);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_filter_selects_adjoint_instances() {
    let out = twistlab(&["verify", "--filter", "adjoint"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let runs: Vec<&str> = text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(runs.len(), 2);
    assert!(runs.iter().all(|l| l.starts_with("PASS") && l.contains("adjoint")));
    assert!(text.ends_with("2 passed, 0 failed\n"));
}

#[test]
fn verify_perturbed_fails_with_exit_1() {
    let out = twistlab(&["verify", "--filter", "c01.congrL1.z27", "--perturb"]);
    let e = json_err(&out, 1);
    assert_eq!(e["error"]["kind"], "verification");
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL c01.congrL1.z27"));
}

#[test]
fn verify_bad_filter() {
    json_err(&twistlab(&["verify", "--filter", "("]), 2);
    json_err(&twistlab(&["verify", "--filter", "no-such-instance"]), 2);
}

#[test]
fn help_exits_zero() {
    let out = twistlab(&["--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify"));
}
