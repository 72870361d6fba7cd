use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scene(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/scenes").join(format!("{name}.scene"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(format!("{name}.json"))
}

fn hord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hord")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_prints_the_canonical_trace() {
    let out = hord(&["run", "--scene", s(&scene("cusp_char2"))]);
    assert_eq!(out.status.code(), Some(0));
    let expected = fs::read_to_string(golden("cusp_char2")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn trace_out_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let out = hord(&[
        "run",
        "--scene",
        s(&scene("stage_ab_q32")),
        "--trace-out",
        s(&t),
        "--verify",
        s(&golden("stage_ab_q32")),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&t).unwrap(), fs::read_to_string(golden("stage_ab_q32")).unwrap());

    let bad = dir.path().join("bad.json");
    let text = fs::read_to_string(golden("stage_ab_q32")).unwrap().replacen("\"ell\": 1", "\"ell\": 7", 1);
    fs::write(&bad, text).unwrap();
    let out = hord(&["run", "--scene", s(&scene("stage_ab_q32")), "--trace-out", s(&t), "--verify", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("record 1") && err.contains(".ell"), "{err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.scene");
    fs::write(&broken, "[field]\nchar: 2\nvars: z, x\n[algebra]\ngen: z^2 + q W^2\n").unwrap();
    let out = hord(&["run", "--scene", s(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));

    assert_eq!(hord(&["run", "--scene", s(&dir.path().join("missing.scene"))]).status.code(), Some(2));
    assert_eq!(hord(&["run", "--scene", s(&scene("errors"))]).status.code(), Some(1));
    assert_eq!(hord(&["run", "--scene", s(&scene("empty"))]).status.code(), Some(0));
}

#[test]
fn monomial_subcommands() {
    let out = hord(&["resolve", "--scene", s(&scene("strong_cross_char2"))]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\"resolved\": true"));

    let out = hord(&["strong-check", "--scene", s(&scene("nonstrong_char3"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("\"witness\": \"origin\""));

    // refused outside the strong case
    assert_eq!(hord(&["resolve", "--scene", s(&scene("nonstrong_char3"))]).status.code(), Some(1));
    let out = hord(&["monomial-track", "--scene", s(&scene("strong_cube_char3"))]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tau_oracle_flag() {
    let out = hord(&["run", "--scene", s(&scene("tau_x2y2")), "--tau-oracle-field-extension", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: String = String::from_utf8(out.stdout).unwrap();
    assert!(v.contains("\"extension\": 2"));
    assert_eq!(hord(&["run", "--scene", s(&scene("tau_x2y2")), "--tau-oracle-field-extension", "9"]).status.code(), Some(2));
}
