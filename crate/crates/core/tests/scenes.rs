//! Runs every scene in `tests/scenes` and compares the canonical trace with
//! `tests/golden`. Set `HORD_UPDATE_GOLDEN=1` to rewrite the golden files.

use std::fs;
use std::path::{Path, PathBuf};

use hord_core::runner::{run_scene, RunOptions};
use hord_core::scene::parse_scene;
use hord_core::trace::{canonical_text, verify_trace};
use serde_json::Value;

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn scenes() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(dir("scenes"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "scene"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn trace(name: &str) -> Value {
    let text = fs::read_to_string(dir("scenes").join(format!("{name}.scene"))).unwrap();
    run_scene(&parse_scene(&text).unwrap(), &RunOptions::default(), None).trace
}

fn records(name: &str) -> Vec<Value> {
    trace(name)["records"].as_array().unwrap().clone()
}

#[test]
fn golden_traces() {
    let update = std::env::var_os("HORD_UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, text) in scenes() {
        let scene = parse_scene(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let out = canonical_text(&run_scene(&scene, &RunOptions::default(), None).trace);
        let again = canonical_text(&run_scene(&scene, &RunOptions::default(), None).trace);
        assert_eq!(out, again, "{name}: trace is not deterministic");
        let golden = dir("golden").join(format!("{name}.json"));
        if update {
            fs::write(&golden, &out).unwrap();
            continue;
        }
        let g = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
        if let Err(e) = verify_trace(&out, &g) {
            failures.push(format!("{name}: {e}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn cusp_values() {
    let r = records("cusp_char2");
    assert_eq!(r[0]["tau"], 1);
    assert_eq!(r[2]["value"], "3/2");
    assert_eq!(r[2]["p_formula"], "3/2");
    assert_eq!(r[3]["g"][0], "z^2 + x W^2");
    assert_eq!(r[4]["monomial"]["exponents"]["H1"], 1);
    assert_eq!(r[4]["monomial"]["s"], 2);
    assert_eq!(r[6]["centers"], serde_json::json!([]));
}

#[test]
fn stage_ab_matches_formula() {
    let r = records("stage_ab_q32");
    let ells: Vec<i64> = r[1..].iter().map(|x| x["ell"].as_i64().unwrap()).collect();
    assert_eq!(ells, vec![1, 2, 3, 4, 5]);
    let r = records("stage_ab_q2");
    let ells: Vec<i64> = r.iter().map(|x| x["ell"].as_i64().unwrap()).collect();
    assert_eq!(ells, vec![2, 4]);
}

#[test]
fn normalization_values() {
    let r = records("normalize_q");
    assert_eq!(r[0]["slope"], "1/1");
    assert_eq!(r[1]["value"], "3/2");
    assert_eq!(r[1]["iterations"][0], 1);
    let r = records("normalize_char3");
    assert_eq!(r[1]["value"], "4/3");
}

#[test]
fn tau_values() {
    assert_eq!(records("tau_x2y2")[0]["tau"], 1);
    assert_eq!(records("tau_x2y2_q")[0]["tau"], 2);
    assert_eq!(records("tau_node")[0]["tau"], 3);
}

#[test]
fn strong_and_non_strong_scenes() {
    for name in ["cusp_char2", "strong_cross_char2", "strong_x5y4_char2", "strong_unit_char3", "strong_cube_char3", "strong_two_sections"] {
        let t = trace(name);
        assert_eq!(t["ok"], true, "{name}");
        let resolve = t["records"].as_array().unwrap().iter().find(|r| r["command"] == "resolve").unwrap();
        assert_eq!(resolve["resolved"], true, "{name}");
    }
    for name in ["nonstrong_char2", "nonstrong_char3"] {
        let r = records(name);
        let check = r.iter().find(|r| r["command"] == "strong-check").unwrap();
        assert_eq!(check["strong"], false, "{name}");
        assert_eq!(check["witness"], "origin", "{name}");
    }
    let r = records("nonstrong_char2");
    assert!(r[2]["error"].as_str().unwrap().contains("strong monomial"));
}

#[test]
fn errors_do_not_stop_the_script() {
    let t = trace("errors");
    assert_eq!(t["ok"], false);
    assert!(t["records"][0]["error"].is_string());
    assert!(t["records"][1]["error"].is_string());
    assert_eq!(t["records"][2]["value"], "3/2");
    assert_eq!(trace("empty")["records"], serde_json::json!([]));
}
