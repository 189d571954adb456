use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn repo() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn canring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canring"))
        .args(args)
        .current_dir(repo())
        .env_remove("CANRING_PRIME")
        .env_remove("CANRING_SEED")
        .env_remove("CANRING_TRUNCATION")
        .env_remove("CANRING_TIME_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn verify_report_schema() {
    let out = canring(&["verify", "type-a", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["checks", "kind", "prime", "seed"]);
    assert_eq!(v["kind"], "type-a");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["prime"], 32003);
    let got: Vec<(String, String)> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            assert!(c["millis"].is_u64());
            assert!(c["detail"].is_string());
            (c["name"].as_str().unwrap().to_owned(), c["status"].as_str().unwrap().to_owned())
        })
        .collect();
    let expected = [
        ("homogeneous", "pass"),
        ("(0:0:0:1) not on X", "pass"),
        ("(0:0:1:0) not on X", "pass"),
        ("groebner basis", "info"),
        ("hilbert series", "pass"),
        ("plurigenera", "pass"),
        ("singular locus in chart x1 = 1", "pass"),
        ("singular locus in chart x2 = 1", "pass"),
        ("minimal resolution", "info"),
        ("betti ranks", "pass"),
        ("canonical twist", "pass"),
        ("self-dual", "pass"),
        ("euler characteristic = hilbert series", "pass"),
    ];
    let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(got, expected);
}

#[test]
fn verify_type_b_resolution() {
    let out = canring(&["verify", "type-b", "--resolve", "--format", "text"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 1 9 16 9 1"), "{text}");
    assert!(text.contains("last twist 23, canonical twist 1"), "{text}");
}

#[test]
fn text_and_json_agree() {
    let v = json(&canring(&["verify", "type-dd", "--seed", "3"]));
    let text = String::from_utf8(canring(&["--format", "text", "verify", "type-dd", "--seed", "3"]).stdout).unwrap();
    assert!(text.starts_with("type-dd seed=3 prime=32003: PASS"), "{text}");
    for c in v["checks"].as_array().unwrap() {
        let line = format!("[{}] {}", c["status"].as_str().unwrap(), c["name"].as_str().unwrap());
        assert!(text.contains(&line), "missing {line}");
    }
}

#[test]
fn hilbert_of_corpus_file() {
    let out = canring(&["hilbert", "corpus/type-a.ideal", "--upto", "6"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["coefficients"], serde_json::json!([1, 2, 4, 6, 9, 13, 18]));
    assert_eq!(v["i_surface_invariants"], true);
    assert_eq!(v["dimension"], 3);
}

#[test]
fn member_exit_codes() {
    let out = canring(&["member", "corpus/type-a.ideal", "x1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["results"][0]["member"], false);
    let file = std::fs::read_to_string(repo().join("corpus/type-a.ideal")).unwrap();
    let generator = file.lines().nth(1).unwrap();
    let times_x1 = format!("x1*({generator})");
    let out = canring(&["member", "corpus/type-a.ideal", &times_x1]);
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(code(&canring(&["hilbert", "no/such/file.ideal"])), 2);
    assert_eq!(code(&canring(&["verify", "not-a-kind"])), 2);
    assert_eq!(code(&canring(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ideal");
    std::fs::write(&bad, "ring 32003 [1,1] x,y\nx + q\n").unwrap();
    let out = canring(&["gb", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown variable"));
}

#[test]
fn environment_overrides_defaults() {
    let out = Command::new(env!("CARGO_BIN_EXE_canring"))
        .args(["verify", "type-a"])
        .current_dir(repo())
        .env("CANRING_SEED", "9")
        .env("CANRING_PRIME", "101")
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["prime"], 101);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_canring"))
        .args(["--seed", "4", "verify", "type-a"])
        .current_dir(repo())
        .env("CANRING_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&flag_wins)["seed"], 4);
}

#[test]
fn default_config_passes() {
    let out = canring(&["report", "configs/default.toml"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["reports"].as_array().unwrap().len() >= 10);
}

#[test]
fn degenerate_config_fails_by_name() {
    let out = canring(&["report", "configs/degenerate.toml"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap())
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"(0:0:0:1) not on X"), "{failed:?}");
}

#[test]
fn empty_config_passes() {
    let out = canring(&["report", "configs/empty.toml"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out), serde_json::json!({"passed": true, "reports": []}));
}

#[test]
fn config_with_unknown_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "[[run]]\ntarget = \"type-a\"\ncolour = \"red\"\n").unwrap();
    assert_eq!(code(&canring(&["report", cfg.to_str().unwrap()])), 2);
}

#[test]
fn build_matches_corpus() {
    let out = canring(&["build", "type-dd", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let stored = std::fs::read_to_string(repo().join("corpus/type-dd.ideal")).unwrap();
    assert_eq!(json(&out)["ideal"], stored);
}

#[test]
fn resolve_verb_prints_betti_table() {
    let out = canring(&["resolve", "corpus/type-b.ideal"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ranks"], serde_json::json!([1, 9, 16, 9, 1]));
    assert_eq!(v["last_twists"], serde_json::json!([23]));
    assert_eq!(v["canonical_twist"], 1);
    assert_eq!(v["complete"], true);
}
