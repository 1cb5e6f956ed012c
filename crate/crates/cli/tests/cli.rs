use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nfcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nfcodes")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn reference_code(dir: &TempDir) -> PathBuf {
    let code = path(dir, "code.json");
    let o = nfcodes(&["code", "new", "--poly", "1,0,1", "--primes", "5,13,17,29,37,41", "--k", "2", "--out", s(&code)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    code
}

#[test]
fn code_new_picks_smallest_roots() {
    let dir = TempDir::new().unwrap();
    let code = reference_code(&dir);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(code).unwrap()).unwrap();
    let roots: Vec<u64> = v["primes"].as_array().unwrap().iter().map(|p| p["root"].as_u64().unwrap()).collect();
    assert_eq!(roots, vec![2, 5, 4, 12, 6, 9]);
    assert_eq!(v["k"], 2);
}

#[test]
fn encode_corrupt_decode_round_trip() {
    let dir = TempDir::new().unwrap();
    let code = reference_code(&dir);
    let word = path(&dir, "word.json");
    let o = nfcodes(&["encode", "--code", s(&code), "--message", "3+2*t", "--out", s(&word)]);
    assert!(o.status.success());
    let w: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&word).unwrap()).unwrap();
    assert_eq!(w["residues"], serde_json::json!([2, 0, 11, 27, 15, 21]));

    let bad = path(&dir, "bad.json");
    let o = nfcodes(&["corrupt", "--word", s(&word), "--code", s(&code), "--errors", "1", "--seed", "4", "--out", s(&bad)]);
    assert!(o.status.success());

    for rf in ["hensel", "reference"] {
        let o = nfcodes(&["decode", "--code", s(&code), "--word", s(&bad), "--root-finder", rf]);
        assert!(o.status.success());
        let r = json(&o);
        let msgs: Vec<&str> = r["codewords"].as_array().unwrap().iter().map(|c| c["message"].as_str().unwrap()).collect();
        assert!(msgs.contains(&"3+2*t"), "{msgs:?}");
        assert_eq!(r["params"]["strategy"], "practical");
    }
}

#[test]
fn explicit_strategy_and_dimension_guard() {
    let dir = TempDir::new().unwrap();
    let code = reference_code(&dir);
    let word = path(&dir, "word.json");
    nfcodes(&["encode", "--code", s(&code), "--message", "[-5, 7]", "--out", s(&word)]);
    let o = nfcodes(&[
        "decode", "--code", s(&code), "--word", s(&word), "--strategy", "explicit", "--l", "2", "--weights", "1,1,1,1,1,2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["params"]["l"], 2);

    let o = nfcodes(&["decode", "--code", s(&code), "--word", s(&word), "--strategy", "explicit"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nfcodes(&["decode", "--code", s(&code), "--word", s(&word), "--strategy", "paper"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the configured limit"));
}

#[test]
fn oracle_and_johnson() {
    let dir = TempDir::new().unwrap();
    let code = reference_code(&dir);
    let word = path(&dir, "word.json");
    nfcodes(&["encode", "--code", s(&code), "--message", "3+2*t", "--out", s(&word)]);
    let o = nfcodes(&["oracle", "--code", s(&code), "--word", s(&word), "--threshold", "17.6"]);
    assert!(o.status.success());
    let hits = json(&o)["ball_hits"].as_array().unwrap().clone();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["message"], "3+2*t");

    let o = nfcodes(&["johnson", "--code", s(&code), "--epsilon", "1"]);
    let j = json(&o);
    assert_eq!((j["t"].as_u64(), j["T"].as_str(), j["d_min_lb"].as_u64()), (Some(4), Some("32045"), Some(3)));
}

#[test]
fn experiment_reports_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = path(&dir, "cfg.json");
    std::fs::write(
        &cfg,
        r#"{
            "code": {"poly": [1, 0, 1], "primes": [{"p": 5, "root": 2}, {"p": 13, "root": 5}, {"p": 17, "root": 4},
                     {"p": 29, "root": 12}, {"p": 37, "root": 6}, {"p": 41, "root": 9}], "k": 2},
            "message_source": {"kind": "random", "seed": 5},
            "error_count": 1,
            "trials": 3,
            "channel_seed": 8
        }"#,
    )
    .unwrap();
    let a = nfcodes(&["experiment", "--config", s(&cfg)]);
    let b = nfcodes(&["experiment", "--config", s(&cfg)]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["aggregate"]["violations"], 0);
    assert!(r["prng"].as_str().unwrap().starts_with("ChaCha8"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(nfcodes(&["bogus"]).status.code(), Some(1));
    assert_eq!(nfcodes(&["encode", "--message", "1"]).status.code(), Some(1));
    assert_eq!(nfcodes(&["johnson", "--code", "/nonexistent/code.json"]).status.code(), Some(1));
    let o = nfcodes(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("selftest"));
}

#[test]
fn invalid_inputs_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let code = path(&dir, "code.json");
    let o = nfcodes(&["code", "new", "--poly", "-1,0,1", "--primes", "5", "--k", "1", "--out", s(&code)]);
    assert_eq!(o.status.code(), Some(1));
    let o = nfcodes(&["code", "new", "--poly", "1,0,1", "--primes", "13,5", "--k", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let code = reference_code(&dir);
    let word = path(&dir, "word.json");
    std::fs::write(&word, r#"{"residues": [1, 2, 3]}"#).unwrap();
    let o = nfcodes(&["decode", "--code", s(&code), "--word", s(&word)]);
    assert_eq!(o.status.code(), Some(1));
    let o = nfcodes(&["corrupt", "--code", s(&code), "--word", s(&word), "--errors", "9"]);
    assert_eq!(o.status.code(), Some(1));
}
