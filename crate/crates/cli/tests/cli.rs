use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn torcfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torcfg")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("torcfg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn coeff_verify_lists_seven_partitions() {
    let out = torcfg(&["coeff", "--k", "5", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["match"] == Value::Bool(true)));
    assert_eq!(rows[0]["partition"], serde_json::json!([5]));
    assert_eq!(rows[0]["closed"], "24");
}

#[test]
fn coeff_verify_beyond_limit_is_usage_error() {
    let out = torcfg(&["coeff", "--k", "9", "--verify"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k <= 6"));
}

#[test]
fn euler_subcommands() {
    let out = torcfg(&["euler", "orbit", "--builtin", "simplex:2", "--d", "1", "--k", "3"]);
    assert_eq!(json(&out)["chi"], "66");
    let out = torcfg(&["euler", "classical", "--chi", "5", "--n", "2", "--k", "2"]);
    assert_eq!(json(&out)["chi"], "20");
    let out = torcfg(&[
        "euler",
        "moment-angle",
        "--builtin",
        "simplex:2",
        "--d",
        "1",
        "--k",
        "2",
        "--assume-small-cover",
    ]);
    assert_eq!(json(&out)["chi"], "-24");
    let out = torcfg(&["euler", "moment-angle", "--builtin", "ngon:6", "--d", "2", "--k", "3"]);
    assert_eq!(json(&out)["chi"], "0");
    let out = torcfg(&["euler", "orbit", "--builtin", "simplex:2", "--d", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn large_values_are_strings() {
    let out = torcfg(&[
        "euler",
        "moment-angle",
        "--builtin",
        "ngon:12",
        "--d",
        "1",
        "--k",
        "8",
        "--assume-small-cover",
    ]);
    let chi = json(&out)["chi"].as_str().unwrap().to_string();
    assert!(chi.trim_start_matches('-').len() > 19, "{chi}");
}

#[test]
fn polytope_file_and_characteristic_function() {
    let square = scratch(
        "square.json",
        r#"{"dim": 2, "vertices": ["a","b","c","d"], "facets": [["a","b"],["b","c"],["c","d"],["d","a"]]}"#,
    );
    let good = scratch("good.json", r#"{"d": 1, "vectors": [[1,0],[0,1],[1,0],[0,1]]}"#);
    let bad = scratch("bad.json", r#"{"d": 2, "vectors": [[1,0],[1,1],[1,2],[1,3]]}"#);
    let out = torcfg(&[
        "hvector",
        "--polytope",
        square.to_str().unwrap(),
        "--lambda",
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["h_vector"], serde_json::json!(["1", "2", "1"]));
    assert_eq!(v["characteristic"]["valid"], true);
    let out = torcfg(&[
        "hvector",
        "--polytope",
        square.to_str().unwrap(),
        "--lambda",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn complex_then_homology_through_stdin() {
    let out = torcfg(&["complex", "lpm", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let mut child = Command::new(env!("CARGO_BIN_EXE_torcfg"))
        .args(["homology", "--complex", "-", "--coeff", "z"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&out.stdout).unwrap();
    let h = child.wait_with_output().unwrap();
    let v = json(&h);
    let betti: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["betti"].as_str().unwrap())
        .collect();
    assert_eq!(betti, ["1", "1", "0"]);
}

#[test]
fn complex_labels() {
    let v = json(&torcfg(&["complex", "kpm", "--m", "5"]));
    assert!(v["vertices"].as_array().unwrap().iter().any(|l| l == "F1xF3"));
    let v = json(&torcfg(&["complex", "sdbd", "--n", "2"]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(
        torcfg(&["complex", "kij", "--n", "3", "--i", "2", "--j", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn spectral_sequence_output() {
    let v = json(&torcfg(&["ss", "polygon", "--m", "4", "--d", "1", "--coeff", "q"]));
    assert_eq!(v["pages"]["2"]["0,1"], "8");
    assert!(v["pages"]["2"].get("1,1").is_none());
    assert_eq!(v["collapse_page"], "2");
    assert_eq!(v["converged"], true);
    let v = json(&torcfg(&["ss", "polygon", "--m", "5", "--d", "2", "--coeff", "z"]));
    let betti: Vec<&str> = v["total"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["betti"].as_str().unwrap())
        .collect();
    assert_eq!(&betti[..5], ["1", "1", "10", "0", "10"]);
    assert_eq!(v["converged"], Value::Null);
    assert_eq!(
        torcfg(&["ss", "simplex", "--n", "3", "--d", "1", "--coeff", "z"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn model_dump_and_out_file() {
    let dump = scratch("model.json", "");
    let result = scratch("result.json", "");
    let out = torcfg(&[
        "ss",
        "simplex",
        "--n",
        "2",
        "--d",
        "2",
        "--dump-model",
        dump.to_str().unwrap(),
        "--out",
        result.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let model: Value = serde_json::from_str(&std::fs::read_to_string(dump).unwrap()).unwrap();
    assert_eq!(model["validation"]["pass"], true);
    let result: Value = serde_json::from_str(&std::fs::read_to_string(result).unwrap()).unwrap();
    assert_eq!(result["converged"], true);
}

#[test]
fn reproduce_tables_pass() {
    for args in [
        &["reproduce", "prop-b1", "--m-max", "8"][..],
        &["reproduce", "prop-b2", "--n-max", "4"],
        &["reproduce", "thm15"],
        &["reproduce", "lemma-annulus"],
        &["reproduce", "prop-hom", "--n-max", "5"],
    ] {
        let out = torcfg(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&out)["pass"], true);
    }
    let out = torcfg(&["reproduce", "prop-b1", "--m-max", "5", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("m=5 d=2") && l.ends_with("PASS")));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ss", "simplex", "--n", "3", "--d", "1"][..],
        &["complex", "kp", "--builtin", "cube:3"],
    ] {
        let a = torcfg(args).stdout;
        let b = Command::new(env!("CARGO_BIN_EXE_torcfg"))
            .args(args)
            .env("TORCFG_THREADS", "1")
            .output()
            .unwrap()
            .stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_torcfg"))
        .args(["coeff", "--k", "3"])
        .env("TORCFG_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
