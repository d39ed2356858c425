use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("dunkl-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn group_info_reports_mu() {
    let out = dunkl(&["group-info", "--group", "z2", "--m", "2", "--kappa", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["mu"], "6/1");
    let out = dunkl(&["group-info", "--group", "b", "--m", "2", "--kappa", "1,2"]);
    let v = json(&out);
    assert_eq!(v["mu"], "14/1");
    assert_eq!(v["gamma"], "6/1");
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
}

#[test]
fn parallel_roots_are_rejected() {
    let path = temp_file(
        "bad.json",
        r#"{"m":2,"positive_roots":[["1","0"],["2","0"]],"multiplicities":[{"orbit_rep":["1","0"],"kappa":"1"}]}"#,
    );
    let out = dunkl(&["group-info", "--group-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not reduced"));
}

#[test]
fn hermite_record_for_the_rank_one_example() {
    let out = dunkl(&["hermite", "--group", "z2", "--m", "1", "--kappa", "0", "--t", "1", "--ell", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["radial_coeffs"], serde_json::json!(["2/1", "-4/1"]));
    assert_eq!(v["mu"], "1/1");
    let out = dunkl(&["hermite", "--group", "z2", "--m", "2", "--kappa", "1,2", "--t", "0", "--ell", "1", "--h-index", "1"]);
    let v = json(&out);
    assert_eq!(v["polynomial"], v["harmonic"]);
}

#[test]
fn all_constructions_agree() {
    let out = dunkl(&[
        "hermite", "--group", "b", "--m", "2", "--kappa", "1/2,3", "--t", "2", "--ell", "2", "--construction", "all",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["recursion"]["polynomial"], v["rodrigues"]["polynomial"]);
    assert_eq!(v["recursion"]["polynomial"], v["laguerre"]["polynomial"]);
}

#[test]
fn decompose_paths() {
    let x1sq = r#"{"m":2,"terms":[{"c":"1","e":[2,0]}]}"#;
    let out = dunkl(&["decompose", "--group", "z2", "--m", "2", "--kappa", "0,0", "--poly", x1sq]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["components"].as_array().unwrap().len(), 2);

    let harmonic = r#"{"m":2,"terms":[{"c":"1","e":[1,1]}]}"#;
    let path = temp_file("h.json", harmonic);
    let out = dunkl(&["decompose", "--group", "z2", "--m", "2", "--kappa", "1,2", "--poly-file", path.to_str().unwrap()]);
    assert_eq!(json(&out)["components"].as_array().unwrap().len(), 1);

    let group = temp_file(
        "mu.json",
        r#"{"m":1,"positive_roots":[["1"]],"multiplicities":[{"orbit_rep":["1"],"kappa":"-3/2"}]}"#,
    );
    let p = r#"{"m":1,"terms":[{"c":"1","e":[2]}]}"#;
    let out = dunkl(&["decompose", "--group-file", group.to_str().unwrap(), "--poly", p]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Fischer requires μ ∉ −2ℕ"));

    let inhomogeneous = r#"{"m":2,"terms":[{"c":"1","e":[2,0]},{"c":"1","e":[0,0]}]}"#;
    let out = dunkl(&["decompose", "--group", "z2", "--m", "2", "--kappa", "0,0", "--poly", inhomogeneous]);
    assert_eq!(out.status.code(), Some(2));
    let out = dunkl(&["decompose", "--group", "z2", "--m", "2", "--kappa", "0,0", "--poly", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(dunkl(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(dunkl(&["group-info", "--m", "2"]).status.code(), Some(1));
    assert_eq!(dunkl(&["--help"]).status.code(), Some(0));
    assert_eq!(dunkl(&["group-info", "--group", "z2", "--m", "2", "--kappa", "1"]).status.code(), Some(2));
    assert_eq!(dunkl(&["group-info", "--group", "a", "--m", "2", "--kappa", "x"]).status.code(), Some(2));
    assert_eq!(dunkl(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let out = dunkl(&["hermite", "--group", "z2", "--m", "2", "--kappa", "1,1", "--ell", "1", "--h-index", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_sl2_passes_and_is_deterministic() {
    let a = dunkl(&["verify", "--suite", "sl2", "--max-deg", "6", "--profile", "ci"]);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    assert_eq!(v["suite"], "sl2");
    assert!(v["failures"].as_array().unwrap().is_empty());
    let b = dunkl(&["verify", "--suite", "sl2", "--max-deg", "6", "--profile", "ci"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_injected_fault() {
    let out = dunkl(&["verify", "--suite", "hermite-eq", "--profile", "ci", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    let residual = &failures[0]["residual"];
    assert!(residual["terms"].as_array().is_some_and(|t| !t.is_empty()), "{residual}");
}

#[test]
fn pretty_and_timing() {
    let out = dunkl(&["verify", "--suite", "classical", "--profile", "ci", "--pretty", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("suite classical:") && text.contains("0 failures") && text.contains(" ms"), "{text}");
}
