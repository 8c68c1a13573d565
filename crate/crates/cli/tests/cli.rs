use std::path::Path;
use std::process::{Command, Output};

fn fencekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fencekit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn chord_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    let svg = dir.path().join("sq.svg");
    let o = fencekit(&["chord", &sq, "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("G = 2.000000000"));
    let text = std::fs::read_to_string(svg).unwrap();
    assert!(text.contains("<svg") && text.contains("halving-chord"));
}

#[test]
fn arc_json_on_generated_body() {
    let dir = tempfile::tempdir().unwrap();
    let hex = write(dir.path(), "hex.json", r#"{"kind": "regular-ngon", "n": 6}"#);
    let o = fencekit(&["arc", &hex, "--json", "--grid", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["within_bound"], true);
    assert!(v["c"]["value"].as_f64().unwrap() < 8.0 / std::f64::consts::PI);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", r#"{"vertices": [[0,0],[1,0],[0,1]]}"#);
    assert_eq!(fencekit(&["centrosym", &tri]).status.code(), Some(2));
    let cw = write(dir.path(), "cw.json", r#"{"vertices": [[0,0],[0,1],[1,0]]}"#);
    assert_eq!(fencekit(&["chord", &cw]).status.code(), Some(2));
    let junk = write(dir.path(), "junk.json", "{");
    assert_eq!(fencekit(&["chord", &junk]).status.code(), Some(2));
    assert_eq!(fencekit(&["chord", "/does/not/exist.json"]).status.code(), Some(2));
    assert_eq!(fencekit(&["constants", &tri, "--alpha", "0.3"]).status.code(), Some(2));
    assert_eq!(fencekit(&["sweep", "--n", "0"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_fencekit"))
        .args(["sweep", "--n", "1"])
        .env("FENCEKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_reproducible() {
    let a = fencekit(&["sweep", "--n", "3", "--seed", "7", "--resolution", "64"]);
    let b = fencekit(&["sweep", "--n", "3", "--seed", "7", "--resolution", "64"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("index,seed,vertices") && !lines[0].contains("wall_ms"));
    let timed = fencekit(&["sweep", "--n", "1", "--resolution", "64", "--timing"]);
    assert!(stdout(&timed).lines().next().unwrap().ends_with("wall_ms"));
}

#[test]
fn sweep_respects_thread_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_fencekit"))
        .args(["sweep", "--n", "2", "--seed", "7", "--resolution", "64"])
        .env("FENCEKIT_THREADS", "1")
        .output()
        .unwrap();
    let parallel = fencekit(&["sweep", "--n", "2", "--seed", "7", "--resolution", "64"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, parallel.stdout);
}

#[test]
fn constants_and_centrosym() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    let o = fencekit(&["constants", &sq, "--alpha", "0.5,1.0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["gamma_half"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["gamma_alpha"].as_array().unwrap().len(), 2);
    let o = fencekit(&["centrosym", &sq, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["chord"]["length"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn chl_profiles() {
    let o = fencekit(&["chl", "--profile", "disc", "--L", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["area_shoelace"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-5);
    let o = fencekit(&["chl", "--report"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("harmonic"));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "p.json", r#"{"sigma": [0.0], "theta": [0.0, 1.0], "L": 1}"#);
    assert_eq!(fencekit(&["chl", "--profile", &bad]).status.code(), Some(2));
}

#[test]
fn render_outline_and_fan() {
    let o = fencekit(&["render", "disc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("<path").count(), 1);
    let o = fencekit(&["render", "rounded-triangle", "--fan", "6"]);
    assert_eq!(stdout(&o).matches("<path").count(), 7);
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    assert_eq!(fencekit(&["render", &sq, "--fan", "3"]).status.code(), Some(2));
    let o = fencekit(&["render", &sq, "--cuts", "chord,arc"]);
    assert_eq!(stdout(&o).matches("<text").count(), 2);
}

#[test]
fn auerbach_and_report() {
    let o = fencekit(&["auerbach", "--samples", "1024", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["c_witness_on_flats"], true);
    let o = fencekit(&["report", "--samples", "1024", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["all_pass"], true);
}
