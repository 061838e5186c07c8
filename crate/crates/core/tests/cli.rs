//! The command-line binary: exit codes, determinism and JSON round trips.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use km_satake::hall_littlewood::hl_function;
use km_satake::roots::enumerate_roots;
use km_satake::series::{CharacterSeries, SeriesRow, Window};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_km-satake"))
}

fn write_datum(name: &str, json: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("km-satake-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("KM_SATAKE_THREADS").output().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_reports_asymmetric_zero() {
    let p = write_datum("bad.json", r#"{"name":"bad","cartan":[[2,-1],[0,2]]}"#);
    let o = run(&["validate", "--datum", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AsymmetricZero(1,0)"));
}

#[test]
fn bad_coordinates_are_input_errors() {
    let p = write_datum("a1.json", r#"{"name":"A1","cartan":[[2]]}"#);
    let o = run(&["hl", "--datum", p.to_str().unwrap(), "--lambda", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["hl", "--datum", p.to_str().unwrap(), "--lambda", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotDominant"));
}

#[test]
fn mv_at_the_top_weight() {
    let p = write_datum("aff.json", r#"{"name":"affine A1","cartan":[[2,-2],[-2,2]]}"#);
    let o = run(&["mv", "--datum", p.to_str().unwrap(), "--lambda", "0,0,1", "--nu", "0,0,1", "--tdeg", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["data"]["dimension"], 0);
    assert_eq!(v["data"]["top_components"], 1);
    assert_eq!(v["data"]["count_series"], serde_json::json!([1]));
    assert_eq!(v["header"]["tdeg"], 4);
    assert_eq!(v["data"]["stable_degree"], 0);
}

#[test]
fn output_is_deterministic() {
    let p = write_datum("aff2.json", r#"{"name":"affine A1","cartan":[[2,-2],[-2,2]]}"#);
    let args = ["hl", "--datum", p.to_str().unwrap(), "--lambda", "1,0,0", "--depth", "5", "--tdeg", "4", "--basis", "mono"];
    let a = run(&args);
    let b = bin().args(args).env("KM_SATAKE_THREADS", "3").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[&args[..], &["--format", "csv"]].concat());
    let d = run(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(c.stdout, d.stdout);
    assert!(String::from_utf8_lossy(&c.stdout).starts_with("# "));
}

#[test]
fn series_json_round_trips() {
    let p = write_datum("aff3.json", r#"{"name":"affine A1","cartan":[[2,-2],[-2,2]]}"#);
    let o = run(&["hl", "--datum", p.to_str().unwrap(), "--lambda", "1,0,0", "--depth", "5", "--tdeg", "4", "--basis", "mono"]);
    let v = stdout_json(&o);
    let rows: Vec<SeriesRow> = serde_json::from_value(v["data"].clone()).unwrap();
    let d = common::affine_a1();
    let parsed = CharacterSeries::from_rows(&d, Window::integral(&[1, 0, 0], 5, 4), &rows).unwrap();
    let t = enumerate_roots(&d, 5).unwrap();
    assert_eq!(parsed, hl_function(&d, &t, &[1, 0, 0], 5, 4).unwrap());
}

#[test]
fn methods_agree_through_the_cli() {
    let p = write_datum("aff4.json", r#"{"name":"affine A1","cartan":[[2,-2],[-2,2]]}"#);
    let base = ["hl", "--datum", p.to_str().unwrap(), "--lambda", "0,0,1", "--depth", "5", "--tdeg", "5"];
    let mut data = Vec::new();
    for m in ["hlw", "macdonald", "direct"] {
        let o = run(&[&base[..], &["--method", m]].concat());
        assert_eq!(o.status.code(), Some(0), "{m}");
        data.push(stdout_json(&o)["data"].clone());
    }
    assert_eq!(data[0], data[1]);
    assert_eq!(data[0], data[2]);
}

#[test]
fn gamma_interval_and_satake_commands() {
    let p = write_datum("a1b.json", r#"{"name":"A1","cartan":[[2]]}"#);
    let ps = p.to_str().unwrap();
    let g = stdout_json(&run(&["gamma", "--datum", ps, "--lambda", "2", "--word", "0"]));
    assert_eq!(g["data"]["count"], 4);
    assert_eq!(g["data"]["rho_pairing"], 4);
    let i = stdout_json(&run(&["interval", "--datum", ps, "--mu", "0", "--lambda", "2"]));
    assert_eq!(i["data"], serde_json::json!([[0], [1], [2]]));
    let s = stdout_json(&run(&["satake", "--datum", ps, "--lambda", "1", "--depth", "4", "--tdeg", "4"]));
    assert_eq!(s["header"]["shift"], 1);
    assert_eq!(s["data"][1], serde_json::json!({"weight": [0], "coeffs": [1, -1]}));
}

#[test]
fn selftest_quick_exits_zero() {
    let o = run(&["selftest", "--level", "quick"]);
    assert_eq!(o.status.code(), Some(0));
}
