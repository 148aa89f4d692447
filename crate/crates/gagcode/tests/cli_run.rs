//! Tests against the compiled binary: exit codes, determinism, and a few
//! golden outputs as a user would see them.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gagcode"))
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gagcode-run-{}-{name}.json", std::process::id()));
    fs::write(&path, text).unwrap();
    path
}

fn gf49_config(name: &str, extra: &str) -> PathBuf {
    write_config(
        name,
        &format!(
            r#"{{
  "curve": {{
    "q": 7, "n": 2,
    "l_coeffs": [[1, 0], [1, 0]],
    "f_factors": [
      {{"coeffs": [[0, 6], [1, 0]], "mult": 2}},
      {{"coeffs": [[0, 1], [1, 0]], "mult": 2}}
    ],
    "g_factors": [{{"coeffs": [[0, 0], [1, 0]], "mult": 2}}]
  }}{extra}
}}"#
        ),
    )
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

#[test]
fn reproduce_examples_is_deterministic_and_green() {
    let first = binary().arg("reproduce-examples").output().unwrap();
    assert_eq!(first.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let second = binary().args(["reproduce-examples", "--seedless"]).output().unwrap();
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    assert!(text.starts_with("example,item,s,n,k,d,bound\n"));
    assert!(text.contains("\n1,1,109,109,75,24,omega-subset\n"));
    assert!(text.contains("\n3,5,166,170,138,20,omega-subset\n"));
    assert!(text.contains("\n4,5,252,264,226,24,omega-subset\n"));
}

#[test]
fn validate_prints_the_headline_constants() {
    let cfg = gf49_config("validate", "");
    let out = binary().args(["validate", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("qr,7\n"));
    assert!(text.contains("degree_drop,2\n"));
    assert!(text.contains("genus,12\n"));
    assert!(text.contains("rational_places,170\n"));
    let _ = fs::remove_file(cfg);
}

#[test]
fn dim_reports_the_golden_dimension() {
    let cfg = gf49_config("dim", r#", "divisors": {"G": {"a": [36], "b_inf": 9}}"#);
    let out = binary().args(["dim", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "divisor,dim\n9 Qinf + 36 Q1,34\n");
    let _ = fs::remove_file(cfg);
}

#[test]
fn json_output_parses_and_out_writes_a_file() {
    let cfg = gf49_config("json", r#", "divisors": {"G": {"a": [18], "b_inf": 5}}"#);
    let dest = std::env::temp_dir().join(format!("gagcode-run-{}-floor.json", std::process::id()));
    let out = binary()
        .args(["floor", "--format", "json", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dest)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let parsed: serde_json::Value = serde_json::from_str(&fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(parsed["rendered"]["floor"], "4 Qinf + 18 Q1");
    let _ = fs::remove_file(cfg);
    let _ = fs::remove_file(dest);
}

#[test]
fn bad_schema_exits_3_naming_the_key() {
    let cfg = write_config("schema", r#"{"curve": {"q": 7}, "surprise": true}"#);
    let out = binary().args(["validate", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("surprise") || err.contains("missing field"), "stderr: {err}");
    let _ = fs::remove_file(cfg);
}

#[test]
fn missing_config_exits_3() {
    let out = binary().arg("dim").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn empty_riemann_roch_space_exits_2() {
    let cfg = gf49_config("empty", r#", "divisors": {"G": {"a": [0], "b_inf": -1}}"#);
    let out = binary().args(["floor", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = fs::remove_file(cfg);
}

#[test]
fn bound_certifies_the_frozen_row_end_to_end() {
    let cfg = gf49_config(
        "bound",
        r#", "genus": 12,
  "divisors": {"A": {"a": [18], "b_inf": 5}, "R": {"a": [18], "b_inf": 5}},
  "places": {"s": 116},
  "extra_codes": [{"degree": 2, "kind": "identity"}]"#,
    );
    let out = binary().args(["bound", "--seedless", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let subset = text.lines().find(|l| l.starts_with("omega-subset,")).unwrap();
    assert!(subset.starts_with("omega-subset,118,84,23,"), "row: {subset}");
    let cl = text.lines().find(|l| l.starts_with("cl,")).unwrap();
    assert!(cl.starts_with("cl,118,34,"), "row: {cl}");
    let _ = fs::remove_file(cfg);
}
