use std::path::PathBuf;
use std::process::Command;

use tcss::report::{FieldReport, HhReport, SsReport, TcReportJson, ThhReport, VerifyReport, SCHEMA};
use tcss::spec::{parse_field_text, FieldFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tcss"))
}

fn write_spec(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tcss-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json_run<T: serde::de::DeserializeOwned + serde::Serialize>(args: &[&str]) -> (i32, T) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    let parsed: T = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    // round trip through the schema types
    let again: serde_json::Value = serde_json::to_value(&parsed).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&out).unwrap());
    (code, parsed)
}

#[test]
fn spec_formats() {
    let toml = parse_field_text("p = 3\nf = 2\ne = 2\nmu = [1]\neisenstein_mid = [[0]]\n").unwrap();
    let json = parse_field_text(r#"{"p":3,"f":2,"e":2,"mu":[1],"eisenstein_mid":[[0]]}"#).unwrap();
    assert_eq!(toml, json);
    let bare: FieldFile = parse_field_text(r#"{"p":3,"f":2,"e":2,"mu":[1]}"#).unwrap();
    assert_eq!(bare.to_spec(), toml.to_spec());
    assert!(parse_field_text(r#"{"p":3,"f":2,"e":2,"mu":[1],"colour":1}"#).is_err());
}

#[test]
fn field_invariants_for_q2_sqrt2() {
    let spec = write_spec("q2s.json", r#"{"p":2,"f":1,"e":2,"mu":[1]}"#);
    let (code, r): (i32, FieldReport) = json_run(&["field", "--input", spec.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r.schema, SCHEMA);
    assert_eq!((r.field.d, r.mu_bar.as_str()), (1, "1"));
}

#[test]
fn invalid_specs_exit_2() {
    for (name, body) in [
        ("np.json", r#"{"p":4,"f":1,"e":1,"mu":[1]}"#),
        ("ne.json", r#"{"p":3,"f":1,"e":2,"mu":[1],"eisenstein_mid":[[1]]}"#),
        ("nu.json", r#"{"p":3,"f":1,"e":1,"mu":[3]}"#),
        ("garbage.toml", "p = \n"),
    ] {
        let spec = write_spec(name, body);
        let (code, _, err) = run(&["field", "--input", spec.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}: {err}");
    }
    let (code, _, _) = run(&["field", "--input", "/nonexistent/spec.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["tc"]);
    assert_eq!(code, 2);
}

#[test]
fn tc_for_q3() {
    let spec = write_spec("q3.toml", "p = 3\nf = 1\ne = 1\nmu = [1]\n");
    let (code, r): (i32, TcReportJson) = json_run(&["tc", "--input", spec.to_str().unwrap(), "--j-min", "-1", "--j-max", "8"]);
    assert_eq!(code, 0);
    let orders: Vec<Vec<u64>> = r.homotopy.iter().map(|h| h.orders.clone()).collect();
    // E(λ, λγ) ⊗ F_3[β] with |β| = 4, plus α^(1), α^(2) and γ
    let want: Vec<Vec<u64>> = vec![vec![3], vec![3], vec![3], vec![], vec![3, 3], vec![3, 3], vec![3, 3], vec![], vec![3, 3], vec![3, 3]];
    assert_eq!(orders, want);
    let (_, table, _) = run(&["tc", "--input", spec.to_str().unwrap()]);
    assert!(table.contains("Z/3 + Z/3"));
}

#[test]
fn other_subcommands_emit_schema() {
    let spec = write_spec("q3s.json", r#"{"p":3,"f":1,"e":2,"mu":[1]}"#);
    let s = spec.to_str().unwrap();
    let (code, thh): (i32, ThhReport) = json_run(&["thh-e2", "--input", s, "--degree-cap", "6"]);
    assert_eq!(code, 0);
    assert!(thh.passed);
    assert!(thh.cobar.iter().any(|c| c.column == -1 && !c.witnesses.is_empty()));
    let (_, ss): (i32, SsReport) = json_run(&["ss", "--input", s, "--j-min", "-1", "--j-max", "2", "--n-cap", "30"]);
    assert_eq!(ss.variants.len(), 2);
    assert!(ss.variants.iter().all(|v| v.pages.last().unwrap().page == "inf"));
    let (_, e2): (i32, TcReportJson) = json_run(&["tc-e2", "--input", s]);
    assert_eq!(e2.e2.columns.iter().map(|c| c.rank).collect::<Vec<_>>(), vec![1, 2 + 2 * e2.field.d as usize, 1]);
    let (code, hh): (i32, HhReport) = json_run(&["hh-appendix"]);
    assert_eq!(code, 0);
    assert_eq!(hh.runs.len(), 6);
}

#[test]
fn verify_default_grid_passes() {
    let (code, r): (i32, VerifyReport) = json_run(&["verify"]);
    assert_eq!(code, 0);
    assert!(r.passed);
    assert_eq!(r.fields.len(), 8);
    let c = &r.fields[0].congruences[0];
    assert!(c.required_valuation.contains('/'));
}

#[test]
fn verify_reports_failure_with_exit_3() {
    // kmax = 12 at p = 2 needs a weight cap of 2^13, beyond the model's size
    let spec = write_spec("q2big.json", r#"{"p":2,"f":1,"e":1,"mu":[1]}"#);
    let (code, r): (i32, VerifyReport) = json_run(&["verify", "--input", spec.to_str().unwrap(), "--kmax", "12"]);
    assert_eq!(code, 3);
    assert!(!r.passed);
    assert!(r.fields[0].errors[0].contains("exceeds"));
}

#[test]
fn output_is_deterministic() {
    let spec = write_spec("q2.json", r#"{"p":2,"f":2,"e":3,"mu":[1]}"#);
    let a = run(&["tc-e2", "--input", spec.to_str().unwrap(), "--format", "json"]);
    let b = run(&["tc-e2", "--input", spec.to_str().unwrap(), "--format", "json"]);
    assert_eq!(a.1, b.1);
}
