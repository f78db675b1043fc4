use std::process::{Command, Output};

use serde_json::Value;

fn oxn_verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oxn-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_reports(out: &Output) -> Vec<Value> {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    v.as_array().expect("array of reports").clone()
}

#[test]
fn counts_at_five() {
    let out = oxn_verify(&["counts", "--n", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_reports(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["check"], "counts");
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["counts"]["oxn"], 125);
}

#[test]
fn tl_iso_at_three_via_flag() {
    let out = oxn_verify(&["--check", "TL-iso", "--n", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_reports(&out)[0]["counts"]["cones"], 9);
}

#[test]
fn all_passes_at_three_and_four_with_schema() {
    for n in ["3", "4"] {
        let out = oxn_verify(&["all", "--n", n, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        let reports = json_reports(&out);
        assert_eq!(reports.len(), 13);
        for r in &reports {
            let obj = r.as_object().unwrap();
            assert!(obj["check"].is_string());
            assert_eq!(obj["n"].as_u64().unwrap().to_string(), n);
            assert_eq!(obj["status"], "pass");
            assert!(obj["counts"].as_object().unwrap().values().all(Value::is_u64));
            assert!(obj["elapsed_ms"].is_u64());
            assert!(!obj.contains_key("witness"));
        }
    }
}

#[test]
fn all_skips_checks_above_their_cap() {
    let out = oxn_verify(&["all", "--n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<_> = json_reports(&out).iter().map(|r| r["check"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["counts"]);
}

#[test]
fn injected_fault_fails_with_witness() {
    let out = oxn_verify(&["cones-principal", "--n", "3", "--inject-fault", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json_reports(&out)[0];
    assert_eq!(r["status"], "fail");
    assert!(r["witness"].is_object());
}

#[test]
fn text_format() {
    let out = oxn_verify(&["green", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("green"));
    assert!(text.contains("PASS"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nonsense"][..],
        &["counts", "--n", "2"],
        &["counts", "--n", "13"],
        &["cones-principal", "--n", "5"],
        &["counts", "--format", "yaml"],
        &[],
    ] {
        assert_eq!(oxn_verify(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = oxn_verify(&["factorize-Pi", "--n", "4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn export_tables() {
    let dir = tempfile::tempdir().unwrap();
    let oxn = dir.path().join("oxn.json");
    let tl = dir.path().join("tl.json");
    assert_eq!(oxn_verify(&["--export", "oxn", "--n", "3", "--out", oxn.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(oxn_verify(&["--export", "TL", "--n", "3", "--out", tl.to_str().unwrap()]).status.code(), Some(0));

    let read = |p: &std::path::Path| {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        oxn_core::FiniteSemigroup::from_json(&v).unwrap()
    };
    let (s, t) = (read(&oxn), read(&tl));
    assert_eq!(s.order(), 9);
    assert!(oxn_core::semigroup::find_isomorphism(&s, &t).is_some());
}

#[test]
fn export_limits() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.json");
    let out = oxn_verify(&["--export", "oxn", "--n", "12", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource"));
    assert!(!p.exists());
    assert_eq!(oxn_verify(&["--export", "TX", "--n", "3", "--out", p.to_str().unwrap()]).status.code(), Some(2));
}
