use std::path::PathBuf;
use std::process::{Command, Output};

use frontdoor_cli::report::{CheckReport, CounterexampleReport, DsepReport, EvaluateReport, ProjectReport};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn frontdoor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frontdoor")).args(args).output().expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn check_gfdc_holds_on_violate_3() {
    let g = fixture("fdc_violate_3.graph");
    let out = frontdoor(&["check", &g, "--criterion", "gfdc", "--x", "X", "--y", "Y", "--z", "Z1,Z2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: CheckReport = json(&out);
    assert_eq!(r.reports.len(), 1);
    assert!(r.reports[0].holds);
}

#[test]
fn check_all_reports_pearl_failure_on_violate_3() {
    let g = fixture("fdc_violate_3.graph");
    let out = frontdoor(&["check", &g, "--x", "X", "--y", "Y", "--z", "Z1,Z2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: CheckReport = json(&out);
    let fdc = r.reports.iter().find(|c| c.criterion.to_string() == "fdc").expect("fdc reported");
    assert!(!fdc.holds);
}

#[test]
fn evaluate_collider_gap_is_one_thirtieth() {
    let m = fixture("collider_k1.model");
    let out = frontdoor(&["evaluate", &m, "--x", "X", "--y", "Y", "--z", "Z", "--xstar", "X=0", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: EvaluateReport = json(&out);
    let y0 = r.cells.iter().find(|c| c.y["Y"] == "0").expect("Y=0 cell");
    assert_eq!((y0.functional.as_str(), y0.oracle.as_str(), y0.gap.as_str()), ("8/15", "1/2", "1/30"));
    assert!(r.strictly_positive);
    assert!(!r.equal);
}

#[test]
fn evaluate_expectation_drives_exit_code() {
    let m = fixture("collider_k1.model");
    let base = ["evaluate", m.as_str(), "--x", "X", "--y", "Y", "--z", "Z", "--xstar", "X=0", "--expect"];
    let differ = frontdoor(&[&base[..], &["differ"]].concat());
    let equal = frontdoor(&[&base[..], &["equal"]].concat());
    assert_eq!(differ.status.code(), Some(0));
    assert_eq!(equal.status.code(), Some(1));
}

#[test]
fn dsep_chain_is_separated_by_mediator() {
    let g = fixture("chain.graph");
    let out = frontdoor(&["dsep", &g, "--x", "X", "--y", "Y", "--z", "Z", "--format", "json"]);
    let r: DsepReport = json(&out);
    assert!(r.separated);
    assert!(r.witness.is_none());
    let open = frontdoor(&["dsep", &g, "--x", "X", "--y", "Y", "--format", "json"]);
    let r: DsepReport = json(&open);
    assert!(!r.separated);
    assert_eq!(r.witness.expect("open path").to_string(), "X -> Z -> Y");
}

#[test]
fn project_drops_latents_by_default() {
    let g = fixture("latent_projection_a.graph");
    let out = frontdoor(&["project", &g, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ProjectReport = json(&out);
    assert!(r.graph.latent_nodes().is_empty());
    assert_eq!(r.graph.nodes().count(), r.keep.len());
}

#[test]
fn counterexample_reports_positive_gap() {
    let out = frontdoor(&["counterexample", "--pattern", "b", "--k", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: CounterexampleReport = json(&out);
    assert_eq!(r.gap, "1/30");
    assert!(r.model.is_some());
}

#[test]
fn lifted_counterexample_writes_a_loadable_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lifted.model");
    let p = path.to_string_lossy().into_owned();
    let out = frontdoor(&["counterexample", "--pattern", "c", "--k", "1", "--lift", "3", "--out", &p, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let r: CounterexampleReport = json(&out);
    assert!(r.strictly_positive);
    assert_ne!(r.gap, "0");
    let eval = frontdoor(&["evaluate", &p, "--x", "X", "--y", "Y", "--z", "Z1", "--xstar", "X=0", "--expect", "differ"]);
    assert_eq!(eval.status.code(), Some(0), "{}", String::from_utf8_lossy(&eval.stderr));
}

#[test]
fn lift_is_rejected_for_direct_path() {
    let out = frontdoor(&["counterexample", "--pattern", "a", "--k", "2", "--lift", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_main_replays_and_refuses_when_criterion_fails() {
    let g = fixture("fdc_violate_3.graph");
    let ok = frontdoor(&["verify", "--proof", "main", &g, "--x", "X", "--y", "Y", "--z", "Z1,Z2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("derivation valid"));
    let bad = frontdoor(&["verify", "--proof", "main", &fixture("identifiability_a.graph"), "--x", "X", "--y", "Y", "--z", "Z"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(frontdoor(&["dsep"]).status.code(), Some(2));
    assert_eq!(frontdoor(&["dsep", "/nonexistent.graph", "--x", "X", "--y", "Y"]).status.code(), Some(2));
    let g = fixture("chain.graph");
    assert_eq!(frontdoor(&["dsep", &g, "--x", "Q", "--y", "Y"]).status.code(), Some(2));
    let m = fixture("collider_k1.model");
    let out = frontdoor(&["evaluate", &m, "--x", "X", "--y", "Y", "--z", "Z", "--xstar", "X=7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_three_with_json_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "X -> Y\nY -> X\n").unwrap();
    let out = frontdoor(&["dsep", &path.to_string_lossy(), "--x", "X", "--y", "Y", "--format", "json"]);
    assert_eq!(out.status.code(), Some(3));
    let e: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "parse");
}

#[test]
fn reports_round_trip_through_json() {
    let m = fixture("collider_k1.model");
    let out = frontdoor(&["evaluate", &m, "--x", "X", "--y", "Y", "--z", "Z", "--xstar", "X=0", "--format", "json"]);
    let r: EvaluateReport = json(&out);
    let again: EvaluateReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(r, again);
}

#[test]
fn run_writes_to_supplied_streams() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let g = fixture("chain.graph");
    let code = frontdoor_cli::run(["frontdoor", "dsep", &g, "--x", "X", "--y", "Y", "--z", "Z"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("d-separated"));
    assert!(err.is_empty());
}
