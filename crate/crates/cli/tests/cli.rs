use std::path::PathBuf;
use std::process::Command;

use decision_axioms_cli::reproduce::{verify_criterion, Fixtures};
use decision_axioms_cli::run;
use serde_json::Value;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn daxiom(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["daxiom"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let report = out.report.expect("a report");
    (out.code, report.covered())
}

/// Compares the digest-covered region with a checked-in golden file.
/// `UPDATE_GOLDEN=1` rewrites the file instead.
fn golden(name: &str, args: &[&str]) -> Value {
    let (code, covered) = daxiom(args);
    assert_eq!(code, 0, "{covered}");
    let path = golden_dir().join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&covered).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(text, expected, "golden mismatch for {name}");
    covered
}

#[test]
fn paradox_example1() {
    let v = golden("paradox_example1", &["paradox", "--builtin", "example1"]);
    assert_eq!(v["result"]["violating_profiles"], serde_json::json!(["x1", "x2"]));
    assert_eq!(v["result"]["paradox"], true);
}

#[test]
fn implied_rule_example1() {
    let v = golden("implied_rule_example1", &["implied-rule", "--builtin", "example1"]);
    assert_eq!(v["result"]["implied_rule"]["label"], "f2");
}

#[test]
fn reduce_example1() {
    let v = golden("reduce_example1", &["reduce", "--builtin", "example1"]);
    assert_eq!(v["result"]["blackbox"]["pairs"], serde_json::json!([["x1", "y1"], ["x2", "y2"]]));
}

#[test]
fn equiv_list_vs_rule() {
    let v = golden("equiv_list_vs_rule", &["equiv", "--builtin", "list-vs-rule"]);
    assert_eq!(v["result"]["equivalent"], true);
    assert_eq!(v["result"]["first_difference"]["first"], true);
    assert_eq!(v["result"]["first_difference"]["second"], false);
}

#[test]
fn classify_example1() {
    let v = golden("classify_example1", &["classify", "--builtin", "example1"]);
    assert_eq!(v["result"]["classification"]["most_specific"], "exigent");
}

#[test]
fn census_2x2() {
    let v = golden("census_2x2", &["census", "--x", "2", "--y", "2"]);
    assert_eq!(v["result"]["axioms"], 256);
    assert_eq!(v["result"]["forcing"], 36);
    assert_eq!(v["result"]["paradox"], 20);
}

#[test]
fn black_paradox_3c() {
    let v = golden("black_paradox", &["black-paradox", "--candidates", "3", "--voters", "5"]);
    assert_eq!(v["result"]["voters"], 5);
    assert_eq!(v["result"]["violating_profiles"], v["result"]["profiles"]);
}

#[test]
fn extend_and_impasse() {
    let (code, v) = daxiom(&["extend", "--builtin", "example1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["extension_size"], "1");
    assert_eq!(v["result"]["rules"][0]["label"], "f2");
    let (code, v) = daxiom(&["impasse", "--builtin", "example1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["impasses"], serde_json::json!([]));
    // Arrovian without an impasse.
    let (_, v) = daxiom(&["arrovian", "--builtin", "example1"]);
    assert_eq!(v["result"]["verdict"]["arrovian"], "yes");
    assert_eq!(v["result"]["verdict"]["method"], "rule-enumeration");
    let (_, v) = daxiom(&["forcing", "--builtin", "black-3c"]);
    assert_eq!(v["result"]["forcing"], true);
}

#[test]
fn arrow_domain_file_round_trips_through_core_commands() {
    let domain = scratch("micro.json");
    let (code, _) = daxiom(&["arrow-domain", "--out", domain.to_str().unwrap()]);
    assert_eq!(code, 0);
    let raw = run(["daxiom", "arrow-domain"]).stdout;
    assert_eq!(std::fs::read_to_string(&domain).unwrap(), raw);

    let axiom = scratch("pareto.json");
    std::fs::write(&axiom, r#"{"kind":"builtin","id":"weak-pareto"}"#).unwrap();
    let args = ["--domain", domain.to_str().unwrap(), "--axiom", axiom.to_str().unwrap()];
    let (code, v) = daxiom(&[&["classify"][..], &args].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["classification"]["most_specific"], "blackbox");
    let (code, v) = daxiom(&[&["arrovian"][..], &args].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"]["arrovian"], "no");
    let (code, v) = daxiom(&[&["reduce"][..], &args].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["blackbox"]["impasses"], serde_json::json!([]));
}

#[test]
fn vote_and_posthoc_from_profile_files() {
    let p = scratch("profile.json");
    std::fs::write(&p, r#"{"candidates":["a","b","c"],"ballots":[["b","a","c"],"a>b>c","b>c>a"]}"#).unwrap();
    let (code, v) = daxiom(&["vote", "--rule", "borda", "--profile", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["winner"], "b");
    assert_eq!(v["result"]["scores"], serde_json::json!({ "a": 3, "b": 5, "c": 1 }));
    assert_eq!(v["result"]["condorcet_winner"], "b");

    let p2 = scratch("profile2.json");
    std::fs::write(&p2, r#"{"candidates":["a","b","c"],"ballots":["c>a>b","b>a>c"]}"#).unwrap();
    let (code, v) = daxiom(&["posthoc", "--profile", p2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verified"], true);
    assert_eq!(v["result"]["outcome"], "c>a>b");
}

#[test]
fn deception_check_example1() {
    let (code, v) = daxiom(&[
        "deception-check",
        "--builtin",
        "example1",
        "--actual",
        "x1,f2,y1",
        "--statement",
        "_,f1,_",
        "--mask",
        "profile,outcome",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["deceptive"], true);
    assert_eq!(v["result"]["transparent"], false);
    let (code, v) = daxiom(&["deception-check", "--builtin", "example1", "--actual", "x1,f2,y1", "--statement", "_,_,y2"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "inconsistent-statement");
}

#[test]
fn exit_codes() {
    // Domain errors exit 1.
    let (code, v) = daxiom(&["census", "--x", "3", "--y", "2"]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("cap-exceeded")));
    let trivial = scratch("trivial.json");
    std::fs::write(&trivial, r#"{"kind":"builtin","id":"positively-trivial"}"#).unwrap();
    let domain = scratch("ex1.domain.json");
    std::fs::write(&domain, decision_axioms::fixtures::EXAMPLE1_DOMAIN_JSON).unwrap();
    let (code, v) =
        daxiom(&["implied-rule", "--domain", domain.to_str().unwrap(), "--axiom", trivial.to_str().unwrap()]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("not-forcing")));

    // Usage errors exit 2.
    let (code, v) = daxiom(&["reduce"]);
    assert_eq!((code, v["error"]["code"].as_str()), (2, Some("missing-input")));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let (code, v) = daxiom(&["reduce", "--domain", bad.to_str().unwrap(), "--axiom", trivial.to_str().unwrap()]);
    assert_eq!((code, v["error"]["code"].as_str()), (2, Some("parse-error")));
    assert_eq!(run(["daxiom", "frobnicate"]).code, 2);
    assert_eq!(run(["daxiom", "reduce", "--builtin", "example1", "--domain", "x"]).code, 2);
    assert_eq!(run(["daxiom", "--help"]).code, 0);
}

#[test]
fn binary_exit_status_and_text_format() {
    let bin = env!("CARGO_BIN_EXE_daxiom");
    let out = Command::new(bin).args(["paradox", "--builtin", "example1", "--format", "text"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("paradox ("));
    assert!(text.contains("violating_profiles: [\"x1\",\"x2\"]"));
    let out = Command::new(bin).args(["census", "--x", "3", "--y", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cap-exceeded"));
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let a = run(["daxiom", "classify", "--builtin", "list-vs-rule"]).report.unwrap();
    let b = run(["daxiom", "classify", "--builtin", "list-vs-rule"]).report.unwrap();
    assert_eq!(a.digest(), b.digest());
    assert_eq!(serde_json::to_string(&a.covered()).unwrap(), serde_json::to_string(&b.covered()).unwrap());
}

#[test]
fn tampered_example1_fixture_fails_criterion_1_only() {
    let mut fx = Fixtures::builtin();
    assert!(verify_criterion(1, &fx, 10_000_000).unwrap().passed);
    fx.example1_axiom = r#"{"kind":"extensional","name":"example1","obeys":[["x1","f2","y1"],["x2","f4","y2"]]}"#.into();
    let r = verify_criterion(1, &fx, 10_000_000).unwrap();
    assert!(!r.passed);
    assert_eq!(r.id, 1);
    assert!(verify_criterion(2, &fx, 10_000_000).unwrap().passed);
}
