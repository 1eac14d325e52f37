use std::process::Command;

use flatlab_cli::{execute, strip_timing, Report, Status};
use serde_json::{json, Value};

fn run(args: &[&str]) -> Report {
    execute(std::iter::once("flatlab").chain(args.iter().copied()))
}

fn stable(r: &Report) -> Value {
    strip_timing(&serde_json::to_value(r).unwrap())
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("flatlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_flatlab");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["check-filtered", "categories/span.cat"]), Some(1));
    assert_eq!(code(&["check-filtered", "categories/walking-arrow.cat"]), Some(0));
    assert_eq!(code(&["check-sifted", "examples/discrete2.cat"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(64));
    assert_eq!(code(&["models", "theories/involution.thy"]), Some(2));
    assert_eq!(code(&["commute-refute", "categories/walking-arrow.cat", "--class", "finite-discrete"]), Some(3));
}

#[test]
fn help_is_plain_text() {
    let out = Command::new(env!("CARGO_BIN_EXE_flatlab")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Usage: flatlab"), "{text}");
}

#[test]
fn stdout_is_one_json_document() {
    let out = Command::new(env!("CARGO_BIN_EXE_flatlab"))
        .args(["validate", "categories/z2.cat"])
        .output()
        .unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "verified");
    assert_eq!(String::from_utf8(out.stderr).unwrap().trim(), "verified");
}

#[test]
fn involution_models_on_four_points() {
    let r = run(&["models", "theories/involution.thy", "--size", "4"]);
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.result["count"], 10);
    assert_eq!(r.inputs[0].source, "bundled:theories/involution.thy");
    assert_eq!(r.inputs[0].sha256.len(), 64);
}

#[test]
fn malformed_input_names_the_line() {
    let path = scratch(
        "broken.thy",
        "{\n  \"symbols\": [{\"name\": \"f\", \"in\": 1, \"out\": 1}],\n  \"equations\": [\n    {\"lhs\": \"(sym g)\", \"rhs\": \"(map [0] from 1 to 1)\"}\n  ]\n}\n",
    );
    let r = run(&["validate", &path]);
    assert_eq!(r.exit_status, 2);
    let err = r.error.unwrap();
    assert_eq!(err["kind"], "input");
    assert_eq!(err["line"], 4);
    assert!(err["message"].as_str().unwrap().contains('g'));

    let path = scratch("broken.cat", "{\n  \"objects\": [\"a\"],\n  \"morphisms\": [\n");
    let r = run(&["check-filtered", &path]);
    assert_eq!(r.exit_status, 2);
    assert!(r.error.unwrap()["line"].as_u64().is_some());
}

#[test]
fn missing_file_is_an_input_error() {
    let r = run(&["check-filtered", "nowhere/unheard-of.cat"]);
    assert_eq!(r.exit_status, 2);
    assert_eq!(r.error.unwrap()["kind"], "input");
}

#[test]
fn witnesses_recheck() {
    let r = run(&["commute-refute", "categories/discrete2.cat", "--recheck"]);
    assert_eq!(r.status, Status::Refuted);
    assert!(!r.witnesses.is_empty());
    assert!(r.witnesses.iter().all(|w| w["revalidated"] == json!(true)));

    let r = run(&["check-dfiltered", "categories/parallel-pair.cat", "--class", "finite-connected", "--recheck"]);
    assert_eq!(r.status, Status::Refuted);
    assert!(r.witnesses.iter().all(|w| w["revalidated"] == json!(true)));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["commute-refute", "categories/reflexive-pair.cat", "--class", "finite-discrete-nonempty"][..],
        &["check-flat", "categories/span.cat", "weights/span-terminal.psh", "--mode", "direct"],
        &["closure", "categories/walking-arrow.cat", "--depth", "1"],
        &["monad-algebras", "monads/maybe3.monad", "--size", "2"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(stable(&a), stable(&b), "{args:?}");
        let (seq, par) = (run(&[args, &["--sequential"][..]].concat()), run(args));
        assert_eq!(stable(&seq)["verdicts"], stable(&par)["verdicts"], "{args:?}");
    }
}

#[test]
fn limits_and_colimits_of_bundled_diagrams() {
    let r = run(&["colimit", "categories/span.cat", "weights/span-diagram.psh"]);
    assert_eq!(r.status, Status::Verified);
    // a:{0,1} → b:{0,1} by [0,1], a → c:{0} by [0,0]: everything glues
    assert_eq!(r.result["object"]["size"], 1);
    let r = run(&["limit", "categories/span.cat", "weights/span-diagram.psh"]);
    assert_eq!(r.status, Status::Verified);
    assert_eq!(r.result["object"]["size"], 2);
}

#[test]
fn monad_algebras_match_pointed_sets() {
    for n in 0..=2 {
        let size = n.to_string();
        let algebras = run(&["monad-algebras", "monads/maybe3.monad", "--size", &size]);
        let models = run(&["models", "theories/pointed-set.thy", "--size", &size]);
        assert_eq!(algebras.result["count"], models.result["count"], "n = {n}");
    }
}
