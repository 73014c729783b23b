use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use sl2hyper::arith::Prime;
use sl2hyper::cli::{run, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use sl2hyper::expr::evaluate;
use sl2hyper::idempotents::Idempotents;

fn sl2hyper(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("sl2hyper").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn schema(name: &str) -> jsonschema::Validator {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "schemas", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, text: &str) -> Value {
    let value: Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{text}");
    value
}

#[test]
fn eval_prints_the_canonical_form() {
    let (code, out, _) = sl2hyper(&["eval", "--p", "3", "X(1)*Y(1)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("Y(1)*X(1) + H(1)"));
    let (_, out, _) = sl2hyper(&["eval", "--p", "5", "1"]);
    assert_eq!(out.lines().next(), Some("1"));
}

#[test]
fn eval_of_the_rank_one_element() {
    let (_, out, _) = sl2hyper(&["--p", "2", "eval", "mu(1)*Y(1)*X(1)"]);
    let (_, b, _) = sl2hyper(&["--p", "2", "eval", "B(0; 1:0)"]);
    let (_, b1, _) = sl2hyper(&["--p", "2", "eval", "B(1; 1:0)"]);
    assert_eq!(out, b);
    assert_eq!(out, b1);
    assert!(out.contains("A_1: yes"));
}

#[test]
fn eval_output_round_trips() {
    let p = Prime::new(3).unwrap();
    let engine = Idempotents::shared(p);
    for expr in ["(X(1) + Y(2))*(H(1) + 2)", "E(0:2,1:2)", "B(01; 0:0,1:2) + mu(2, 2)"] {
        let (code, out, _) = sl2hyper(&["eval", "--p", "3", "--r", "2", expr]);
        assert_eq!(code, EXIT_OK);
        let text = out.lines().next().unwrap();
        assert_eq!(evaluate(text, &engine).unwrap(), evaluate(expr, &engine).unwrap());
        let (_, again, _) = sl2hyper(&["eval", "--p", "3", "--r", "2", text]);
        assert_eq!(again, out);
    }
}

#[test]
fn eval_json_matches_the_schema() {
    let v = schema("eval.schema.json");
    for expr in ["0", "1", "X(1)*Y(1)", "mu(0,2)", "3*Y(2)*X(2) + H(1)"] {
        let (code, out, _) = sl2hyper(&["eval", "--p", "5", "--r", "2", "--format", "json", expr]);
        assert_eq!(code, EXIT_OK);
        assert_valid(&v, &out);
    }
}

#[test]
fn parse_errors_exit_with_usage_status() {
    let (code, _, err) = sl2hyper(&["eval", "--p", "3", "X(1) * Q(2)"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 7"), "{err}");
    assert_eq!(sl2hyper(&["eval", "--p", "6", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hyper(&["eval", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hyper(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(sl2hyper(&["eval", "--p", "3", "--format", "dot", "1"]).0, EXIT_USAGE);
    assert_eq!(sl2hyper(&["--help"]).0, EXIT_OK);
}

#[test]
fn block_listings() {
    let (code, out, _) = sl2hyper(&["blocks", "--p", "2", "--r", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v = assert_valid(&schema("blocks.schema.json"), &out);
    let dims: Vec<u64> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 1, 1]);

    let (_, out, _) = sl2hyper(&["blocks", "--p", "3", "--format", "json", "--level", "full"]);
    let v = assert_valid(&schema("blocks.schema.json"), &out);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 6);
    assert_eq!(v["total_dim"], 9);

    let (code, out, _) = sl2hyper(&["blocks", "--p", "3", "--r", "2", "--format", "dot"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("digraph").count(), 36);
}

#[test]
fn cap_refusals() {
    let (code, _, err) = sl2hyper(&["blocks", "--p", "17", "--r", "2"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("83521"), "{err}");
    assert_eq!(sl2hyper(&["blocks", "--p", "3", "--r", "2", "--dim-cap", "80"]).0, EXIT_CAP);
    assert_eq!(sl2hyper(&["verify", "--p", "17", "--r", "2"]).0, EXIT_CAP);
    assert_eq!(sl2hyper(&["verify", "--p", "7", "--r", "2"]).0, EXIT_OK);
}

#[test]
fn pim_reports() {
    let args = ["pim", "--p", "3", "--r", "2", "--pairs", "0:0,1:2", "--level", "full"];
    let (code, out, _) = sl2hyper(&[&args[..], &["--eps", "00", "--format", "json"]].concat());
    assert_eq!(code, EXIT_OK);
    let v = assert_valid(&schema("pim.schema.json"), &out);
    assert_eq!(v["loewy_length"], 2);
    assert_eq!(v["rigid"], true);

    let (code, out, _) = sl2hyper(&[&args[..], &["--eps", "01"]].concat());
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim 1"));

    let (code, _, err) = sl2hyper(&[&args[..], &["--eps", "10"]].concat());
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("position 0"), "{err}");

    let (code, out, _) = sl2hyper(&[&args[..], &["--eps", "00", "--format", "dot"]].concat());
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"00\" -> \"01\" [label=\"1\"]"), "{out}");
}

#[test]
fn verify_levels() {
    let (code, out, _) = sl2hyper(&["verify", "--p", "3", "--r", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v = assert_valid(&schema("verify.schema.json"), &out);
    let quick = v["runs"][0]["checks"].as_array().unwrap().len();

    let (code, out, _) = sl2hyper(&["verify", "--p", "3", "--r", "2", "--level", "full", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v = assert_valid(&schema("verify.schema.json"), &out);
    assert!(v["runs"][0]["checks"].as_array().unwrap().len() > quick);
}

#[test]
fn verify_names_the_failing_check() {
    let (code, out, _) = sl2hyper(&["verify", "--p", "2", "--r", "1", "--level", "full"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("FAIL faithfulness"), "{out}");
    assert!(out.contains("reproduce: sl2hyper verify --p 2 --r 1 --level full --seed 0 --check faithfulness"));
    let (code, _, _) = sl2hyper(&["verify", "--p", "2", "--r", "1", "--check", "nonsense"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["blocks", "--p", "3", "--r", "2", "--format", "json", "--level", "full"][..],
        &["pim", "--p", "2", "--r", "3", "--pairs", "0:1,0:1,1:0", "--eps", "000", "--format", "dot"],
        &["eval", "--p", "5", "E(0:2) + E(1:4)*Y(3)"],
    ] {
        assert_eq!(sl2hyper(args), sl2hyper(args));
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_sl2hyper");
    let out = Command::new(bin).args(["eval", "--p", "3", "X(1)*Y(1)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("Y(1)*X(1) + H(1)\n"));
    let out = Command::new(bin).args(["blocks", "--p", "17", "--r", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAP));
}
