use std::process::{Command, Output};

fn singinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fermat_report_json() {
    let o = singinv(&["verify-main", "x^3 + y^3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["invariants"]["lct"], "2/3");
    assert_eq!(v["invariants"]["theta"], serde_json::json!(["2", "2"]));
    assert_eq!(v["verdicts"][0]["margin"], "0");
    assert_eq!(v["verdicts"][0]["holds"], true);
    assert_eq!(v["meta"]["timings_ms"], serde_json::json!({}));
    assert_eq!(stdout(&singinv(&["verify-main", "x^3 + y^3", "--json"])), json);
}

#[test]
fn text_subcommands() {
    let o = singinv(&["verify-lct", "y^2 + x^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("lct-dominates: 5/6 <= 1"));
    let o = singinv(&["probe-pham", "x^2; x*y; y^3"]);
    assert!(stdout(&o).contains("pham-probe: 9/10 <= 1"));
    let o = singinv(&["verify-chain", "x^2; xy; y^3"]);
    assert!(stdout(&o).contains("lct-lelong-chain: 9/10 <= 1"));
    let o = singinv(&["compute", "x^2; y^2; z^2"]);
    assert!(stdout(&o).contains("e: [2, 4, 8]"), "{}", stdout(&o));
}

#[test]
fn invalid_input_exits_one() {
    let o = singinv(&["compute", "x^2 +* y"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 5"));
    assert_eq!(singinv(&["verify-lct", "x*y"]).status.code(), Some(1));
    assert_eq!(singinv(&["verify-main", "x^3 + x*y^3 + y^5"]).status.code(), Some(1));
    assert_eq!(singinv(&["verify-main", "x^3 + x*y^3 + y^5", "--nondegenerate"]).status.code(), Some(0));
}

#[test]
fn numeric_only_failure_exits_three() {
    let o = singinv(&["verify-chain", "x^3; y^3; y^2*z; z^2", "--first-radius", "0.1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAILS [numeric]"));
}

#[test]
fn corpus_is_stable_across_workers() {
    let empty = singinv(&["corpus", "--dim", "2", "--count", "0", "--json"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("\"cases\": 0"));
    let one = singinv(&["corpus", "--dim", "2", "--count", "25", "--seed", "42", "--json", "--workers", "1"]);
    let four = singinv(&["corpus", "--dim", "2", "--count", "25", "--seed", "42", "--json", "--workers", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
}
