//! End-to-end checks of the `specht` binary: exit codes, JSON records and
//! the reference sweeps.

use std::process::{Command, Output};

use serde_json::Value;

fn specht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).expect("stdout line is JSON");
            // serde_json preserves key order, so re-serialising must be lossless.
            assert_eq!(serde_json::to_string(&v).unwrap(), l);
            v
        })
        .collect()
}

fn classify_json(p: &str, lambda: &str) -> Value {
    let out = specht(&[
        "classify", "--p", p, "--lambda", lambda, "--method", "both", "--json",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    lines.pop().unwrap()
}

#[test]
fn quadruple_example_agrees() {
    let v = classify_json("3", "1,1,1,1");
    assert_eq!(v["h0"], 0);
    assert_eq!(v["ext1_B"], 1);
    assert_eq!(v["h1"]["value"], 1);
    assert_eq!(v["h1"]["exact"], true);
    assert_eq!(v["case"], "quadruple");
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn characteristic_two_reports_lower_bound() {
    let v = classify_json("2", "2,1,1,1");
    assert_eq!(v["ext1_B"], 0);
    assert_eq!(v["h1"]["exact"], false);
    assert_eq!(v["witness"], Value::Null);

    let out = specht(&["classify", "--p", "2", "--lambda", "2,1,1"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim H¹ ≥ 1"));
    // Without --json nothing goes to stdout.
    assert!(out.stdout.is_empty());
}

#[test]
fn single_row_is_trivial() {
    let out = specht(&["classify", "--p", "3", "--lambda", "7", "--json"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["h0"], 1);
    assert_eq!(v["ext1_B"], 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("dim H¹ = 0"));
}

#[test]
fn schema_keys_in_stable_order() {
    let out = specht(&["classify", "--p", "5", "--lambda", "4,3,0,0", "--json"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["p", "lambda", "h0", "ext1_B", "h1", "case", "witness"]
    );
    assert_eq!(v["lambda"], serde_json::json!([4, 3]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--p", "4", "--lambda", "1"][..],
        &["classify", "--p", "3", "--lambda", "1,2"],
        &["classify", "--p", "3", "--lambda", "2,x"],
        &["classify", "--p", "3", "--lambda=-1,0"],
        &["classify", "--p", "3"],
        &["classify", "--p", "3", "--lambda", "1", "--method", "guess"],
        &["sweep", "--p", "1", "--d-max", "3"],
        &["sl2", "--p", "3", "4"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&specht(args)), 2, "{args:?}");
    }
}

#[test]
fn both_methods_agree_on_every_small_partition() {
    for p in ["2", "3", "5"] {
        let out = specht(&["sweep", "--p", p, "--d-max", "12", "--check"]);
        assert_eq!(
            code(&out),
            0,
            "p={p}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(out.stdout.is_empty());
    }
    let out = specht(&[
        "sweep",
        "--p",
        "5",
        "--d-max",
        "10",
        "--parts-max",
        "4",
        "--check",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn sweep_output_is_ordered_and_independent_of_jobs() {
    let one = specht(&["sweep", "--p", "3", "--d-max", "8", "--jobs", "1"]);
    let many = specht(&["sweep", "--p", "3", "--d-max", "8", "--jobs", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    let records = json_lines(&one);
    // 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22 partitions of 0..=8.
    assert_eq!(records.len(), 67);
    assert_eq!(records[0]["lambda"], serde_json::json!([]));
    assert_eq!(records[1]["lambda"], serde_json::json!([1]));
    assert_eq!(
        records[66]["lambda"],
        serde_json::json!([1, 1, 1, 1, 1, 1, 1, 1])
    );
}

#[test]
fn basis_examples() {
    for (lambda, dim) in [("9,3", 2), ("8,1", 1), ("5", 0)] {
        let out = specht(&["basis", "--p", "3", "--lambda", lambda, "--json"]);
        assert_eq!(code(&out), 0);
        let v = &json_lines(&out)[0];
        assert_eq!(v["dim"], dim, "{lambda}");
        assert_eq!(v["basis"].as_array().unwrap().len(), dim);
        let text = String::from_utf8_lossy(&out.stderr);
        assert!(text.contains(&format!("dim E(λ) = {dim}")));
    }
    let out = specht(&["basis", "--p", "3", "--lambda", "8,1"]);
    let text = String::from_utf8_lossy(&out.stderr);
    // The canonical line for (8,1): C(9,1) / 3^2 = 1.
    assert!(text.contains("y(1,2)_1 = 1"), "{text}");
}

#[test]
fn basis_dumps_relation_system() {
    let out = specht(&["basis", "--p", "3", "--lambda", "1,1,1", "--dump-system"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(
        text.contains("T3a[1,2,3;1,1]: 2*y(1,2)_1 + 2*y(1,3)_1 + 2*y(2,3)_1 = 0"),
        "{text}"
    );
}

#[test]
fn sl2_verdicts() {
    let run = |r: &str, s: &str| {
        let out = specht(&["sl2", "--p", "3", r, s, "--json"]);
        assert_eq!(code(&out), 0);
        json_lines(&out).pop().unwrap()
    };
    let odd = run("5", "2");
    assert_eq!(odd["ext1"], 0);
    assert_eq!(odd["reason"], "parity");
    assert_eq!(run("4", "4")["ext1"], 0);
    // r - s = 2, m = 1 and val_3(s + 2) = 1, so m < p^v.
    let below = run("3", "1");
    assert_eq!(below["ext1"], 1);
    assert_eq!(below["reason"], "m < p^v");
}
