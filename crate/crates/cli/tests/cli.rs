//! End-to-end tests of the `charcalc` binary: exit codes, output
//! determinism, and JSON round-trips.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn charcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn charcalc_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_charcalc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verma_char_json_matches_schema() {
    let out = charcalc(&["char", "--rs", "A1", "--verma", "0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["denom"], serde_json::json!([{"beta": [1], "n": 1}]));
    assert_eq!(v["terms"][0]["mu"], "0");
}

#[test]
fn tensor_of_non_dominant_simples_is_obstructed() {
    let out = charcalc(&["tensor", "--rs", "A1", "--simple", "-1", "--simple", "-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "obstructed: alpha_1 squared");
}

#[test]
fn pulled_back_vermas_give_a_verma() {
    let out = charcalc(&[
        "tensor",
        "--rs",
        "A1xA1",
        "--pull-verma",
        "1:3/2",
        "--pull-verma",
        "2:3/2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("unobstructed"));
    assert!(text.contains("equals Verma character of 3/2,3/2"));
}

#[test]
fn emitted_json_reparses_to_an_equal_value() {
    let out = charcalc(&["char", "--rs", "A2", "--weyl", "1,1", "--json"]);
    assert!(out.status.success());
    let json_text = stdout(&out);

    // Feed the emitted JSON back through `reduce` and compare.
    let back = charcalc_with_stdin(
        &["reduce", "--rs", "A2", "--input", "-", "--json"],
        &json_text,
    );
    assert!(back.status.success());
    assert_eq!(stdout(&back), json_text, "reduce is identity on reduced JSON");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["rootsys", "--rs", "G2", "--json"],
        vec!["expand", "--rs", "B2", "--p", "--depth", "4", "--json"],
        vec!["sweep", "--rs", "A1", "--weight", "-2", "--weight", "3", "--json"],
    ] {
        let first = charcalc(&args);
        let second = charcalc(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes_separate_usage_domain_and_success() {
    // Usage error: unknown subcommand (clap) -> 2.
    let out = charcalc(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // Parse error: malformed weight -> 2.
    let out = charcalc(&["char", "--rs", "A1", "--verma", "zzz"]);
    assert_eq!(out.status.code(), Some(2));

    // Parse error: wrong arity -> 2.
    let out = charcalc(&["char", "--rs", "A2", "--verma", "1"]);
    assert_eq!(out.status.code(), Some(2));

    // Domain error: simple character needs KL data -> 1, with error JSON.
    let out = charcalc(&["char", "--rs", "A2", "--simple", "-1,0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "needs_kl_data");

    // Domain error: non-finite-type Cartan matrix -> 1.
    let out = charcalc(&["rootsys", "--rs", "{\"cartan\": [[2,-2],[-2,2]]}"]);
    assert_eq!(out.status.code(), Some(1));

    // Success -> 0.
    let out = charcalc(&["check", "--rs", "A1", "--weyl", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension: 3"));
}

#[test]
fn decompose_weyl_character() {
    let out = charcalc(&["decompose", "--rs", "A1", "--weyl", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"weight": "-3", "c": -1},
            {"weight": "1", "c": 1}
        ])
    );

    // The square of p does not decompose.
    let out = charcalc(&["decompose", "--rs", "A1", "--p"]);
    assert_eq!(out.status.code(), Some(0));
    let out = charcalc(&["check", "--rs", "A1", "--p", "--json"]);
    assert!(out.status.success());
}

#[test]
fn linkage_and_oracle_queries() {
    let out = charcalc(&["linkage", "--rs", "A1", "--a", "0", "--b", "-2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["linked"], true); // -2w = -alpha is s.0
    assert_eq!(v["leq_ba"], true);
    assert_eq!(v["leq_ab"], false);

    let out = charcalc(&["oracle", "--rs", "A2", "--partition", "1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "partition count: 2");

    let out = charcalc(&["oracle", "--rs", "A2", "--weyl-dim", "1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 8);

    let out = charcalc(&[
        "oracle",
        "--rs",
        "A2",
        "--freudenthal",
        "--lam",
        "1,1",
        "--mu",
        "0,0",
    ]);
    assert_eq!(stdout(&out).trim(), "multiplicity: 2");
}

#[test]
fn sweep_reports_verdicts_per_weight() {
    let out = charcalc(&[
        "sweep", "--rs", "A1", "--weight", "-5", "--weight", "-9/2", "--weight", "5", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["violations"], 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(results[0]["obstructed"], true);
    assert_eq!(results[0]["witnesses"], serde_json::json!([[1]]));
    assert_eq!(results[1]["obstructed"], true);
    assert_eq!(results[2]["obstructed"], false);
    assert_eq!(results[2]["dimension"], 6);
}

#[test]
fn cap_flag_and_env_are_honored() {
    let out = charcalc(&["rootsys", "--rs", "B2", "--cap", "3", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["weyl_order"], serde_json::Value::Null);

    let out = Command::new(env!("CARGO_BIN_EXE_charcalc"))
        .args(["rootsys", "--rs", "B2", "--json"])
        .env("CHARCALC_CAP", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["weyl_order"], serde_json::Value::Null);

    // Flag beats env.
    let out = Command::new(env!("CARGO_BIN_EXE_charcalc"))
        .args(["rootsys", "--rs", "B2", "--cap", "100", "--json"])
        .env("CHARCALC_CAP", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["weyl_order"], 8);

    // Linkage propagates the cap as a domain error.
    let out = charcalc(&["linkage", "--rs", "B2", "--a", "0,0", "--b", "1,0", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn expand_depth_flag() {
    let out = charcalc(&["expand", "--rs", "A1", "--p", "--depth", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "depth 3");
    assert_eq!(lines.len(), 5); // header + 4 coefficients
}
