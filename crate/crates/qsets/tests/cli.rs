//! End-to-end checks of the binary: output shapes, exit codes, round trips.

use std::process::{Command, Output};

fn qsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("JSON on stdout")
}

#[test]
fn quotient_reports_the_base_set() {
    let out = qsets(&[
        "quotient",
        "--group",
        "f:3",
        "--set",
        "x, x z, y^-1, y^-1 x^-1 y^-1, y^-1 z",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["right_card"], 17);
    assert_eq!(json["left_card"], 15);
    assert_eq!(json["gap"], 2);
    assert_eq!(json["subset_size"], 5);
}

#[test]
fn graph_component_count_matches_quotient_card() {
    let args = ["--group", "sd16", "--set", "e, a, b, ab"];
    let quotient: serde_json::Value = stdout_json(&qsets(&[&["quotient"], &args[..]].concat()));
    let graph: serde_json::Value = stdout_json(&qsets(
        &[
            &["graph"],
            &args[..],
            &["--side", "right", "--format", "json"],
        ]
        .concat(),
    ));
    assert_eq!(
        graph["components"].as_array().unwrap().len() as u64,
        quotient["right_card"].as_u64().unwrap()
    );
    assert_eq!(graph["n"], 4);
    assert_eq!(graph["side"], "right");
}

#[test]
fn graph_dot_output_is_deterministic() {
    let args = [
        "graph",
        "--group",
        "f:3",
        "--set",
        "x, x z, y^-1, y^-1 x^-1 y^-1, y^-1 z",
        "--side",
        "right",
    ];
    let one = qsets(&args);
    let two = qsets(&args);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("graph difference_right {"));
}

#[test]
fn search_finds_the_minimal_witness() {
    let out = qsets(&["search", "--group", "sd16", "--max-size", "4"]);
    let json = stdout_json(&out);
    assert_eq!(json["min_asymmetric_size"], 4);
    let witness: Vec<String> = json["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(witness, ["e", "a", "b", "ab"]);

    // the printed witness re-parses to a subset with gap magnitude 3
    let set = witness.join(", ");
    let report = stdout_json(&qsets(&["quotient", "--group", "sd16", "--set", &set]));
    assert_eq!(report["gap"].as_i64().unwrap().abs(), 3);
}

#[test]
fn printed_sets_reparse_to_the_same_subset() {
    let out = qsets(&["construct", "dinfty", "--t", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let set_line = text
        .lines()
        .find_map(|l| l.strip_prefix("set: "))
        .expect("set line");
    let report = stdout_json(&qsets(&["quotient", "--group", "dinf", "--set", set_line]));
    assert_eq!(report["gap"], 1);
    // and formatting is canonical: quoting the set back prints it unchanged
    let echoed = qsets(&[
        "quotient", "--group", "dinf", "--set", set_line, "--format", "text",
    ]);
    let echoed_text = String::from_utf8(echoed.stdout).unwrap();
    assert!(echoed_text.contains(&format!("set: {set_line}")));
}

#[test]
fn construct_verify_flags_nominal_mismatches() {
    // matches: the base set verifies clean
    let ok = qsets(&["construct", "f3", "--verify"]);
    assert!(ok.status.success());

    // the n = 2 family's nominal closed forms overcount; verify must fail
    // loudly, printing both values, and exit nonzero
    let bad = qsets(&["construct", "an", "--n", "2", "--verify"]);
    assert!(!bad.status.success());
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(
        text.contains("MISMATCH enumerated 83 vs claimed 84"),
        "{text}"
    );

    // same for the quadratic family's odd nominal gap
    let ck = qsets(&["construct", "ck", "--k", "3", "--verify"]);
    assert!(!ck.status.success());
    let text = String::from_utf8(ck.stdout).unwrap();
    assert!(
        text.contains("verify right cardinality: 23 == 23"),
        "{text}"
    );
    assert!(
        text.contains("MISMATCH enumerated 4 vs claimed 1"),
        "{text}"
    );
}

#[test]
fn negative_gap_targets_parse() {
    let out = qsets(&["construct", "gapset", "--t", "-1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("{0,2,3,4,7,11,12,14}"), "{text}");
}

#[test]
fn sample_exact_is_exact() {
    let out = qsets(&["sample", "--radius", "1", "--mode", "exact"]);
    let json = stdout_json(&out);
    assert_eq!(json["mode"], "exact");
    assert_eq!(json["trials_or_total"], 32);
    assert_eq!(json["mean"], 0.0);
    assert_eq!(json["variance"], 0.0);
}

#[test]
fn sample_mc_is_seeded() {
    let args = [
        "sample", "--radius", "2", "--mode", "mc", "--trials", "200", "--seed", "7",
    ];
    let one = stdout_json(&qsets(&args));
    let two = stdout_json(&qsets(&args));
    assert_eq!(one, two);
    assert_eq!(one["seed"], 7);
}

#[test]
fn oversized_dot_request_falls_back_to_summary_json() {
    let set = (1..=13)
        .map(|k| format!("x^{k}"))
        .collect::<Vec<_>>()
        .join(", ");
    let out = qsets(&[
        "graph", "--group", "f:2", "--set", &set, "--side", "right", "--format", "dot",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["n"], 13);
    assert!(String::from_utf8_lossy(&out.stderr).contains("component summary"));
}

#[test]
fn catalog_lists_specs() {
    let out = qsets(&["catalog"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for needle in ["f:<m>", "sd16", "f21", "prod(<a>,<b>)"] {
        assert!(text.contains(needle), "missing {needle}");
    }
}

#[test]
fn usage_errors_exit_two() {
    // unknown flag (clap)
    assert_eq!(qsets(&["quotient", "--nope"]).status.code(), Some(2));
    // bad group spec
    assert_eq!(
        qsets(&["quotient", "--group", "zz:9", "--set", "e"])
            .status
            .code(),
        Some(2)
    );
    // malformed word names the offending token
    let out = qsets(&["quotient", "--group", "f:2", "--set", "x, q^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("q^2"));
    // conflicting mode flags rejected before computation
    assert_eq!(
        qsets(&["sample", "--radius", "1", "--mode", "exact", "--trials", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = qsets(&[
        "search",
        "--group",
        "sd16",
        "--max-size",
        "4",
        "--budget",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn oversized_exact_sampling_exits_three() {
    let out = qsets(&["sample", "--radius", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(3));
}
