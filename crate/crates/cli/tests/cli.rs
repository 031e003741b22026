//! End-to-end checks of the `wtangle` binary: exit codes, output formats,
//! and the documented behavior of each subcommand.

use std::process::{Command, Output};

fn wtangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn classify_lists_configurations() {
    let out = wtangle(&["classify", "--n", "3", "--r", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "D_{2,1}\ncount = 1\n");

    let out = wtangle(&["classify", "--n", "3", "--r", "1"]);
    assert_eq!(stdout(&out), "D_{3}\ncount = 1\n");

    let out = wtangle(&["classify", "--n", "3", "--r", "3"]);
    assert_eq!(stdout(&out), "D_{1,1,1}\ncount = 1\n");

    let out = wtangle(&["classify", "--n", "6", "--r", "3"]);
    assert_eq!(stdout(&out), "D_{4,1,1}\nD_{3,2,1}\nD_{2,2,2}\ncount = 3\n");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["classify", "--n", "3", "--r", "4"][..],
        &["verify", "--max-n", "2"][..],
        &["verify", "--max-n", "15"][..],
        &["analyze", "--n", "2", "--theta", "pi"][..],
        &["analyze", "--n", "3", "--theta", "0"][..],
        &["analyze", "--n", "3", "--theta", "7.0"][..],
        &[
            "sweep",
            "--n-list",
            "2",
            "--quantities",
            "pairwise_negativity",
        ][..],
        &["sweep", "--n-list", "3", "--quantities", "nonsense"][..],
    ] {
        let out = wtangle(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_one() {
    let out = wtangle(&[
        "sweep",
        "--n-list",
        "3",
        "--quantities",
        "pairwise_negativity",
        "--output",
        "/nonexistent-dir/out.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_json_round_trips() {
    let out = wtangle(&["analyze", "--n", "3", "--theta", "pi"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    let reserialized = serde_json::to_string(&value).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
    assert_eq!(value, reparsed);

    let pairwise = value["concurrence_set"]["pairwise"].as_f64().unwrap();
    assert!((pairwise - 2.0 / 3.0).abs() < 1e-9);
    let tangle = value["negativity_tangle"].as_f64().unwrap();
    assert!((tangle - 0.549363545555462).abs() < 1e-9);
    assert_eq!(value["negativity_set"]["measure_kind"], "negativity");
}

#[test]
fn analyze_accepts_symbolic_angles() {
    let from_token = stdout(&wtangle(&["analyze", "--n", "4", "--theta", "3pi/2"]));
    let from_value = stdout(&wtangle(&[
        "analyze",
        "--n",
        "4",
        "--theta",
        "4.71238898038468985769",
    ]));
    assert_eq!(from_token, from_value);
}

#[test]
fn sweep_one_vs_rest_matches_closed_form_and_decays_slower() {
    let out = wtangle(&[
        "sweep",
        "--n-list",
        "3,4,5,6",
        "--theta-start",
        "pi",
        "--theta-end",
        "2pi",
        "--theta-steps",
        "2",
        "--quantities",
        "one_vs_rest_negativity,pairwise_negativity",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut one_rest = Vec::new();
    let mut pairwise = Vec::new();
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let theta: f64 = fields[1].parse().unwrap();
        if (theta - std::f64::consts::PI).abs() < 1e-12 {
            let n: f64 = fields[0].parse().unwrap();
            let v: f64 = fields[2].parse().unwrap();
            assert!(
                (v - (n - 1.0).sqrt() * 2.0 / n).abs() < 1e-9,
                "one-vs-rest at n={n}: {v}"
            );
            one_rest.push(v);
            pairwise.push(fields[3].parse::<f64>().unwrap());
        }
    }
    assert_eq!(one_rest.len(), 4);
    // Both decrease with n, the pairwise measure much faster.
    for i in 0..3 {
        let pair_ratio = pairwise[i + 1] / pairwise[i];
        let rest_ratio = one_rest[i + 1] / one_rest[i];
        assert!(pair_ratio < rest_ratio, "pairwise must decay faster");
    }
}

#[test]
fn verify_writes_report_to_stdout_by_default() {
    let out = wtangle(&["verify", "--max-n", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_pass"], true);
    assert_eq!(report["max_n"], 3);
    assert!(report["outcomes"].as_array().unwrap().len() >= 6);
}

#[test]
fn verify_covers_ten_qubits_within_budget() {
    // Above eight qubits the direct-negativity cases clamp to their range;
    // everything else still runs and passes.
    let start = std::time::Instant::now();
    let out = wtangle(&["verify", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_pass"], true);
    let labels: Vec<&str> = report["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["case"]["label"].as_str().unwrap())
        .collect();
    assert!(labels.contains(&"monogamy n=10"));
    assert!(labels.contains(&"negativity identity n=8"));
    assert!(!labels
        .iter()
        .any(|l| l.starts_with("negativity identity n=9")));
    assert!(start.elapsed().as_secs_f64() < 30.0);
}

#[test]
fn analyze_near_separable_state_reports_vanishing_measures() {
    let out = wtangle(&["analyze", "--n", "4", "--theta", "1e-4"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for value in [
        &report["concurrence_set"]["pairwise"],
        &report["negativity_set"]["pairwise"],
        &report["concurrence_tangle"],
        &report["negativity_tangle"],
    ] {
        assert!(value.as_f64().unwrap().abs() < 1e-6, "{value}");
    }
}
