use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpartition"))
        .args(args)
        .env_remove("QPARTITION_CEILING")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn lists_match_golden_files() {
    for (class, m) in [
        ("RR2_B", 15),
        ("RR2_C", 15),
        ("RR2_D", 15),
        ("RR1_B", 10),
        ("RR1_C", 10),
        ("RR1_D", 10),
    ] {
        let o = run(&["list", class, "--m", &m.to_string()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(
            stdout(&o),
            golden(&format!("list_{class}_{m}.txt")),
            "{class}"
        );
    }
    for class in ["RR2_B", "RR2_C", "RR2_D"] {
        let o = run(&["list", class, "--m", "15", "--json"]);
        assert_eq!(
            stdout(&o),
            golden(&format!("list_{class}_15.json")),
            "{class}"
        );
    }
    let o = run(&["list", "rs33_b", "--m", "14", "--json"]);
    assert_eq!(stdout(&o), golden("list_RS33_B_14.json"));
}

#[test]
fn list_json_shapes() {
    let v: Value =
        serde_json::from_str(&stdout(&run(&["list", "RR2_C", "--m", "15", "--json"]))).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    assert_eq!(v[0], serde_json::json!({ "parts": [15] }));
    let v: Value =
        serde_json::from_str(&stdout(&run(&["list", "RS33_C", "--m", "14", "--json"]))).unwrap();
    assert!(v
        .as_array()
        .unwrap()
        .contains(&serde_json::json!({ "pi": [8, 2], "lambda": [4] })));
    let v: Value =
        serde_json::from_str(&stdout(&run(&["list", "RR1_A", "--m", "0", "--json"]))).unwrap();
    assert_eq!(v, serde_json::json!([{ "parts": [] }]));
}

#[test]
fn counts() {
    assert_eq!(stdout(&run(&["count", "RR1_B", "--m", "10"])), "6\n");
    assert_eq!(stdout(&run(&["count", "RR2_B", "--m", "15"])), "9\n");
    let a = run(&[
        "count", "LEMMA1_A", "--m", "40", "--n", "2", "--r", "1", "--s", "2", "--k", "4",
    ]);
    let b = run(&[
        "count", "LEMMA1_B", "--m", "40", "--n", "2", "--r", "1", "--s", "2", "--k", "4",
    ]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn conjugate_worked_example() {
    let o = run(&[
        "conjugate",
        "--k",
        "4",
        "--r",
        "1",
        "--n",
        "5",
        "--parts",
        "20,18,16,16,14,8,8,6,4,2,1,1,1,1,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("conjugate_worked.json"));
    let o = run(&[
        "conjugate",
        "--k",
        "4",
        "--r",
        "1",
        "--n",
        "5",
        "--parts",
        "39,31,21,19,7",
        "--inverse",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["output"]["parts"],
        serde_json::json!([20, 18, 16, 16, 14, 8, 8, 6, 4, 2, 1, 1, 1, 1, 1])
    );
}

#[test]
fn conjugate_rejects_wrong_marker_count() {
    let o = run(&[
        "conjugate",
        "--k",
        "4",
        "--r",
        "1",
        "--n",
        "3",
        "--parts",
        "8,1,1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("marker"));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "S33", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({ "identity": "S33", "order": 60, "verdict": "PASS" })
    );

    let o = run(&[
        "verify", "HHK", "--r", "1", "--s", "3", "--k", "5", "--order", "40",
    ]);
    assert_eq!(stdout(&o), "PASS HHK(r=1, s=3, k=5) (order 40)\n");

    let o = run(&["verify", "RR2", "--m-max", "15", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");

    let o = run(&["verify", "hh", "--a", "-q^2", "--b", "q", "--json"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_grid_and_all() {
    let o = run(&["verify", "E151AK", "--grid", "--json", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert!(reports.len() > 1);
    assert!(reports.iter().all(|r| r["verdict"] == "PASS"));

    let o = run(&["verify", "all", "--order", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 18 + 9 + 1);
    let mut body = lines[..lines.len() - 1].to_vec();
    let printed = body.clone();
    body.sort_by_key(|l| l.trim_start_matches("PASS ").to_string());
    assert_eq!(printed, body, "reports are sorted by identity");
}

#[test]
fn sum_check_verdicts() {
    let o = run(&[
        "sum-check",
        "--lemma",
        "3",
        "--n",
        "2",
        "--m",
        "2",
        "--b-sign",
        "+1",
        "--b-exp",
        "1",
        "--order",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("L3 n=2 m=2 b=q^1"));
    assert_eq!(text.lines().last(), Some("PASS"));

    let o = run(&[
        "sum-check",
        "--lemma",
        "1",
        "--n",
        "2",
        "--m",
        "1",
        "--b-sign",
        "-1",
        "--b-exp",
        "-1",
        "--base",
        "2",
        "--order",
        "20",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["direct"], v["closed_form"]);

    let o = run(&[
        "sum-check",
        "--lemma",
        "2",
        "--n",
        "2",
        "--m",
        "1",
        "--b-exp",
        "1",
        "--no-dedup",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "FAIL");
    assert!(v["first_divergence"]["exponent"].as_u64().unwrap() <= 5);
    let o = run(&[
        "sum-check",
        "--lemma",
        "3",
        "--n",
        "2",
        "--m",
        "1",
        "--b-exp",
        "1",
        "--keep-leading",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o).lines().last(),
        Some("FAIL: first difference at q^1")
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "NOPE"][..],
        &["verify", "HHK", "--r", "2", "--s", "1", "--k", "4"],
        &["list", "RR9_A", "--m", "3"],
        &["count", "T2_A", "--m", "3"],
        &["sum-check", "--lemma", "4", "--n", "1", "--m", "1"],
        &[
            "sum-check",
            "--lemma",
            "1",
            "--n",
            "1",
            "--m",
            "1",
            "--b-sign",
            "2",
        ],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ceiling_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_qpartition");
    let o = Command::new(bin)
        .args(["count", "RR1_A", "--m", "12"])
        .env("QPARTITION_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ceiling 10"));
    let o = Command::new(bin)
        .args(["count", "RR1_A", "--m", "130"])
        .env("QPARTITION_CEILING", "130")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        run(&["count", "RR1_A", "--m", "130"]).status.code(),
        Some(2)
    );
}
