use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn hhgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhgeo"))
        .args(args)
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    hhgeo(args).status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut rows = vec![r.headers().unwrap().iter().map(String::from).collect()];
    rows.extend(
        r.records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect()),
    );
    rows
}

#[test]
fn verify_all_passes() {
    let out = hhgeo(&[
        "verify",
        "--suite",
        "all",
        "--space",
        "euclidean2",
        "--trials",
        "500",
        "--seed",
        "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["pass"], true);
    let chains = report["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 7);
    for c in chains {
        assert!(c["worst_margin"].is_number(), "{}", c["chain"]);
        assert_eq!(c["violations"], 0);
    }
    assert!(report["regression"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}

#[test]
fn verify_zero_trials() {
    let out = hhgeo(&[
        "verify",
        "--suite",
        "corollary",
        "--space",
        "halfplane",
        "--trials",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["chains"][0];
    assert_eq!(c["evaluated"], 0);
    assert!(c["worst"].is_null());
}

#[test]
fn violations_exit_one() {
    for form in ["product", "unscaled-difference"] {
        let out = hhgeo(&[
            "verify",
            "--suite",
            "corollary",
            "--c-term",
            form,
            "--trials",
            "300",
            "--seed",
            "1",
        ]);
        assert_eq!(out.status.code(), Some(1), "{form}");
        let report = json(&out);
        assert_eq!(report["pass"], false);
        assert!(report["chains"][0]["violations"].as_u64().unwrap() > 0);
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--space", "klein"],
        &["verify", "--suite", "nothing"],
        &["verify", "--tol", "0"],
        &["verify", "--trials", "-3"],
        &["frobnicate"],
        &[
            "fracint", "--op", "rl-left", "--alpha", "1", "--a", "0", "--x", "1", "--f", "t^^2",
        ],
        &[
            "fracint", "--op", "rl-left", "--alpha", "1", "--x", "1", "--f", "t",
        ],
        &[
            "fracint", "--op", "rl-left", "--alpha", "-1", "--a", "0", "--x", "1", "--f", "t",
        ],
        &["sweep", "thm_ty1", "--alpha="],
        &["sweep", "thm_ty1", "--a", "0.9", "--b", "0.5"],
        &["sweep", "thm_zz"],
        &[
            "constants",
            "--alpha",
            "1",
            "--rho",
            "1",
            "--a",
            "1",
            "--b",
            "0",
        ],
    ];
    for args in cases {
        assert_eq!(code(args), 2, "{args:?}");
    }
    let out = hhgeo(&["verify", "--space", "klein"]);
    assert!(!out.stderr.is_empty());
}

#[test]
fn fracint_examples() {
    let out = hhgeo(&[
        "fracint",
        "--op",
        "katugampola-left",
        "--alpha",
        "0.5",
        "--rho",
        "2",
        "--a",
        "0",
        "--x",
        "1",
        "--f",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out)["value"].as_f64().unwrap();
    assert!((v - 0.5f64.sqrt() / (std::f64::consts::PI.sqrt() / 2.0)).abs() < 1e-12);

    let out = hhgeo(&[
        "fracint", "--op", "rl-left", "--alpha", "1", "--f", "t^2", "--a", "0", "--x", "1",
    ]);
    let r = json(&out);
    assert!((r["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!(r["error_estimate"].as_f64().unwrap() >= 0.0);

    let out = hhgeo(&[
        "fracint",
        "--op",
        "hadamard-right",
        "--alpha",
        "1",
        "--f",
        "t",
        "--x",
        "1",
        "--b",
        "3",
    ]);
    assert!((json(&out)["value"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn sweep_ty1_grid() {
    let out = hhgeo(&[
        "sweep",
        "thm_ty1",
        "--alpha",
        "0.5,1,2",
        "--rho",
        "1,2",
        "--space",
        "euclidean2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows[0].len(), 16);
    assert_eq!(rows[0][0], "chain");
    assert_eq!(rows.len(), 7);
    let pass = rows[0].iter().position(|c| c == "pass").unwrap();
    assert!(rows[1..].iter().all(|r| r[pass] == "true"));
}

#[test]
fn sweep_constants_nonnegative() {
    let out = hhgeo(&[
        "sweep",
        "constants",
        "--alpha",
        "0.5,1,2,3",
        "--rho",
        "0.5,1,2",
        "--a",
        "0,0.25,0.5",
        "--b",
        "1,0.75",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    let c = rows[0].iter().position(|h| h == "c").unwrap();
    assert!(rows.len() > 30);
    assert!(rows[1..]
        .iter()
        .all(|r| r[c].parse::<f64>().unwrap() >= 0.0));
}

#[test]
fn constants_command() {
    let out = hhgeo(&[
        "constants",
        "--alpha",
        "1",
        "--rho",
        "1",
        "--a",
        "0",
        "--b",
        "1",
        "--h",
        "constant_one",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert!((r["c"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((r["e_h"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("report{run}.{format}"));
            let p = path.to_str().unwrap();
            let args = [
                "verify", "--suite", "all", "--space", "spider3", "--trials", "100", "--seed", "9",
                "--format", format, "--out", p,
            ];
            assert_eq!(code(&args), 0);
            files.push(fs::read(&path).unwrap());
        }
        assert!(!files[0].is_empty());
        assert_eq!(files[0], files[1], "{format}");
    }
    let a = hhgeo(&[
        "sweep", "thm_cb1", "--alpha", "0.7,1.5", "--q", "2,3", "--seed", "4",
    ]);
    let b = hhgeo(&[
        "sweep", "thm_cb1", "--alpha", "0.7,1.5", "--q", "2,3", "--seed", "4",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_report_layout() {
    let out = hhgeo(&[
        "verify", "--suite", "all", "--trials", "20", "--format", "csv",
    ]);
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(
        rows[0],
        [
            "kind",
            "name",
            "space",
            "trials",
            "seed",
            "tol",
            "evaluated",
            "discarded",
            "failed",
            "violations",
            "value",
            "pass"
        ]
    );
    let kinds: Vec<&str> = rows[1..].iter().map(|r| r[0].as_str()).collect();
    for k in [
        "falsify",
        "discrepancy_falsify",
        "regression",
        "discrepancy_reference",
    ] {
        assert!(kinds.contains(&k), "{k}");
    }
}

#[test]
fn json_keys_are_sorted() {
    let out = hhgeo(&["verify", "--suite", "all", "--trials", "10"]);
    let text = std::str::from_utf8(&out.stdout).unwrap();
    // last key seen per indentation level of the pretty-printed report
    let mut last: Vec<Option<String>> = Vec::new();
    for line in text.lines() {
        let indent = line.len() - line.trim_start().len();
        last.truncate(indent + 1);
        last.resize(indent + 1, None);
        let body = line.trim_start();
        if body.starts_with('}') || body.starts_with(']') {
            last.truncate(indent);
            continue;
        }
        if let Some(key) = body
            .strip_prefix('"')
            .and_then(|b| b.split_once("\": "))
            .map(|(k, _)| k.to_string())
        {
            if let Some(prev) = &last[indent] {
                assert!(prev < &key, "{prev} before {key}");
            }
            last[indent] = Some(key);
        }
    }
}

#[test]
fn unwritable_output_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    assert_eq!(
        code(&[
            "verify",
            "--suite",
            "classic",
            "--trials",
            "1",
            "--out",
            path.to_str().unwrap()
        ]),
        2
    );
}
