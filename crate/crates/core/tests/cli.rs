use std::process::{Command, Output};

use serde_json::Value;

fn hslab(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hslab"));
    cmd.args(args).env_remove("HSLAB_THREADS");
    if let Some(t) = threads {
        cmd.env("HSLAB_THREADS", t);
    }
    cmd.output().expect("run hslab")
}

fn strip_timing(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes)
        .lines()
        .filter(|l| !l.contains("wall_time_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes() {
    assert_eq!(
        hslab(&["table", "--family", "A", "--n", "7"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["table", "--family", "B", "--n", "2", "--r", "0"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["table", "--family", "C", "--n", "2"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["ehrhart", "--family", "A", "--n", "2", "--k", "5"], None)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["verify", "--max-n", "2"], Some("0")).status.code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["verify", "--max-n", "2"], Some("many"))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hslab(&["verify", "--max-n", "0"], None).status.code(),
        Some(0)
    );
}

#[test]
fn csv_tables() {
    let out = hslab(
        &[
            "table",
            "--family",
            "flag-eulerian",
            "--n",
            "3",
            "--format",
            "csv",
        ],
        None,
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "k,count\n1,1\n2,4\n3,1\n"
    );
    let out = hslab(
        &["table", "--family", "B", "--n", "2", "--format", "csv"],
        None,
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "k,coefficients\n1,0;1\n2,1\n"
    );
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.json");
    let args = ["table", "--family", "a", "--n", "3", "--r", "2"];
    let stdout = hslab(&args, None).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(hslab(&with_out, None).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn output_is_deterministic() {
    let table = ["table", "--family", "B", "--n", "4", "--r", "3"];
    assert_eq!(hslab(&table, None).stdout, hslab(&table, Some("1")).stdout);
    let verify = ["verify", "--max-n", "3", "--max-r", "2"];
    let one = hslab(&verify, Some("1"));
    let many = hslab(&verify, Some("8"));
    assert!(one.status.success() && many.status.success());
    assert_eq!(strip_timing(&one.stdout), strip_timing(&many.stdout));
    assert_eq!(
        strip_timing(&one.stdout),
        strip_timing(&hslab(&verify, Some("1")).stdout)
    );
}

#[test]
fn suite_selection() {
    let out = hslab(&["verify", "--suite", "tableaux", "--max-n", "3"], None);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let reports = report["reports"].as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports
        .iter()
        .all(|r| r["suite"] == "tableaux" && r["passed"] == true));
}

#[test]
fn interpolate_agrees_with_closed_form() {
    for family in ["A", "B"] {
        for n in 1..=3 {
            for r in 1..=3 {
                for k in 1..=r * n {
                    let args = |mode| {
                        let (n, r, k) = (n.to_string(), r.to_string(), k.to_string());
                        let out = hslab(
                            &[
                                "ehrhart", "--family", family, "--n", &n, "--r", &r, "--k", &k,
                                "--mode", mode,
                            ],
                            None,
                        );
                        assert!(out.status.success());
                        serde_json::from_slice::<Value>(&out.stdout).unwrap()["coefficients"]
                            .clone()
                    };
                    assert_eq!(
                        args("interpolate"),
                        args("closed-form"),
                        "{family} n={n} r={r} k={k}"
                    );
                }
            }
        }
    }
}
