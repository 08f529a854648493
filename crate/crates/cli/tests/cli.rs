use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn dompoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dompoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn dompoly_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dompoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dompoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn test_reports_verdict() {
    let out = dompoly(&["test", "1,-1,-1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["dominant"], true);

    let out = dompoly(&["test", "1,0,-2", "--algorithm", "simple", "--oracle"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"]["dominant"], false);
    assert_eq!(v["oracle"]["dominant"], false);
}

#[test]
fn parse_failure_exits_2() {
    for bad in ["1,x", "", "0,0", "1,,2"] {
        let out = dompoly(&["test", bad]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(dompoly(&["stability", "q"]).status.code(), Some(2));
    assert_eq!(dompoly(&["bounds", "1;2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dompoly(&["census", "--degree", "2"]).status.code(), Some(2));
    assert_eq!(dompoly(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn oversized_census_exits_3() {
    let out = dompoly(&["census", "--degree", "8", "--height", "9"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn census_table_and_csv() {
    let csv = scratch("table.csv");
    let out = dompoly(&[
        "census",
        "--degree",
        "2",
        "--height",
        "1",
        "--family",
        "general",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4/9"), "{text}");
    assert!(text.contains("digest"));
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "quantity,n,H,D,denominator,exact,rounded\nP,2,1,8,18,4/9,0.4444\nQ,2,1,4,18,2/9,0.2222\n"
    );
}

#[test]
fn census_resume_matches_fresh_run() {
    let ckpt = scratch("resume.jsonl");
    let _ = std::fs::remove_file(&ckpt);
    let args = |json: bool| {
        let mut a = vec!["census", "--degree", "3", "--height", "2", "--chunks", "8"];
        if json {
            a.push("--json");
        }
        a
    };
    let fresh: Value = serde_json::from_str(&stdout(&dompoly(&args(true)))).unwrap();
    let mut with_ckpt = args(true);
    with_ckpt.extend(["--resume", ckpt.to_str().unwrap()]);
    let first: Value = serde_json::from_str(&stdout(&dompoly(&with_ckpt))).unwrap();
    let again: Value = serde_json::from_str(&stdout(&dompoly(&with_ckpt))).unwrap();
    for r in [&first, &again] {
        assert_eq!(r["digest"], fresh["digest"]);
        assert_eq!(r["general"], fresh["general"]);
        assert_eq!(r["monic"], fresh["monic"]);
    }
    let lines = std::fs::read_to_string(&ckpt).unwrap().lines().count();
    assert_eq!(lines, 9);
}

#[test]
fn batch_keeps_order_and_reports_bad_lines() {
    let out = dompoly_stdin(&["batch", "-"], "# header\n1,-1,-1\n\n1,zz\n1,0,-2\n");
    assert!(out.status.success());
    let records: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 3);
    assert_eq!(records[0]["line"], 2);
    assert_eq!(records[0]["dominant"], true);
    assert_eq!(records[1]["line"], 4);
    assert!(records[1]["error"].is_string());
    assert_eq!(records[2]["line"], 5);
    assert_eq!(records[2]["dominant"], false);
}

#[test]
fn batch_empty_and_missing_files() {
    let empty = scratch("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let out = dompoly(&["batch", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let out = dompoly(&["batch", scratch("missing.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn random_output_feeds_batch() {
    let sample = stdout(&dompoly(&["random", "--seed", "7", "--count", "20"]));
    assert_eq!(sample, stdout(&dompoly(&["random", "--seed", "7", "--count", "20"])));
    let out = dompoly_stdin(&["batch", "-"], &sample);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 20);
    assert!(!text.contains("\"error\""));
}

#[test]
fn stability_and_bounds_print_json() {
    let out = dompoly(&["stability", "1,0,-4"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "unstable");
    assert_eq!(v["nu"], 2);

    let out = dompoly(&["bounds", "1,-1,-1"]);
    assert!(out.status.success());
    let _: Value = serde_json::from_str(&stdout(&out)).unwrap();
}

#[test]
fn help_lists_subcommands() {
    let out = dompoly(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in ["test", "stability", "bounds", "census", "batch", "random"] {
        assert!(text.contains(sub), "{sub}");
    }
}
