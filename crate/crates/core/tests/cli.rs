use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_elliptic-quintic");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("SOURCE_DATE_EPOCH", "1700000000").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(text: &'a str, kind: &str, key: &str) -> &'a str {
    let line = text.lines().find(|l| l.starts_with(kind)).unwrap_or_else(|| panic!("no {kind} record"));
    let start = line.find(&format!("  {key}=")).unwrap_or_else(|| panic!("no {key} in {line}")) + key.len() + 3;
    line[start..].split("  ").next().unwrap()
}

#[test]
fn singular_r_one() {
    let text = stdout(&["singular", "--r", "1"]);
    let k: f64 = field(&text, "singular-modulus", "k").parse().unwrap();
    assert!((k - 0.5f64.sqrt()).abs() < 1e-13);
    assert_eq!(field(&text, "candidate", "polynomial"), "2*Y^2 - 1");
}

#[test]
fn singular_r_four_residual() {
    let text = stdout(&["singular", "--r", "4"]);
    let residual: f64 = field(&text, "singular-modulus", "residual").parse().unwrap();
    assert!(residual < 1e-12);
}

#[test]
fn malformed_r_is_a_usage_error() {
    let out = run(&["singular", "--r", "-3/2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["singular", "--r", "two"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_coefficients() {
    let text = stdout(&["build", "--x", "0", "--h", "1"]);
    for (key, want) in [("e", 1.0), ("d", 1.0), ("c", -2.0), ("b", -2.0), ("a", 1.0)] {
        assert_eq!(field(&text, "family", key).parse::<f64>().unwrap(), want);
    }
    let text = stdout(&["build", "--x", "0.5", "--h", "1"]);
    let d: f64 = field(&text, "family", "d").parse().unwrap();
    assert_eq!(d, 189.0 / 256.0);
    assert!(stdout(&["build", "--x", "1", "--h", "1"]).contains("warning"));
}

#[test]
fn solve_forward_instance() {
    // dn(0.4 | 0.36) and sn(1.2 | 0.36)
    let (u, m) = (0.4f64, 0.36f64);
    let lib = elliptic_quintic::elliptic::jacobi(u, m).unwrap();
    let h = elliptic_quintic::elliptic::jacobi(3.0 * u, m).unwrap().sn;
    let text = stdout(&["solve", "--x", &lib.dn.to_string(), "--h", &h.to_string()]);
    let hit = text
        .lines()
        .filter(|l| l.starts_with("certificate"))
        .any(|l| field(l, "certificate", "k0").parse::<f64>().is_ok_and(|k| (k - 0.6).abs() < 1e-9));
    assert!(hit, "{text}");
    for line in text.lines().filter(|l| l.starts_with("co-root")) {
        let r: f64 = field(line, "co-root", "residual").parse().unwrap();
        assert!(r < 1e-10);
    }
}

#[test]
fn solve_degenerate() {
    let text = stdout(&["solve", "--x", "1", "--h", "0"]);
    assert_eq!(field(&text, "solve", "status"), "underdetermined");
}

#[test]
fn dn_third_comparisons() {
    let text = stdout(&["dn-third", "--r", "2/3"]);
    let dev: f64 = field(&text, "table", "deviation").parse().unwrap();
    assert!(dev < 1e-9);
    let text = stdout(&["dn-third", "--k", "0.5"]);
    let dev: f64 = field(&text, "closed-form", "deviation").parse().unwrap();
    assert!(dev < 1e-9);
    assert!(!text.contains("table"));
    let text = stdout(&["dn-third", "--r", "1"]);
    assert!(text.contains("numeric") && text.contains("closed-form") && text.contains("table"));
}

#[test]
fn recognize_values() {
    let text = stdout(&["recognize", "--value", "1.41421356237309504880", "--degree", "2"]);
    assert_eq!(field(&text, "candidate", "polynomial"), "Y^2 - 2");
    let text = stdout(&["recognize", "--value", "3.14159265358979323846264338327", "--degree", "4"]);
    assert_eq!(field(&text, "candidate", "result"), "none");
}

#[test]
fn recognize_from_piped_singular_modulus() {
    let single = stdout(&["singular", "--r", "34/3", "--precision", "768"]);
    let mut child = Command::new(BIN)
        .args(["recognize", "--degree", "8", "--height", "1000000000", "--precision", "768"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(single.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        field(&text, "candidate", "coefficients"),
        "[1,-1939608,96118420,-1939608,-192236826,1939608,96118420,1939608,1]"
    );
    assert_eq!(field(&text, "candidate", "certified"), "true");
}

#[test]
fn audit_exit_code_and_formats() {
    let out = run(&["audit"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("summary:"));

    let json = stdout(&["audit", "--format", "json-lines"]);
    let text_ids: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with("summary"))
        .map(|l| l.split_whitespace().nth(2).unwrap())
        .collect();
    let json_ids: Vec<String> = json
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|v| v["record"] == "claim")
        .map(|v| v["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(text_ids, json_ids);
}

#[test]
fn audit_is_deterministic_and_filters() {
    assert_eq!(stdout(&["audit"]), stdout(&["audit"]));
    let only = stdout(&["audit", "--only", "table."]);
    assert_eq!(only.lines().filter(|l| l.contains(" table.r=")).count(), 23);
    assert!(!only.contains("quintic."));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("eq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let out = run(&["audit", "--only", "modular", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.lines().next().unwrap().contains("\"header\""));
    std::fs::remove_dir_all(&dir).unwrap();
}
