use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn modlift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlift"))
        .args(args)
        .env_remove("MODLIFT_PROFILE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_counts() {
    let o = modlift(&["enumerate", "--genus", "2", "--target", "s3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "homs: 486, epis: 360");
    let o = modlift(&["enumerate", "--genus", "2", "--target", "c2"]);
    assert_eq!(stdout(&o).trim(), "homs: 16, epis: 15");
}

#[test]
fn enumerate_listing_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("homs.jsonl");
    let o = modlift(&["enumerate", "--genus", "2", "--target", "c2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = fs::read_to_string(&path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 16);
    assert_eq!(lines.iter().filter(|v| v["surjective"] == true).count(), 15);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(modlift(&["enumerate", "--genus", "2"]).status.code(), Some(1));
    assert_eq!(modlift(&["forge", "--genus", "1"]).status.code(), Some(1));
    assert_eq!(modlift(&["alpha", "--genus", "2", "--cover", "nope"]).status.code(), Some(1));
    assert_eq!(modlift(&["enumerate", "--genus", "2", "--target", "psl2"]).status.code(), Some(1));
    assert_eq!(
        modlift(&["forge", "--genus", "2", "--budget-orbit", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn budget_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    let o = modlift(&["forge", "--genus", "2", "--budget-orbit", "10", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = modlift(&["enumerate", "--genus", "2", "--target", "a5", "--budget-tuples", "1000"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn forge_s3_writes_a_valid_certificate() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cert.json");
    let o = modlift(&["forge", "--genus", "2", "--route", "s3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["status"], "VALID");
    let d: u128 = v["degree"].as_str().unwrap().parse().unwrap();
    let g: u128 = v["genus_out"].as_str().unwrap().parse().unwrap();
    assert_eq!(d % 2, 1);
    assert_eq!(g, d + 1);
}

#[test]
fn forge_hall_pair() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("hall.json");
    let o = modlift(&[
        "forge", "--genus", "2", "--route", "hall", "--prime", "5", "--collection", "2", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "INVALID certificates still exit zero");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["G_order"], "3600");
    assert_eq!(v["status"], "INVALID");
}

#[test]
fn search_reports_are_reproducible() {
    let run = |dir: &TempDir| {
        let o = modlift(&["search", "--genus", "2", "--budget", "3", "--out", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let report = fs::read_to_string(dir.path().join("report.json")).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report).unwrap();
        for e in v["entries"].as_array().unwrap() {
            assert!(fs::metadata(e["path"].as_str().unwrap()).is_ok());
        }
        // Paths differ between the two directories; everything else must not.
        report.replace(dir.path().to_str().unwrap(), "OUT")
    };
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    assert_eq!(run(&a), run(&b));
}

#[test]
fn zero_budget_search_is_empty() {
    let dir = TempDir::new().unwrap();
    let o = modlift(&["search", "--genus", "2", "--budget", "0", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert!(v["entries"].as_array().unwrap().is_empty());
}

#[test]
fn alpha_suites_pass() {
    let o = modlift(&["alpha", "--genus", "2", "--cover", "homology2", "--check", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all suites pass"));
    let o = modlift(&["alpha", "--genus", "2", "--automorphism", "id", "--check", "none"]);
    assert!(stdout(&o).contains("id: 49 Schreier generators, identity"));
}

#[test]
fn profile_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_modlift"))
        .args(["enumerate", "--genus", "2", "--target", "s3"])
        .env("MODLIFT_PROFILE", "bogus")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
