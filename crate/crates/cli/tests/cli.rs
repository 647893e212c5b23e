use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supersylow"))
        .args(args)
        .env_remove("SUPERSYLOW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

#[test]
fn weyl_psq_count() {
    let o = run(&["verify", "weyl", "--family", "psq", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = reports.as_array().unwrap();
    let counts: Vec<u64> = rows
        .iter()
        .flat_map(|r| r["checks"].as_array().unwrap().iter())
        .filter(|c| c["name"] == "sylow_classes")
        .map(|c| c["details"]["found"].as_u64().unwrap())
        .collect();
    assert!(counts.contains(&3), "{counts:?}");
}

#[test]
fn counterexample_report() {
    let o = run(&["verify", "counterexample", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = reports[0]["checks"].as_array().unwrap();
    let zero = checks.iter().find(|c| c["name"] == "zero_superalgebra").unwrap();
    assert_eq!(zero["pass"], true);
    let not_sylow = checks.iter().find(|c| c["name"] == "not_sylow").unwrap();
    assert_eq!(not_sylow["details"]["verdict"]["not_sylow"], "dim_mismatch");
}

#[test]
fn seed_flag_and_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_supersylow"))
        .args(["verify", "weyl", "--family", "gl", "--n", "1"])
        .env("SUPERSYLOW_SEED", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: 7"));
    let o = Command::new(env!("CARGO_BIN_EXE_supersylow"))
        .args(["verify", "weyl", "--family", "gl", "--n", "1", "--seed", "9"])
        .env("SUPERSYLOW_SEED", "7")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: 9"));
    assert!(stdout(&o).contains("\"seed\": 9"));
}

#[test]
fn output_directory_is_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = run(&["verify", "normalizers", "--max-rank", "2", "--jobs", "2", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.iter().any(|n| n == "summary.md"));
    assert!(names.len() > 2);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
    let summary = fs::read_to_string(a.path().join("summary.md")).unwrap();
    assert!(summary.starts_with("| row | expected | computed | verdict |"));
    assert!(summary.contains("| normalizer gl(1|1) | gl(1|1)^1 x gl(0|0) (2|2) | (2|2) | pass |"));
}

#[test]
fn markdown_format() {
    let o = run(&["verify", "sylow", "--family", "gl", "--n", "1", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| sylow gl(1|1) | sl(1|1)^1 (1|2) | (1|2) | pass |"));
}

#[test]
fn export_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pq2.json");
    let o = run(&["export", "pq(2)", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["analyze", path.to_str().unwrap(), "--roots"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dims"], serde_json::json!([3, 4]));
    assert_eq!(v["oddly_generated"], true);
    assert!(!v["roots"]["roots"].as_array().unwrap().is_empty());
}

#[test]
fn usage_and_schema_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dims\": [1").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, "{\"even_dim\": 1}").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "sylow", "--family", "so"]).status.code(), Some(2));
    assert_eq!(run(&["export", "gl(1|"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "weyl", "--family", "psl", "--n", "1"]).status.code(), Some(2));
}
