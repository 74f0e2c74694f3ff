use std::process::Command;

fn qweyl(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qweyl")).args(args).output().expect("binary runs")
}

#[test]
fn list_prints_the_registry() {
    let out = qweyl(&["list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 20);
    assert!(text.contains("S_1 L_2 S_1 = (-1)^I L_1"));
    assert!(text.contains("KZ versus Casimir monodromy"));
}

#[test]
fn verify_writes_a_report_and_exits_zero() {
    let dir = std::env::temp_dir().join(format!("qweyl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = qweyl(&[
        "verify",
        "--only",
        "poly.relation-0,loop.central-power-sums",
        "--no-timings",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["suite"], "algebraic-identities");
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c["anchor"].as_str().is_some_and(|a| !a.is_empty()));
    }
    // exact runs are reproducible byte for byte
    assert!(qweyl(&["verify", "--only", "poly.relation-0,loop.central-power-sums", "--no-timings", "--out", path.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn failing_check_sets_exit_status() {
    // s = 0.3 is not a half integer, so the exact loop relations cannot run
    let out = qweyl(&["verify", "--s", "0.3,1", "--only", "loop.relations.exact"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ERROR"));
}

#[test]
fn invalid_config_is_a_usage_error() {
    assert_eq!(qweyl(&["verify", "--order", "0"]).status.code(), Some(2));
    assert_eq!(qweyl(&["verify", "--config", "/nonexistent/config.json"]).status.code(), Some(2));
    assert!(!qweyl(&["verify", "--bogus"]).status.success());
}

#[test]
fn empty_grid_config_succeeds() {
    let dir = std::env::temp_dir().join(format!("qweyl-cli-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.json");
    std::fs::write(&cfg, r#"{"suite": "monodromy-main-theorem", "grid": []}"#).unwrap();
    let out = qweyl(&["monodromy", "--config", cfg.to_str().unwrap(), "--out", "-"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}
