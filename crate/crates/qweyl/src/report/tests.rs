use super::*;

fn algebraic(only: &[&str]) -> SuiteConfig {
    let mut c = SuiteConfig::for_suite(Suite::AlgebraicIdentities);
    c.only = only.iter().map(|s| s.to_string()).collect();
    c.degree = 2;
    c.order = 4;
    c.timings = false;
    c
}

#[test]
fn registry_has_unique_ids_and_enough_checks() {
    let ids: std::collections::BTreeSet<_> = registry().iter().map(|c| c.id).collect();
    assert_eq!(ids.len(), registry().len());
    assert!(registry().len() >= 20);
    for suite in [Suite::AlgebraicIdentities, Suite::MonodromyMainTheorem] {
        assert!(registry().iter().any(|c| c.suite == suite));
    }
}

#[test]
fn list_mentions_every_check() {
    let text = list_checks();
    assert_eq!(text.lines().count(), registry().len());
    assert!(text.contains("S_1 L_2 S_1 = (-1)^I L_1"));
    assert!(text.contains("KZ versus Casimir monodromy"));
}

#[test]
fn empty_grid_gives_empty_passing_report() {
    let mut c = SuiteConfig::for_suite(Suite::MonodromyMainTheorem);
    c.grid.clear();
    let r = run_suite(&c).unwrap();
    assert!(r.checks.is_empty());
    assert!(r.passed());
}

#[test]
fn config_json_round_trip_and_defaults() {
    let c = SuiteConfig::from_json(r#"{"suite": "monodromy-main-theorem", "grid": [{"lambda": [1, 2], "s": [0.1, 0.3]}]}"#).unwrap();
    assert_eq!(c.suite, Suite::MonodromyMainTheorem);
    assert_eq!(c.grid[0].h, 0.01);
    assert_eq!(c.order, 6);
    let back = SuiteConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn invalid_configs_are_rejected() {
    for bad in [
        r#"{"suite": "nonsense"}"#,
        r#"{"grid": [{"lambda": [1, 1], "s": [0.0]}]}"#,
        r#"{"grid": [{"lambda": [1, 1, 1, 1], "s": [0, 1, 2, 3]}]}"#,
        r#"{"grid": [{"lambda": [9], "s": [0]}]}"#,
        r#"{"grid": [{"lambda": [1], "s": [0], "h": 2.0}]}"#,
        r#"{"order": 0}"#,
        r#"{"tol": -1}"#,
        r#"{"only": ["no.such.check"]}"#,
        r#"{"surprise": 1}"#,
        "[1, 2",
    ] {
        assert!(matches!(SuiteConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
    }
}

#[test]
fn exact_checks_pass_and_are_deterministic() {
    let c = algebraic(&["dual-pair.transfer", "loop.relations.exact", "loop.central-power-sums", "poly.relation-0"]);
    let a = run_suite(&c).unwrap();
    assert_eq!(a.checks.len(), 4);
    assert!(a.passed(), "{}", a.to_json());
    let b = run_suite(&c).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn non_half_integer_shift_is_a_per_check_error() {
    let mut c = algebraic(&["loop.relations.exact", "poly.relation-0"]);
    c.grid[0].s = vec![0.3, 1.0];
    let r = run_suite(&c).unwrap();
    let loop_rel = r.checks.iter().find(|x| x.id == "loop.relations.exact").unwrap();
    assert_eq!(loop_rel.status, Status::Error);
    let poly = r.checks.iter().find(|x| x.id == "poly.relation-0").unwrap();
    assert_eq!(poly.status, Status::Pass);
    assert!(!r.passed());
}

#[test]
fn central_power_sums_skip_higher_weights() {
    let mut c = algebraic(&["loop.central-power-sums"]);
    c.grid[0].lambda = vec![2, 1];
    let r = run_suite(&c).unwrap();
    assert_eq!(r.checks[0].status, Status::Skipped);
    assert!(r.passed());
}

#[test]
fn backend_filter() {
    let mut c = algebraic(&[]);
    c.backend = Some(Backend::Series);
    c.only.clear();
    let ids: Vec<&str> = registry().iter().filter(|d| selected(&c, d)).map(|d| d.id).collect();
    assert!(ids.iter().all(|id| id.starts_with("weyl.") || id.starts_with("loop.relations.series")));
    assert!(!ids.is_empty());
}

#[test]
fn global_checks_run_once() {
    let mut c = algebraic(&["dual-pair.internal-kappa", "dual-pair.transfer"]);
    c.grid.push(GridPoint { lambda: vec![1, 2, 1], s: vec![0.0, 1.0, 2.0], h: 0.01 });
    let r = run_suite(&c).unwrap();
    let kappa = r.checks.iter().filter(|x| x.id == "dual-pair.internal-kappa").count();
    let transfer: Vec<_> = r.checks.iter().filter(|x| x.id == "dual-pair.transfer").map(|x| x.point).collect();
    assert_eq!(kappa, 1);
    assert_eq!(transfer, vec![Some(0), Some(1)]);
    assert!(r.passed());
}

#[test]
fn outcome_tolerances() {
    let checks = [IdentityCheck::new("a", 0.0), IdentityCheck::new("b", 1e-9)];
    assert!(!Outcome::exact(&checks).passed);
    let o = Outcome::within(&checks, 1e-8);
    assert!(o.passed);
    assert_eq!(o.residual, 1e-9);
    assert!(o.detail.contains("worst: b"));
    assert!(Outcome::exact(&[]).passed);
}
