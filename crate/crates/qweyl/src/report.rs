//! Registry of named checks, suite configuration and JSON reports.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::braid::{compare_main, quantum_side, Alphabet, MainComparison};
use crate::check::IdentityCheck;
use crate::classical::{verify_dual_pair, verify_internal_kappa, verify_transfer, ComponentCache};
use crate::coeff::{QRing, RatFunc, Series};
use crate::connections::{
    build_connection, duality_monodromy_check, integrate_monodromy, standard_loops, Chart, ConnectionKind,
    ConnectionParams,
};
use crate::qloop::{
    check_automorphisms, check_central_power_sums, check_loop_relations, evaluation_rep, lattice_l_from_h,
    lattice_on_extremal, lattice_operators, tensor_evaluation, theta_on_extremal, LoopRep,
};
use crate::qmatrix::verify_duality_identities;
use crate::series_identities::{module_order_probe, p_poly, p_poly_by_compositions, verify_lhs, verify_relation_0, verify_relation_l};
use crate::uq::{check_weyl_conjugation, verify_quantum_group, RMatrices};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    AlgebraicIdentities,
    MonodromyMainTheorem,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::AlgebraicIdentities => "algebraic-identities",
            Suite::MonodromyMainTheorem => "monodromy-main-theorem",
        }
    }
}

/// Coefficient ring a check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Rational numbers or rational functions of `q`.
    Exact,
    /// Truncated power series in `h`.
    Series,
    /// Complex floating point at a fixed `h`.
    Float,
}

/// One module `V_{lambda_1}(s_1) x .. x V_{lambda_k}(s_k)` together with the step `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub lambda: Vec<u32>,
    pub s: Vec<f64>,
    #[serde(default = "default_h")]
    pub h: f64,
}

impl GridPoint {
    pub fn k(&self) -> usize {
        self.lambda.len()
    }

    /// `2 s_a` as integers, required by the exact backends.
    pub fn two_s(&self) -> Result<Vec<i64>> {
        self.s
            .iter()
            .map(|&x| {
                let t = 2.0 * x;
                if (t - t.round()).abs() > 1e-12 {
                    Err(Error::Domain(format!("s = {x} is not a half integer")))
                } else {
                    Ok(t.round() as i64)
                }
            })
            .collect()
    }
}

fn default_h() -> f64 {
    0.01
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub grid: Vec<GridPoint>,
    /// Largest homogeneous degree for the classical and finite quantum group checks.
    pub degree: u32,
    /// Level window of loop generators.
    pub window: usize,
    /// Power of `h` the series backend works modulo.
    pub order: usize,
    /// Truncation of the lattice sums in the float backend.
    pub r_max: usize,
    /// Integration tolerance for the connection and residual tolerance for float checks.
    pub tol: f64,
    /// Longest braid word compared.
    pub word_budget: usize,
    /// Restrict to checks over this ring.
    pub backend: Option<Backend>,
    /// Restrict to these check ids.
    pub only: Vec<String>,
    /// Record wall clock seconds. Off gives byte-identical reports for exact runs.
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::for_suite(Suite::AlgebraicIdentities)
    }
}

pub const MAX_K: usize = 3;
pub const MAX_LAMBDA: u32 = 4;
pub const MAX_DEGREE: u32 = 6;
pub const MAX_ORDER: usize = 12;
pub const MAX_WINDOW: usize = 12;
pub const MAX_R_MAX: usize = 64;
pub const MAX_WORD_BUDGET: usize = 6;
/// Beyond this `|h|` the float lattice sums stop converging on small modules.
pub const MAX_FLOAT_H: f64 = 0.05;

impl SuiteConfig {
    /// The defaults of each suite.
    pub fn for_suite(suite: Suite) -> Self {
        let point = match suite {
            Suite::AlgebraicIdentities => GridPoint { lambda: vec![1, 1], s: vec![1.0, 3.0], h: default_h() },
            Suite::MonodromyMainTheorem => GridPoint { lambda: vec![1, 1], s: vec![0.2, 0.5], h: default_h() },
        };
        SuiteConfig {
            suite,
            grid: vec![point],
            degree: 3,
            window: 4,
            order: 6,
            r_max: 24,
            tol: 1e-10,
            word_budget: 4,
            backend: None,
            only: vec![],
            timings: true,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: SuiteConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        for (i, p) in self.grid.iter().enumerate() {
            if p.lambda.is_empty() || p.k() > MAX_K {
                return bad(format!("grid[{i}]: need 1 <= k <= {MAX_K} factors, got {}", p.k()));
            }
            if p.lambda.iter().any(|&l| l > MAX_LAMBDA) {
                return bad(format!("grid[{i}]: highest weights are limited to {MAX_LAMBDA}"));
            }
            if p.s.len() != p.k() {
                return bad(format!("grid[{i}]: {} shifts for {} factors", p.s.len(), p.k()));
            }
            if p.s.iter().any(|x| !x.is_finite() || x.abs() > 100.0) {
                return bad(format!("grid[{i}]: shifts must be finite and at most 100 in size"));
            }
            if !p.h.is_finite() || p.h == 0.0 || p.h.abs() > MAX_FLOAT_H {
                return bad(format!("grid[{i}]: need 0 < |h| <= {MAX_FLOAT_H}"));
            }
        }
        if self.degree > MAX_DEGREE {
            return bad(format!("degree is limited to {MAX_DEGREE}"));
        }
        if self.window == 0 || self.window > MAX_WINDOW {
            return bad(format!("window must lie in 1..={MAX_WINDOW}"));
        }
        if self.order == 0 || self.order > MAX_ORDER {
            return bad(format!("order must lie in 1..={MAX_ORDER}"));
        }
        if self.r_max == 0 || self.r_max > MAX_R_MAX {
            return bad(format!("r_max must lie in 1..={MAX_R_MAX}"));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return bad("tol must lie in (0, 1e-3]".into());
        }
        if self.word_budget > MAX_WORD_BUDGET {
            return bad(format!("word_budget is limited to {MAX_WORD_BUDGET}"));
        }
        for id in &self.only {
            if !registry().iter().any(|c| c.id == id) {
                return bad(format!("unknown check id {id:?}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be evaluated (divergence, bad parameters for this check).
    Error,
    /// The grid point is outside the check's scope.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    /// Index into the grid, `None` for checks that do not depend on it.
    pub point: Option<usize>,
    pub status: Status,
    pub residual: Option<f64>,
    pub seconds: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: Suite,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// No check failed or errored.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of one check at one grid point.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

impl Outcome {
    /// Every identity holds exactly.
    pub fn exact(checks: &[IdentityCheck]) -> Outcome {
        Outcome::within(checks, 0.0)
    }

    pub fn within(checks: &[IdentityCheck], tol: f64) -> Outcome {
        let worst = checks.iter().max_by(|a, b| a.residual.total_cmp(&b.residual));
        let residual = worst.map_or(0.0, |c| c.residual);
        let passed = checks.iter().all(|c| c.within(tol));
        let detail = match worst {
            None => "no identities".into(),
            Some(w) => format!("{} identities, worst: {}", checks.len(), w.name),
        };
        Outcome { passed, residual, detail }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Run once per suite run (when the grid is not empty).
    Global,
    /// Run at every grid point.
    Point,
}

type RunFn = fn(&Env) -> Result<Option<Outcome>>;

pub struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub suite: Suite,
    pub backend: Backend,
    pub scope: Scope,
    run: RunFn,
}

/// What a check sees: the config, the grid point, and results shared with other checks.
pub struct Env<'a> {
    pub config: &'a SuiteConfig,
    pub point: &'a GridPoint,
    duality: OnceLock<std::result::Result<Vec<IdentityCheck>, Error>>,
    main: OnceLock<std::result::Result<Vec<MainComparison>, Error>>,
}

impl<'a> Env<'a> {
    pub fn new(config: &'a SuiteConfig, point: &'a GridPoint) -> Self {
        Env { config, point, duality: OnceLock::new(), main: OnceLock::new() }
    }

    fn p(&self) -> usize {
        self.point.k().max(2)
    }

    fn exact_rep(&self) -> Result<LoopRep<RatFunc>> {
        let f: Vec<(u32, RatFunc)> =
            self.point.lambda.iter().zip(self.point.two_s()?).map(|(&l, t)| (l, RatFunc::q_pow(-t))).collect();
        tensor_evaluation(&f, self.config.window, &())
    }

    fn series_rep(&self, window: usize) -> Result<LoopRep<Series>> {
        let n = self.config.order;
        let f: Vec<(u32, Series)> =
            self.point.lambda.iter().zip(self.point.two_s()?).map(|(&l, t)| (l, Series::q_pow(-t, &n))).collect();
        tensor_evaluation(&f, window, &n)
    }

    fn duality(&self) -> Result<&Vec<IdentityCheck>> {
        let p = self.point;
        self.duality
            .get_or_init(|| duality_monodromy_check(&p.lambda, &p.s, p.h, self.config.tol))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn main(&self) -> Result<&Vec<MainComparison>> {
        let p = self.point;
        let c = self.config;
        self.main
            .get_or_init(|| compare_main(&p.lambda, &p.s, p.h, c.tol, c.r_max, c.word_budget))
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Residual tolerance for float identity checks given the integration tolerance.
pub fn float_tolerance(tol: f64) -> f64 {
    (100.0 * tol).max(1e-8)
}

/// Grid of the polynomial identities: `1 <= l, n <= 5`, `2 <= m <= 4`.
pub const POLY_GRID: (u32, u32, u32) = (5, 5, 4);

fn poly_grid() -> impl Iterator<Item = (u32, u32, u32)> {
    let (l_max, n_max, m_max) = POLY_GRID;
    (1..=l_max).flat_map(move |l| (1..=n_max).flat_map(move |n| (2..=m_max).map(move |m| (l, n, m))))
}

fn count_failures(name: &str, fails: Vec<String>, total: usize) -> Outcome {
    Outcome {
        passed: fails.is_empty(),
        residual: fails.len() as f64,
        detail: if fails.is_empty() {
            format!("{total} cases")
        } else {
            format!("{name} fails at {}", fails.join(", "))
        },
    }
}

fn run_transfer(env: &Env) -> Result<Option<Outcome>> {
    let mut all = vec![];
    for d in 0..=env.config.degree {
        all.extend(verify_transfer(env.point.k(), d)?);
    }
    Ok(Some(Outcome::exact(&all)))
}

fn run_dual_pair(env: &Env) -> Result<Option<Outcome>> {
    let cache = ComponentCache::new();
    let mut all = vec![];
    for d in 0..=env.config.degree {
        all.extend(verify_dual_pair(env.point.k(), 2, d, &cache)?);
    }
    Ok(Some(Outcome::exact(&all)))
}

fn run_kappa(env: &Env) -> Result<Option<Outcome>> {
    let mut all = vec![];
    for d in 0..=env.config.degree {
        all.extend(verify_internal_kappa(d)?);
    }
    Ok(Some(Outcome::exact(&all)))
}

fn run_quantum_group(env: &Env) -> Result<Option<Outcome>> {
    Ok(Some(Outcome::exact(&verify_quantum_group(env.p(), env.config.degree.min(3))?)))
}

fn run_weyl_conjugation(env: &Env) -> Result<Option<Outcome>> {
    let rs = RMatrices::<RatFunc>::new(&());
    let mut all = vec![];
    for d in 0..=env.config.degree.min(3) {
        all.extend(check_weyl_conjugation(&*rs.module(env.p(), d)?)?);
    }
    Ok(Some(Outcome::exact(&all)))
}

fn run_loop_exact(env: &Env) -> Result<Option<Outcome>> {
    Ok(Some(Outcome::exact(&check_loop_relations(&env.exact_rep()?)?)))
}

fn run_loop_series(env: &Env) -> Result<Option<Outcome>> {
    Ok(Some(Outcome::exact(&check_loop_relations(&env.series_rep(env.config.window)?)?)))
}

fn run_central(env: &Env) -> Result<Option<Outcome>> {
    if env.point.lambda.iter().any(|&l| l != 1) {
        return Ok(None);
    }
    Ok(Some(Outcome::exact(&check_central_power_sums(&env.exact_rep()?)?)))
}

fn run_theta(env: &Env) -> Result<Option<Outcome>> {
    let mut all = vec![];
    for (&l, t) in env.point.lambda.iter().zip(env.point.two_s()?) {
        let rep = evaluation_rep(l, &RatFunc::q_pow(-t), env.config.window, &())?;
        all.extend(theta_on_extremal(&rep)?);
    }
    Ok(Some(Outcome::exact(&all)))
}

fn run_automorphisms(env: &Env) -> Result<Option<Outcome>> {
    let n = env.config.order;
    let rep = env.series_rep(n)?;
    let ops = lattice_operators(&rep, n)?;
    Ok(Some(Outcome::exact(&check_automorphisms(&rep, &ops)?)))
}

fn run_extremal(env: &Env) -> Result<Option<Outcome>> {
    let n = env.config.order;
    let rep = env.series_rep(n)?;
    let ops = lattice_operators(&rep, n)?;
    Ok(Some(Outcome::exact(&lattice_on_extremal(&rep, &ops)?)))
}

fn run_truncation(env: &Env) -> Result<Option<Outcome>> {
    let n = env.config.order;
    let rep = env.series_rep(2 * n)?;
    let short = lattice_operators(&rep, n)?;
    let long = lattice_operators(&rep, 2 * n)?;
    Ok(Some(Outcome::exact(&[
        IdentityCheck::compare("L_1 at r_max = N and 2N", &short.l1, &long.l1),
        IdentityCheck::compare("L_2 at r_max = N and 2N", &short.l2, &long.l2),
    ])))
}

fn run_l_from_h(env: &Env) -> Result<Option<Outcome>> {
    let n = env.config.order;
    let rep = env.series_rep(n)?;
    let ops = lattice_operators(&rep, n)?;
    Ok(Some(Outcome::exact(&[IdentityCheck::compare("L from H~ = L_1 L_2^-1", &lattice_l_from_h(&rep, n)?, &ops.l)])))
}

fn run_probe(env: &Env) -> Result<Option<Outcome>> {
    let rep = env.series_rep(env.config.window)?;
    let mut last = Some(0usize);
    let mut seen = vec![];
    let mut fails = vec![];
    for r in 0..=env.config.window as i64 {
        let v = module_order_probe(&rep, r)?;
        seen.push(v.map_or("inf".to_string(), |x| x.to_string()));
        // None is +infinity and compares above every Some.
        let grew = match (last, v) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => b >= a,
        };
        if !grew {
            fails.push(format!("r = {r}"));
        }
        last = v;
    }
    let mut o = count_failures("monotone growth", fails, seen.len());
    o.detail = format!("{}; valuations {}", o.detail, seen.join(" "));
    Ok(Some(o))
}

fn run_qmatrix(env: &Env) -> Result<Option<Outcome>> {
    Ok(Some(Outcome::exact(&verify_duality_identities(&env.point.lambda, &env.point.two_s()?, env.config.order)?)))
}

fn run_relation_l(_: &Env) -> Result<Option<Outcome>> {
    let fails: Vec<String> =
        poly_grid().filter(|&(l, n, m)| !verify_relation_l(l, n, m)).map(|c| format!("{c:?}")).collect();
    Ok(Some(count_failures("relation", fails, poly_grid().count())))
}

fn run_relation_0(_: &Env) -> Result<Option<Outcome>> {
    let (_, n_max, m_max) = POLY_GRID;
    let cases: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (2..=m_max).map(move |m| (n, m))).collect();
    let fails: Vec<String> =
        cases.iter().filter(|&&(n, m)| !verify_relation_0(n, m)).map(|c| format!("{c:?}")).collect();
    Ok(Some(count_failures("relation", fails, cases.len())))
}

fn run_lhs(_: &Env) -> Result<Option<Outcome>> {
    let fails: Vec<String> = poly_grid().filter(|&(l, n, m)| !verify_lhs(l, n, m)).map(|c| format!("{c:?}")).collect();
    Ok(Some(count_failures("closed form", fails, poly_grid().count())))
}

fn run_compositions(_: &Env) -> Result<Option<Outcome>> {
    let fails: Vec<String> = poly_grid()
        .filter(|&(l, n, m)| p_poly(l, n, m) != p_poly_by_compositions(l, n, m))
        .map(|c| format!("{c:?}"))
        .collect();
    Ok(Some(count_failures("composition form", fails, poly_grid().count())))
}

fn duality_subset(env: &Env, keep: fn(&str) -> bool) -> Result<Option<Outcome>> {
    let checks: Vec<IdentityCheck> = env.duality()?.iter().filter(|c| keep(&c.name)).cloned().collect();
    Ok(Some(Outcome::within(&checks, float_tolerance(env.config.tol))))
}

fn run_kz_casimir(env: &Env) -> Result<Option<Outcome>> {
    duality_subset(env, |n| n.starts_with("pi_KZ"))
}

fn run_sl_in_gl(env: &Env) -> Result<Option<Outcome>> {
    duality_subset(env, |n| n.starts_with("pi_sl"))
}

fn run_braid_relations(env: &Env) -> Result<Option<Outcome>> {
    duality_subset(env, |n| !n.starts_with("pi_"))
}

fn run_homotopy(env: &Env) -> Result<Option<Outcome>> {
    let p = env.point;
    let tol = env.config.tol;
    let params = ConnectionParams {
        lambda: p.lambda.clone(),
        s: p.s.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        h: Complex64::new(p.h, 0.0),
    };
    let mut all = vec![];
    let cases = [
        (ConnectionKind::Gl2Casimir, Chart::Z, 0.15, vec![Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.1)]),
        (ConnectionKind::Sl2Casimir, Chart::U, 0.05, vec![Complex64::new(0.0, 0.5)]),
    ];
    for (kind, chart, eps, dir) in cases {
        let conn = build_connection(kind, &params)?;
        for path in standard_loops(chart) {
            let a = integrate_monodromy(&conn, &path, tol)?.matrix;
            let b = integrate_monodromy(&conn, &path.wiggled(eps, &dir), tol)?.matrix;
            let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
            let r = (&a - &b).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale;
            all.push(IdentityCheck::new(format!("{kind:?} {:?} deformed", path.name), r));
        }
    }
    Ok(Some(Outcome::within(&all, float_tolerance(tol))))
}

fn main_line(env: &Env, alphabet: Alphabet) -> Result<Option<Outcome>> {
    let m = env.main()?.iter().find(|m| m.alphabet == alphabet).expect("both groups compared");
    let r = &m.report;
    Ok(Some(Outcome {
        passed: r.passed(),
        residual: r.trace_residual,
        detail: format!(
            "{} words, tolerance {:.1e}, worst {}, intertwiner cond {}",
            r.words,
            r.tolerance,
            r.worst_word,
            r.intertwiner_cond.map_or("none".into(), |c| format!("{c:.3e}"))
        ),
    }))
}

fn run_main_sl(env: &Env) -> Result<Option<Outcome>> {
    main_line(env, Alphabet::Sl)
}

fn run_main_gl(env: &Env) -> Result<Option<Outcome>> {
    main_line(env, Alphabet::Gl)
}

fn run_float_automorphisms(env: &Env) -> Result<Option<Outcome>> {
    let p = env.point;
    let (rep, ops, _) = quantum_side(&p.lambda, &p.s, p.h, env.config.r_max)?;
    let mut o = Outcome::within(&check_automorphisms(&rep, &ops)?, 1e-6);
    o.detail = format!("{}; decay rate {:.3}", o.detail, ops.rho);
    Ok(Some(o))
}

macro_rules! check {
    ($id:expr, $anchor:expr, $suite:ident, $backend:ident, $scope:ident, $run:expr) => {
        CheckDef { id: $id, anchor: $anchor, suite: Suite::$suite, backend: Backend::$backend, scope: Scope::$scope, run: $run }
    };
}

static REGISTRY: &[CheckDef] = &[
    check!("dual-pair.transfer", "Casimir of gl_k on k x 2 matrices equals the coproduct of kappa - I of gl_2 (and the three companion transfers)", AlgebraicIdentities, Exact, Point, run_transfer),
    check!("dual-pair.commuting", "gl_k and gl_2 actions on polynomial functions of k x 2 matrices commute", AlgebraicIdentities, Exact, Point, run_dual_pair),
    check!("dual-pair.internal-kappa", "kappa of gl_2 = I + 2 E_11 E_22 on one row", AlgebraicIdentities, Exact, Global, run_kappa),
    check!("quantum-group.axioms", "U_q(gl_p) relations, R-matrix intertwines the coproduct, Yang-Baxter", AlgebraicIdentities, Exact, Point, run_quantum_group),
    check!("quantum-group.weyl-conjugation", "triple q-exponential S_i conjugates E_i to -F_i K_i", AlgebraicIdentities, Exact, Point, run_weyl_conjugation),
    check!("loop.relations.exact", "quantum loop algebra relations and the [H_r, E_k] = [2r]/r E_{r+k} table on evaluation modules", AlgebraicIdentities, Exact, Point, run_loop_exact),
    check!("loop.relations.series", "quantum loop algebra relations and the [H_r, E_k] = [2r]/r E_{r+k} table, h-adic", AlgebraicIdentities, Series, Point, run_loop_series),
    check!("loop.central-power-sums", "central z_r acts as [r]/r sum zeta_a^r on two dimensional factors", AlgebraicIdentities, Exact, Point, run_central),
    check!("loop.theta-extremal", "Theta_1(z) Omega = q^lambda (z - q^{-lambda-1} zeta)/(z - q^{lambda-1} zeta) Omega", AlgebraicIdentities, Exact, Point, run_theta),
    check!("weyl.automorphisms", "S_0 S_1 = L, S_1 L_2 S_1 = (-1)^I L_1, L_1 L_2 = L_2 L_1, Ad(L_i) = L_i shifts, T_0 on loop generators", AlgebraicIdentities, Series, Point, run_automorphisms),
    check!("weyl.extremal", "L_1 Omega = prod zeta_a^{-lambda_a} Omega and the lowest weight analogue", AlgebraicIdentities, Series, Point, run_extremal),
    check!("weyl.truncation", "lattice operators stabilise once r_max reaches the h-adic order", AlgebraicIdentities, Series, Point, run_truncation),
    check!("weyl.l-from-h", "L from the log generators H~_r agrees with L_1 L_2^-1", AlgebraicIdentities, Series, Point, run_l_from_h),
    check!("weyl.order-probe", "h-adic valuation of H~_r grows with r", AlgebraicIdentities, Series, Point, run_probe),
    check!("duality.r-matrix", "(1 2)R = S q^{-D_1}, (q^{2s})^{(1)} R = L_1, R^-1 (q^{2s})^{(2)} = L_2 q^I on quantum k x 2 matrices", AlgebraicIdentities, Exact, Point, run_qmatrix),
    check!("poly.relation-l", "p_{l;n}^{(m)} recurrence in l", AlgebraicIdentities, Exact, Global, run_relation_l),
    check!("poly.relation-0", "p_{0;n}^{(m)} recurrence", AlgebraicIdentities, Exact, Global, run_relation_0),
    check!("poly.closed-form", "closed form of sum_t p_{t;0}^{(m-1)} p_{l-t;n}^{(1)} - p_{l;n}^{(m)}", AlgebraicIdentities, Exact, Global, run_lhs),
    check!("poly.compositions", "partition and composition forms of p_{l;n}^{(m)} agree", AlgebraicIdentities, Exact, Global, run_compositions),
    check!("monodromy.kz-casimir", "KZ versus Casimir monodromy: b picks up e^{-pi i h I}, X1 picks up e^{2 pi i h I}, X2 unchanged", MonodromyMainTheorem, Float, Point, run_kz_casimir),
    check!("monodromy.sl-in-gl", "sl_2 monodromy inside gl_2: S1 = b (-1)^{E_11}, S0 = X1 b X1^-1 (-1)^{E_22}, S0 S1 = X1 b X1^-1 b", MonodromyMainTheorem, Float, Point, run_sl_in_gl),
    check!("monodromy.braid-relations", "X2 = b X1 b and b X1 b X1 = X1 b X1 b for the Casimir monodromy", MonodromyMainTheorem, Float, Point, run_braid_relations),
    check!("monodromy.homotopy", "monodromy unchanged under deformation of the loops", MonodromyMainTheorem, Float, Point, run_homotopy),
    check!("weyl.float-automorphisms", "quantum Weyl relations at fixed h with convergent lattice sums", MonodromyMainTheorem, Float, Point, run_float_automorphisms),
    check!("main.sl2", "affine braid group of SL_2: monodromy equivalent to the quantum Weyl group action", MonodromyMainTheorem, Float, Point, run_main_sl),
    check!("main.gl2", "affine braid group of GL_2: monodromy equivalent to the quantum Weyl group action", MonodromyMainTheorem, Float, Point, run_main_gl),
];

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

/// One line per registered check: id, suite, backend, anchor.
pub fn list_checks() -> String {
    let mut out = String::new();
    for c in registry() {
        let backend = format!("{:?}", c.backend).to_lowercase();
        out.push_str(&format!("{:<32} {:<24} {:<7} {}\n", c.id, c.suite.name(), backend, c.anchor));
    }
    out
}

fn selected(config: &SuiteConfig, c: &CheckDef) -> bool {
    c.suite == config.suite
        && config.backend.is_none_or(|b| b == c.backend)
        && (config.only.is_empty() || config.only.iter().any(|id| id == c.id))
}

fn run_one(def: &CheckDef, env: &Env, point: Option<usize>, timings: bool) -> CheckResult {
    let start = Instant::now();
    let got = catch_unwind(AssertUnwindSafe(|| (def.run)(env)));
    let seconds = timings.then(|| start.elapsed().as_secs_f64());
    let (status, residual, detail) = match got {
        Ok(Ok(Some(o))) => (if o.passed { Status::Pass } else { Status::Fail }, Some(o.residual), o.detail),
        Ok(Ok(None)) => (Status::Skipped, None, "outside the scope of this check".into()),
        Ok(Err(e)) => (Status::Error, None, e.to_string()),
        Err(p) => {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            (Status::Error, None, format!("panic: {}", msg.unwrap_or_default()))
        }
    };
    CheckResult { id: def.id.into(), anchor: def.anchor.into(), point, status, residual, seconds, detail }
}

/// Run every selected check of the suite on every grid point. Checks that cannot
/// be evaluated are reported with status `error`; the run itself only fails on
/// an invalid config.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let defs: Vec<&CheckDef> = registry().iter().filter(|c| selected(config, c)).collect();
    let mut checks = vec![];
    if let Some(first) = config.grid.first() {
        let env = Env::new(config, first);
        for def in defs.iter().filter(|d| d.scope == Scope::Global) {
            checks.push(run_one(def, &env, None, config.timings));
        }
    }
    for (i, point) in config.grid.iter().enumerate() {
        let env = Env::new(config, point);
        for def in defs.iter().filter(|d| d.scope == Scope::Point) {
            checks.push(run_one(def, &env, Some(i), config.timings));
        }
    }
    Ok(Report { schema: SCHEMA_VERSION, suite: config.suite, config: config.clone(), checks })
}

#[cfg(test)]
mod tests;
