//! End to end acceptance: every headline identity at its stated tolerance.
//! Each test writes one PASS/FAIL line straight to stderr so it shows even
//! when output is captured.

use std::io::Write;

use qweyl::braid::{compare_main, Alphabet};
use qweyl::check::IdentityCheck;
use qweyl::classical::verify_transfer;
use qweyl::coeff::{QRing, RatFunc, Series};
use qweyl::connections::duality_monodromy_check;
use qweyl::qloop::{
    check_automorphisms, check_central_power_sums, check_loop_relations, evaluation_rep, lattice_on_extremal,
    lattice_operators, tensor_evaluation, theta_on_extremal,
};
use qweyl::qmatrix::verify_duality_identities;
use qweyl::series_identities::{p_poly, p_poly_by_compositions, verify_lhs, verify_relation_0, verify_relation_l};
use qweyl::uq::verify_quantum_group;

fn verdict(name: &str, ok: bool, detail: String) {
    let line = format!("{} {name}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "{name}: {detail}");
}

/// Largest residual, its identity, and the number of identities checked.
fn summary(checks: &[IdentityCheck]) -> (f64, String) {
    let worst = checks.iter().max_by(|a, b| a.residual.total_cmp(&b.residual));
    (worst.map_or(0.0, |c| c.residual), worst.map_or(String::new(), |c| c.name.clone()))
}

fn exact(name: &str, checks: &[IdentityCheck]) {
    let (r, w) = summary(checks);
    verdict(name, r == 0.0, format!("{} identities, max residual {r:e} ({w})", checks.len()));
}

/// Tensor products of highest weights `1..=max` with `1..=k_max` factors.
fn weight_tuples(k_max: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    let mut all = vec![];
    for _ in 0..k_max {
        out = out.iter().flat_map(|t| (1..=max).map(move |l| [t.clone(), vec![l]].concat())).collect();
        all.extend(out.clone());
    }
    all
}

/// Distinct integer shifts.
fn shifts(k: usize) -> Vec<i64> {
    [1, -2, 3][..k].to_vec()
}

#[test]
fn classical_dual_pair_transfer() {
    let mut all = vec![];
    for k in [2, 3] {
        for d in 0..=5 {
            all.extend(verify_transfer(k, d).unwrap());
        }
    }
    exact("classical transfer identities, k = 2, 3, degree <= 5", &all);
}

#[test]
fn quantum_group_axioms_and_yang_baxter() {
    let mut all = vec![];
    for p in [2, 3] {
        all.extend(verify_quantum_group(p, 3).unwrap());
    }
    exact("U_q(gl_p) relations, R intertwines, Yang-Baxter, p = 2, 3, degree <= 3", &all);
}

#[test]
fn loop_relations_on_pairs() {
    let window = 4;
    let n = 8;
    let mut all = vec![];
    for l1 in 0..=2 {
        for l2 in 0..=2 {
            // zeta = q^{-2s} with s = 1, -2
            let exact = tensor_evaluation(&[(l1, RatFunc::q_pow(-2)), (l2, RatFunc::q_pow(4))], window, &()).unwrap();
            all.extend(check_loop_relations(&exact).unwrap());
            let series =
                tensor_evaluation(&[(l1, Series::q_pow(-2, &n)), (l2, Series::q_pow(4, &n))], window, &n).unwrap();
            all.extend(check_loop_relations(&series).unwrap());
        }
    }
    exact("loop algebra relations and commutation table on V_l1 x V_l2, l <= 2, window 4", &all);
}

#[test]
fn quantum_weyl_structure_mod_h8() {
    let n = 8;
    let modules: Vec<Vec<u32>> = vec![
        vec![1],
        vec![2],
        vec![3],
        vec![8],
        vec![1, 1],
        vec![1, 2],
        vec![2, 1],
        vec![2, 2],
        vec![1, 3],
        vec![1, 1, 1],
    ];
    let mut all = vec![];
    for lambda in &modules {
        let f: Vec<(u32, Series)> =
            lambda.iter().zip(shifts(lambda.len())).map(|(&l, s)| (l, Series::q_pow(-2 * s, &n))).collect();
        let rep = tensor_evaluation(&f, n, &n).unwrap();
        assert!(rep.dim() <= 9);
        let ops = lattice_operators(&rep, n).unwrap();
        all.extend(check_automorphisms(&rep, &ops).unwrap());
    }
    exact("quantum Weyl relations mod h^8, dims <= 9", &all);
}

#[test]
fn extremal_vector_formulas() {
    let n = 6;
    let mut all = vec![];
    for lambda in weight_tuples(3, 2) {
        let f: Vec<(u32, Series)> =
            lambda.iter().zip(shifts(lambda.len())).map(|(&l, s)| (l, Series::q_pow(-2 * s, &n))).collect();
        let rep = tensor_evaluation(&f, n, &n).unwrap();
        let ops = lattice_operators(&rep, n).unwrap();
        all.extend(lattice_on_extremal(&rep, &ops).unwrap());
    }
    for l in 1..=2 {
        let rep = evaluation_rep(l, &Series::q_pow(-2, &n), n, &n).unwrap();
        all.extend(theta_on_extremal(&rep).unwrap());
    }
    exact("Theta and L_1, L_2 on extremal vectors, k <= 3, lambda_a <= 2, series", &all);
}

#[test]
fn quantum_matrix_duality_identities() {
    let mut all = vec![];
    for lambda in weight_tuples(3, 2).into_iter().filter(|t| t.len() >= 2) {
        let two_s: Vec<i64> = shifts(lambda.len()).iter().map(|s| 2 * s).collect();
        all.extend(verify_duality_identities(&lambda, &two_s, 8).unwrap());
    }
    exact("(1 2)R = S q^-D1 exact, R against L_1 and L_2 q^I mod h^8, k = 2, 3, lambda_a <= 2", &all);
}

#[test]
fn kz_casimir_and_sl_gl_monodromy() {
    let checks = duality_monodromy_check(&[1, 1], &[0.2, 0.5], 0.01, 1e-10).unwrap();
    let (r, w) = summary(&checks);
    verdict(
        "KZ versus Casimir and sl_2 versus gl_2 monodromy at integration tol 1e-10",
        r <= 1e-8,
        format!("{} relations, max residual {r:.2e} ({w}), tolerance 1e-8", checks.len()),
    );
}

#[test]
fn monodromy_equals_quantum_weyl_action() {
    let lines = compare_main(&[1, 1], &[0.2, 0.5], 0.01, 1e-10, 24, 4).unwrap();
    assert_eq!(lines.len(), 2);
    for m in lines {
        let r = &m.report;
        let group = match m.alphabet {
            Alphabet::Sl => "B_SL2",
            Alphabet::Gl => "B_GL2",
        };
        verdict(
            &format!("monodromy and quantum Weyl action agree on {group}"),
            r.passed(),
            format!(
                "{} words, trace residual {:.2e} (tolerance {:.1e}), intertwiner cond {:?}",
                r.words, r.trace_residual, r.tolerance, r.intertwiner_cond
            ),
        );
    }
}

#[test]
fn polynomial_recurrences() {
    let mut bad = vec![];
    let mut cases = 0;
    for l in 1..=5 {
        for n in 1..=5 {
            for m in 2..=4 {
                cases += 1;
                if !verify_relation_l(l, n, m) {
                    bad.push(format!("relation-l{:?}", (l, n, m)));
                }
                if !verify_lhs(l, n, m) {
                    bad.push(format!("closed-form{:?}", (l, n, m)));
                }
                if p_poly(l, n, m) != p_poly_by_compositions(l, n, m) {
                    bad.push(format!("compositions{:?}", (l, n, m)));
                }
                if l == 1 && !verify_relation_0(n, m) {
                    bad.push(format!("relation-0{:?}", (n, m)));
                }
            }
        }
    }
    verdict("p_{l;n}^(m) recurrences, closed form and composition oracle, l, n <= 5, m <= 4", bad.is_empty(), format!("{cases} cases, failures {bad:?}"));
}

#[test]
fn central_power_sums_exact() {
    let mut all = vec![];
    for k in 1..=3 {
        let f: Vec<(u32, RatFunc)> = shifts(k).iter().map(|s| (1, RatFunc::q_pow(-2 * s))).collect();
        let rep = tensor_evaluation(&f, 4, &()).unwrap();
        all.extend(check_central_power_sums(&rep).unwrap());
    }
    exact("z_r = [r]/r sum zeta_a^r on V_1 x .. x V_1, |r| <= 4", &all);
}
