use super::*;
use crate::coeff::{RatFunc, Series};
use num_complex::Complex64;
use crate::coeff::ComplexCtx;

type R = RatFunc;

fn all_pass(checks: &[IdentityCheck]) {
    for c in checks {
        assert!(c.passed(), "{} residual {}", c.name, c.residual);
    }
}

fn zeta(n: i64) -> R {
    R::q_pow(n)
}

#[test]
fn f1_on_the_two_dimensional_module() {
    let z = R::from_int(3, &());
    let rep = evaluation_rep(1, &z, 1, &()).unwrap();
    let f1 = rep.f(1).unwrap();
    assert_eq!(*f1.get(1, 0), z);
    assert!(f1.get(0, 1).is_nil() && f1.get(1, 1).is_nil() && f1.get(0, 0).is_nil());
}

#[test]
fn h1_is_diagonal_with_zeta() {
    let z = zeta(-2);
    let rep = evaluation_rep(1, &z, 2, &()).unwrap();
    let want = Mat::diag(vec![R::q_pow(-1).mul(&z), R::q_pow(1).mul(&z).negate()], &());
    assert_eq!(*rep.h(1).unwrap(), want);
}

#[test]
fn trivial_evaluation_module() {
    let rep = evaluation_rep(0, &zeta(3), 3, &()).unwrap();
    for k in -3..=3 {
        assert!(rep.e(k).unwrap().is_zero() && rep.f(k).unwrap().is_zero());
    }
    for j in 1..=2 {
        for plus in [true, false] {
            let th = rep.theta(j, plus);
            assert_eq!(th[0], Mat::identity(1, &()));
            assert!(th[1..].iter().all(|m| m.is_zero()));
        }
    }
    let ops = lattice_operators(&rep, 3).unwrap();
    for m in [&ops.l1, &ops.l2, &ops.s] {
        assert_eq!(*m, Mat::identity(1, &()));
    }
}

#[test]
fn tensor_with_trivial_changes_nothing() {
    let a = evaluation_rep(2, &zeta(1), 2, &()).unwrap();
    let t = evaluation_rep(0, &zeta(5), 2, &()).unwrap();
    let at = tensor_loop(&[&a, &t]).unwrap();
    for k in -2..=2 {
        assert_eq!(a.e(k).unwrap(), at.e(k).unwrap());
        assert_eq!(a.f(k).unwrap(), at.f(k).unwrap());
    }
    for r in -2..=2 {
        assert_eq!(a.d(1, r).unwrap(), at.d(1, r).unwrap());
        assert_eq!(a.d(2, r).unwrap(), at.d(2, r).unwrap());
    }
}

#[test]
fn relations_on_single_evaluation_modules() {
    for lambda in 0..=3 {
        let rep = evaluation_rep(lambda, &zeta(-2), 4, &()).unwrap();
        all_pass(&check_loop_relations(&rep).unwrap());
    }
}

#[test]
fn relations_on_tensor_products() {
    for (l1, l2) in [(1, 1), (1, 2), (2, 1)] {
        let rep = tensor_evaluation(&[(l1, zeta(-2)), (l2, R::from_int(2, &()))], 3, &()).unwrap();
        all_pass(&check_loop_relations(&rep).unwrap());
    }
}

#[test]
fn relations_on_a_triple_product() {
    let rep = tensor_evaluation(&[(1, zeta(-2)), (1, zeta(2)), (1, R::from_int(3, &()))], 3, &()).unwrap();
    all_pass(&check_loop_relations(&rep).unwrap());
}

#[test]
fn relations_over_series() {
    let n = 6;
    let z1 = Series::q_pow(-2, &n);
    let z2 = Series::q_pow(4, &n);
    let rep = tensor_evaluation(&[(1, z1), (2, z2)], 3, &n).unwrap();
    all_pass(&check_loop_relations(&rep).unwrap());
}

#[test]
fn central_elements_are_power_sums() {
    let rep = tensor_evaluation(&[(1, zeta(-2)), (1, R::from_int(5, &()))], 4, &()).unwrap();
    all_pass(&check_central_power_sums(&rep).unwrap());
    // z_1 on V_1(a) x V_1(b) is a + b
    let want = Mat::scalar(4, &zeta(-2).add(&R::from_int(5, &())), &());
    assert_eq!(*rep.central(1).unwrap(), want);
    let bad = evaluation_rep(2, &zeta(1), 2, &()).unwrap();
    assert!(check_central_power_sums(&bad).is_err());
}

#[test]
fn theta_on_highest_and_lowest_vectors() {
    for lambda in 0..=3 {
        let rep = evaluation_rep(lambda, &zeta(-4), 4, &()).unwrap();
        all_pass(&theta_on_extremal(&rep).unwrap());
    }
}

#[test]
fn theta_first_coefficient_on_omega() {
    // q (z - q^-2 zeta)/(z - zeta) = q + q(1 - q^-2) zeta z^-1 + ...
    let z = R::from_int(7, &());
    let rep = evaluation_rep(1, &z, 2, &()).unwrap();
    let want = R::q_pow(1).sub(&R::q_pow(-1)).mul(&z);
    assert_eq!(*rep.theta(1, true)[1].get(0, 0), want);
}

#[test]
fn ratio_expansion_matches_division() {
    let (lead, a, b) = (R::from_int(2, &()), R::q_pow(1), R::from_int(3, &()));
    let plus = ratio_expansion(&lead, &a, &b, 4, true, &()).unwrap();
    // (1 - a/z)(1 + b/z + b^2/z^2 + ...)
    assert_eq!(plus[0], lead);
    assert_eq!(plus[1], lead.mul(&b.sub(&a)));
    let minus = ratio_expansion(&lead, &a, &b, 3, false, &()).unwrap();
    // lead (a - z)/(b - z) = lead a/b (1 - z/a)(1 + z/b + ...)
    assert_eq!(minus[0], lead.mul(&a).try_div(&b).unwrap());
    let c1 = b.try_inv().unwrap().sub(&a.try_inv().unwrap());
    assert_eq!(minus[1], minus[0].mul(&c1));
}

#[test]
fn weyl_operators_exactly_over_rational_functions() {
    let rep = tensor_evaluation(&[(1, zeta(-2)), (2, R::from_int(2, &()))], 3, &()).unwrap();
    let h = rep.h0_weights();
    let s1 = triple_exponential(rep.e(0).unwrap(), rep.f(0).unwrap(), &h, &()).unwrap();
    let e0 = rep.k_pow(-1).mul(rep.f(1).unwrap());
    let f0 = rep.e(-1).unwrap().mul(&rep.k_pow(1));
    let hneg: Vec<i64> = h.iter().map(|x| -x).collect();
    let s0 = triple_exponential(&e0, &f0, &hneg, &()).unwrap();
    let ad = |s: &Mat<R>, y: &Mat<R>| s.mul(y).mul(&s.try_inverse().unwrap());
    assert_eq!(ad(&s1, rep.e(0).unwrap()), rep.f(0).unwrap().mul(&rep.k_pow(1)).neg());
    assert_eq!(ad(&s0, rep.f(1).unwrap()), rep.k_pow(-1).mul(rep.e(-1).unwrap()).neg());
    assert_eq!(ad(&s0, rep.e(0).unwrap()), rep.k_pow(-1).mul(rep.f(2).unwrap()).neg());
}

fn series_rep(n: usize, factors: &[(u32, i64)]) -> LoopRep<Series> {
    let f: Vec<(u32, Series)> = factors.iter().map(|&(l, e)| (l, Series::q_pow(e, &n))).collect();
    tensor_evaluation(&f, n, &n).unwrap()
}

#[test]
fn automorphisms_mod_h_power() {
    let n = 6;
    for factors in [vec![(1, -2)], vec![(2, 4)], vec![(1, -2), (1, 6)]] {
        let rep = series_rep(n, &factors);
        let ops = lattice_operators(&rep, n).unwrap();
        all_pass(&check_automorphisms(&rep, &ops).unwrap());
    }
}

#[test]
fn lattice_operators_on_extremal_vectors() {
    let n = 6;
    for factors in [vec![(1, -2)], vec![(2, 2)], vec![(1, -2), (2, 4)]] {
        let rep = series_rep(n, &factors);
        let ops = lattice_operators(&rep, n).unwrap();
        all_pass(&lattice_on_extremal(&rep, &ops).unwrap());
    }
}

#[test]
fn lattice_truncation_is_stable() {
    let n = 5;
    let f = [(1, Series::q_pow(-2, &n)), (1, Series::q_pow(2, &n))];
    let rep = tensor_evaluation(&f, 2 * n, &n).unwrap();
    let short = lattice_operators(&rep, n).unwrap();
    let long = lattice_operators(&rep, 2 * n).unwrap();
    assert_eq!(short.l1, long.l1);
    assert_eq!(short.l2, long.l2);
}

#[test]
fn lattice_from_h_tilde() {
    let n = 6;
    let rep = series_rep(n, &[(1, -2), (1, 4)]);
    let ops = lattice_operators(&rep, n).unwrap();
    assert_eq!(lattice_l_from_h(&rep, n).unwrap(), ops.l);
    assert_eq!(ops.l, ops.l1.mul(&ops.l2.try_inverse().unwrap()));
}

#[test]
fn window_limits_r_max() {
    let rep = evaluation_rep(1, &zeta(1), 2, &()).unwrap();
    assert!(lattice_operators(&rep, 3).is_err());
    assert!(rep.e(3).is_err());
}

#[test]
fn float_lattice_needs_small_h() {
    let zc = |ctx: &ComplexCtx, e: i64| Complex64::q_pow(e, ctx);
    let small = ComplexCtx::new(Complex64::new(0.0, 0.02));
    let rep = tensor_evaluation(&[(1, zc(&small, -2)), (1, zc(&small, 2))], 24, &small).unwrap();
    let ops = lattice_operators(&rep, 24).unwrap();
    assert!(ops.rho < MAX_RHO);
    for c in check_automorphisms(&rep, &ops).unwrap() {
        assert!(c.within(1e-6), "{} residual {}", c.name, c.residual);
    }
    let big = ComplexCtx::new(Complex64::new(0.0, 3.0));
    let rep = tensor_evaluation(&[(1, zc(&big, -2)), (1, zc(&big, 2))], 12, &big).unwrap();
    assert!(matches!(lattice_operators(&rep, 12), Err(Error::Convergence(_))));
}
