use super::*;
use crate::qloop::{evaluation_rep, tensor_evaluation};
use proptest::prelude::*;

fn x(k: usize) -> CommutativePoly {
    CommutativePoly::var(k)
}

#[test]
fn small_values() {
    assert_eq!(p_poly(1, 0, 1), x(1));
    assert_eq!(p_poly(1, 1, 2), x(1).mul(&x(1)).scale(&int(-1)));
    for m in 1..=5 {
        let want = x(0).pow(m).scale(&int(if m % 2 == 1 { 1 } else { -1 }));
        assert_eq!(p_poly(0, 0, m), want);
    }
    // p_{2;0}^{(2)}: the partition (1,1) with weight 2!/2! = 1
    assert_eq!(p_poly(2, 0, 2), x(1).pow(2));
    // p_{3;0}^{(2)}: (2,1) with weight 2
    assert_eq!(p_poly(3, 0, 2), x(2).mul(&x(1)).scale(&int(2)));
    assert_eq!(p_poly(1, 0, 1).to_string(), "x1");
    assert_eq!(p_poly(1, 1, 1).to_string(), "x1 - x2");
}

#[test]
fn partitions_and_compositions() {
    assert_eq!(partitions(5, 2), vec![vec![4, 1], vec![3, 2]]);
    assert_eq!(compositions(4, 2).len(), 3);
    assert!(partitions(2, 3).is_empty());
    // C(total-1, parts-1) compositions
    assert_eq!(compositions(9, 4).len(), 56);
}

#[test]
fn partition_and_composition_forms_agree() {
    for l in 0..=5 {
        for n in 0..=5 {
            for m in 1..=4 {
                assert_eq!(p_poly(l, n, m), p_poly_by_compositions(l, n, m), "l={l} n={n} m={m}");
            }
        }
    }
}

#[test]
fn hand_expanded_cases() {
    assert!(verify_relation_l(1, 1, 2));
    assert_eq!(relation_l_rhs(1, 1, 2), x(1).pow(2).scale(&int(-1)));
    assert!(verify_relation_l(2, 2, 2));
    // relation-0 at (n, m) = (1, 2): -x_0 p_{0;0}^{(1)} = -x_0^2
    assert_eq!(relation_0_rhs(1, 2), x(0).mul(&p_poly(0, 0, 1)).scale(&int(-1)));
    assert!(verify_relation_0(1, 2));
    assert_eq!(lhs_closed_form(1, 1, 2), x(1).pow(2));
}

#[test]
fn recurrences_on_the_grid() {
    for l in 1..=5 {
        for n in 1..=5 {
            for m in 2..=4 {
                assert!(verify_relation_l(l, n, m), "relation l={l} n={n} m={m}");
                assert!(verify_lhs(l, n, m), "lhs l={l} n={n} m={m}");
            }
        }
    }
    for n in 1..=5 {
        for m in 2..=4 {
            assert!(verify_relation_0(n, m), "relation-0 n={n} m={m}");
        }
    }
}

#[test]
fn perturbed_relation_fails() {
    let rhs = relation_l_rhs(2, 2, 3).add(&x(3));
    assert_ne!(p_poly(2, 2, 3), rhs);
}

fn poly() -> impl Strategy<Value = CommutativePoly> {
    prop::collection::vec((prop::collection::vec(0usize..4, 0..3), -3i64..4), 0..4).prop_map(|ts| {
        ts.iter().fold(CommutativePoly::zero(), |acc, (v, c)| acc.add(&CommutativePoly::monomial(v).scale(&int(*c))))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }
}

#[test]
fn degree_of_p_is_m() {
    for l in 1..=4 {
        for n in 0..=3 {
            for m in 1..=3 {
                let p = p_poly(l, n, m);
                assert!(p.terms().all(|(e, _)| e.iter().sum::<u32>() == m));
            }
        }
    }
}

#[test]
fn probe_on_a_trivial_module_is_infinite() {
    let n = 6;
    let rep = evaluation_rep(0, &Series::exp_linear(&int(-1), n), 4, &n).unwrap();
    assert_eq!(module_order_probe(&rep, 2).unwrap(), None);
}

#[test]
fn probe_at_r_zero_is_h0() {
    let n = 6;
    let rep = evaluation_rep(1, &Series::exp_linear(&int(-1), n), 4, &n).unwrap();
    assert_eq!(module_order_probe(&rep, 0).unwrap(), Some(0));
}

#[test]
fn probe_grows_with_r() {
    let n = 10;
    let rep = evaluation_rep(1, &Series::exp_linear(&int(-1), n), 6, &n).unwrap();
    let vals: Vec<Option<usize>> = (0..=6).map(|r| module_order_probe(&rep, r).unwrap()).collect();
    for w in vals.windows(2) {
        let (a, b) = (w[0].unwrap_or(usize::MAX), w[1].unwrap_or(usize::MAX));
        assert!(b >= a, "{vals:?}");
    }
    assert!(vals[6].unwrap_or(usize::MAX) >= 6, "{vals:?}");
    let pair = tensor_evaluation(&[(1, Series::exp_linear(&int(-1), n)), (1, Series::exp_linear(&int(2), n))], 4, &n).unwrap();
    assert!(module_order_probe(&pair, 4).unwrap().unwrap_or(usize::MAX) >= 4);
}
