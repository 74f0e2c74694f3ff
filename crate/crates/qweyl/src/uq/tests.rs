use super::*;
use crate::coeff::{Series, DEFAULT_ORDER};
use num_rational::BigRational;

type R = RatFunc;

fn q() -> R {
    R::q_pow(1)
}

#[test]
fn vector_rep_defining_action() {
    let v = vector_rep::<R>(2, &()).unwrap();
    assert_eq!(*v.e[0].get(0, 1), R::one());
    assert_eq!(v.d(0), Mat::from_ints(&[&[1, 0], &[0, 0]], &()));
    for c in check_relations(&vector_rep::<R>(3, &()).unwrap()).unwrap() {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn degree_one_is_the_vector_rep() {
    for p in 2..=3 {
        for line in [Line::Column, Line::Row] {
            assert_eq!(graded_module_from_qmatrix::<R>(p, 1, line, &()).unwrap(), vector_rep(p, &()).unwrap());
        }
    }
}

#[test]
fn degree_zero_is_trivial() {
    let m = graded_module_from_qmatrix::<R>(3, 0, Line::Column, &()).unwrap();
    assert_eq!(m, UqModule::trivial(3, &()));
}

#[test]
fn relations_on_symmetric_powers_and_tensors() {
    for p in 2..=3 {
        for c in verify_quantum_group(p, 2).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn tensor_with_trivial_changes_nothing() {
    let m = graded_module_from_qmatrix::<R>(2, 2, Line::Row, &()).unwrap();
    let t = UqModule::trivial(2, &());
    assert_eq!(tensor_module(&m, &t).unwrap(), m);
    assert_eq!(tensor_module(&t, &m).unwrap(), m);
}

#[test]
fn only_one_seed_half_intertwines() {
    let v = vector_rep::<R>(3, &()).unwrap();
    let upper = check_r_intertwines(&v, &v, &seed_r_matrix(3, SeedHalf::Upper, &())).unwrap();
    let lower = check_r_intertwines(&v, &v, &seed_r_matrix(3, SeedHalf::Lower, &())).unwrap();
    assert_eq!(upper.passed(), SEED_HALF == SeedHalf::Upper);
    assert_eq!(lower.passed(), SEED_HALF == SeedHalf::Lower);
}

#[test]
fn seed_on_highest_weight() {
    let r = seed_r_matrix::<R>(2, SEED_HALF, &());
    assert_eq!(*r.get(0, 0), q());
    let rs = RMatrices::<R>::new(&());
    assert_eq!(*rs.r(2, 0, 0).unwrap(), Mat::identity(1, &()));
}

#[test]
fn fused_r_matrices_intertwine() {
    let rs = RMatrices::<R>::new(&());
    for (a, b) in [(2, 1), (1, 2), (2, 2), (3, 1)] {
        let c = check_r_intertwines(&*rs.module(2, a).unwrap(), &*rs.module(2, b).unwrap(), &*rs.r(2, a, b).unwrap()).unwrap();
        assert!(c.passed(), "{a} {b}: {c:?}");
    }
}

#[test]
fn yang_baxter_p3() {
    let rs = RMatrices::<R>::new(&());
    assert!(check_yang_baxter(&rs, 3, 1, 1, 1).unwrap().passed());
    assert!(check_yang_baxter(&rs, 3, 1, 1, 2).unwrap().passed());
}

#[test]
fn weyl_element_on_the_vector_rep() {
    // S_1 Omega = -q Omega_bar and S_1 Omega_bar = Omega
    let v = vector_rep::<R>(2, &()).unwrap();
    let s = weyl_s1(&v).unwrap();
    assert_eq!(*s.get(1, 0), q().negate());
    assert!(s.get(0, 0).is_nil());
    assert_eq!(*s.get(0, 1), R::one());
    assert!(s.get(1, 1).is_nil());
    let t = UqModule::<R>::trivial(2, &());
    assert_eq!(weyl_s1(&t).unwrap(), Mat::identity(1, &()));
}

#[test]
fn weyl_conjugation_table() {
    for d in 0..=3 {
        let m = graded_module_from_qmatrix::<R>(2, d, Line::Row, &()).unwrap();
        for c in check_weyl_conjugation(&m).unwrap() {
            assert!(c.passed(), "degree {d}: {c:?}");
        }
    }
    let v = vector_rep::<R>(2, &()).unwrap();
    let vv = tensor_module(&v, &v).unwrap();
    for c in check_weyl_conjugation(&vv).unwrap() {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn weyl_element_classical_limit() {
    // at q = 1 the gl_2 element S is the permutation matrix on V
    let v = vector_rep::<BigRational>(2, &()).unwrap();
    assert_eq!(weyl_s(&v).unwrap(), Mat::from_ints(&[&[0, 1], &[1, 0]], &()));
    let vs = vector_rep::<Series>(2, &DEFAULT_ORDER).unwrap();
    assert!(check_weyl_conjugation(&vs).unwrap().iter().all(|c| c.passed()));
}
