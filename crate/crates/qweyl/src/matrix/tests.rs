use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::coeff::{ComplexCtx, RatFunc};

type Q = BigRational;

fn qm(rows: &[&[i64]]) -> Mat<Q> {
    Mat::from_ints(rows, &())
}

#[test]
fn kron_matches_definition() {
    let a = qm(&[&[1, 2], &[3, 4]]);
    let b = qm(&[&[0, 1], &[1, 0]]);
    let k = a.kron(&b);
    assert_eq!(k.rows(), 4);
    assert_eq!(k, qm(&[&[0, 1, 0, 2], &[1, 0, 2, 0], &[0, 3, 0, 4], &[3, 0, 4, 0]]));
}

#[test]
fn place_on_leg_is_kron_with_identities() {
    let a = qm(&[&[1, 2, 0], &[0, 1, 5], &[7, 0, 1]]);
    let dims = [2, 3, 2];
    let expect = Mat::identity(2, &()).kron(&a).kron(&Mat::identity(2, &()));
    assert_eq!(place_on_leg(&a, 1, &dims), expect);
}

#[test]
fn flip_of_two_legs() {
    let p = permute_legs::<Q>(&[1, 0], &[2, 3], &());
    let a = qm(&[&[1, 2], &[3, 4]]);
    let b = qm(&[&[1, 0, 2], &[0, 3, 0], &[5, 0, 1]]);
    // P (a x b) P^-1 = b x a
    let lhs = p.mul(&a.kron(&b));
    let rhs = b.kron(&a).mul(&p);
    assert_eq!(lhs, rhs);
}

#[test]
fn two_leg_placement_on_outer_legs() {
    let r = qm(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
    let on13 = place_on_legs2(&r, 0, 2, &[2, 2, 2]);
    // the flip of legs 1 and 3
    let expect = permute_legs::<Q>(&[2, 1, 0], &[2, 2, 2], &());
    assert_eq!(on13, expect);
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn permute_legs_composes(s in perm_strategy(3), t in perm_strategy(3), dims in prop::collection::vec(1usize..=3, 3)) {
        let pt = permute_legs::<Q>(&t, &dims, &());
        let mut mid = vec![0; 3];
        for k in 0..3 {
            mid[t[k]] = dims[k];
        }
        let ps = permute_legs::<Q>(&s, &mid, &());
        let st: Vec<usize> = (0..3).map(|k| s[t[k]]).collect();
        prop_assert_eq!(ps.mul(&pt), permute_legs::<Q>(&st, &dims, &()));
    }

    #[test]
    fn series_log_inverts_exp(entries in prop::collection::vec(-3i64..=3, 4 * 9)) {
        let l: Vec<Mat<Q>> = (0..4)
            .map(|r| Mat::from_fn(3, 3, &(), |i, j| Q::from_integer(BigInt::from(entries[r * 9 + i * 3 + j]))))
            .collect();
        let psi = matrix_series_exp(&l);
        prop_assert_eq!(matrix_series_log(&psi), l);
    }
}

#[test]
fn scaled_log_agrees_with_plain_log() {
    let c = Q::new(BigInt::from(3), BigInt::from(7));
    let x: Vec<Mat<Q>> = vec![qm(&[&[1, 2], &[0, 1]]), qm(&[&[0, 1], &[1, 0]]), qm(&[&[2, 0], &[1, 1]])];
    let scaled = matrix_series_scaled_log(&x, &c);
    let cx: Vec<Mat<Q>> = x.iter().map(|m| m.scale(&c)).collect();
    let plain = matrix_series_log(&cx);
    for (s, p) in scaled.iter().zip(&plain) {
        assert_eq!(s.scale(&c), *p);
    }
}

#[test]
fn inverse_over_rational_functions() {
    let q = RatFunc::q_pow(1);
    let one = RatFunc::one();
    let m = Mat::from_rows(vec![vec![q.clone(), one.clone()], vec![one.clone(), q.clone()]], &()).unwrap();
    let inv = m.try_inverse().unwrap();
    assert_eq!(m.mul(&inv), Mat::identity(2, &()));
    let singular = Mat::from_rows(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]], &()).unwrap();
    assert!(singular.try_inverse().is_err());
}

#[test]
fn intertwiner_of_conjugate_representations() {
    let e = qm(&[&[0, 1, 0], &[0, 0, 2], &[0, 0, 0]]);
    let f = qm(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
    let p = qm(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
    let pinv = p.try_inverse().unwrap();
    let conj = |m: &Mat<Q>| p.mul(m).mul(&pinv);
    let x = solve_intertwiner(&[e.clone(), f.clone()], &[conj(&e), conj(&f)]).unwrap().unwrap();
    assert_eq!(x.mul(&e), conj(&e).mul(&x));
    assert_eq!(x.mul(&f), conj(&f).mul(&x));
    assert!(x.try_inverse().is_ok());
    // the 3-dim irreducible and a trivial module: nothing nonzero
    let z = qm(&[&[0]]);
    assert!(solve_intertwiner(&[e, f], &[z.clone(), z]).unwrap().is_none());
}

#[test]
fn intertwiner_in_floats() {
    let ctx = ComplexCtx::plain();
    let c = |x: f64| Complex64::new(x, 0.0);
    let a = Mat::from_rows(vec![vec![c(1.0), c(1.0)], vec![c(0.0), c(2.0)]], &ctx).unwrap();
    let p = Mat::from_rows(vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(1.0)]], &ctx).unwrap();
    let b = p.mul(&a).mul(&p.try_inverse().unwrap());
    let x = solve_intertwiner(&[a.clone()], &[b.clone()]).unwrap().unwrap();
    let res = x.mul(&a).sub(&b.mul(&x)).max_magnitude();
    assert!(res < 1e-12, "residual {res}");
    assert!(cond(&x) < 1e3);
}

#[test]
fn exponential_of_nilpotent_and_diagonal() {
    let n = qm(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let e = mat_exp(&n).unwrap();
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    assert_eq!(*e.get(0, 2), half);
    let ctx = ComplexCtx::plain();
    let d = Mat::diag(vec![Complex64::new(0.0, 3.0), Complex64::new(-2.5, 0.0)], &ctx);
    let ed = mat_exp(&d).unwrap();
    assert!((ed.get(0, 0) - Complex64::new(0.0, 3.0).exp()).norm() < 1e-13);
    assert!((ed.get(1, 1) - (-2.5f64).exp()).norm() < 1e-13);
}

#[test]
fn matrices_serialize_as_string_arrays() {
    let m: Mat<RatFunc> = Mat::from_rows(vec![vec![crate::coeff::q_integer(2, &()), RatFunc::zero()]], &()).unwrap();
    assert_eq!(m.to_json().to_string(), r#"[["(q^2+1)/q","0"]]"#);
}
