use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn laurent(shift: i64, c: &[i64]) -> RatFunc {
    RatFunc::from_parts(shift, Poly::new(c.iter().map(|&x| rat(x, 1)).collect()), Poly::one())
}

#[test]
fn quantum_two_prints_reduced() {
    let two = q_integer::<RatFunc>(2, &());
    assert_eq!(two.to_string(), "(q^2+1)/q");
    assert_eq!("(q^2+1)/q".parse::<RatFunc>().unwrap(), two);
    assert_eq!("q + q^-1".parse::<RatFunc>().unwrap(), two);
}

#[test]
fn cancellation_is_canonical() {
    let a: RatFunc = "(q^2-1)/(q-1)".parse().unwrap();
    let b: RatFunc = "q+1".parse().unwrap();
    assert_eq!(a, b);
    let c: RatFunc = "(2*q^2+2)/(4*q^3+4*q)".parse().unwrap();
    assert_eq!(c.to_string(), "1/2/q");
    assert_eq!(c.mul(&"2*q".parse().unwrap()), RatFunc::one());
}

#[test]
fn quantum_integers_at_small_n() {
    assert_eq!(q_integer::<RatFunc>(3, &()).to_string(), "(q^4+q^2+1)/q^2");
    assert_eq!(q_integer::<RatFunc>(-2, &()), q_integer::<RatFunc>(2, &()).negate());
    assert_eq!(q_integer::<RatFunc>(0, &()), RatFunc::zero());
    assert_eq!(q_integer::<BigRational>(5, &()), rat(5, 1));
    let f3 = q_factorial::<RatFunc>(3, &());
    let expect = q_integer::<RatFunc>(2, &()).mul(&q_integer::<RatFunc>(3, &()));
    assert_eq!(f3, expect);
}

#[test]
fn q_binomial_domain() {
    assert!(matches!(q_binomial::<RatFunc>(3, 4, &()), Err(crate::Error::Domain(_))));
    assert!(q_binomial::<RatFunc>(-1, 0, &()).is_err());
    let b42 = q_binomial::<RatFunc>(4, 2, &()).unwrap();
    let f = |n| q_factorial::<RatFunc>(n, &());
    assert_eq!(b42, f(4).try_div(&f(2).mul(&f(2))).unwrap());
}

#[test]
fn embed_quantum_two() {
    let two = q_integer::<RatFunc>(2, &());
    let s = embed_q_series(&two, 8).unwrap();
    assert_eq!(s.coeff(0), rat(2, 1));
    assert_eq!(s.coeff(1), rat(0, 1));
    assert_eq!(s.coeff(2), rat(1, 4));
    assert_eq!(s.coeff(4), rat(1, 192));
    let bad: RatFunc = "1/(q-1)".parse().unwrap();
    assert!(matches!(embed_q_series(&bad, 8), Err(crate::Error::NotEmbeddable(_))));
}

#[test]
fn series_format() {
    let s = Series::from_coeffs(vec![rat(1, 1), rat(1, 2)], 8);
    assert_eq!(s.to_string(), "1 + 1/2*h + O(h^8)");
    assert_eq!(s.to_string().parse::<Series>().unwrap(), s);
    let t: Series = "-h^2 + 3 - 2/3*h + O(h^4)".parse().unwrap();
    assert_eq!(t.to_string(), "3 - 2/3*h - h^2 + O(h^4)");
    assert!("1 + h".parse::<Series>().is_err());
    assert!("1 + + h + O(h^3)".parse::<Series>().is_err());
}

#[test]
fn series_exp_log_domains() {
    let one = Series::constant(rat(1, 1), 6);
    assert!(matches!(one.exp(), Err(crate::Error::Domain(_))));
    assert!(matches!(Series::h(6).log(), Err(crate::Error::Domain(_))));
    let e = Series::h(6).exp().unwrap();
    assert_eq!(e, Series::exp_linear(&rat(1, 1), 6));
}

#[test]
fn mixed_orders_truncate() {
    let a = Series::q_pow(1, &8);
    let b = Series::q_pow(1, &5);
    assert_eq!(a.mul(&b).order(), 5);
    assert_eq!(a.mul(&b), Series::q_pow(2, &5));
}

#[test]
fn complex_q_power() {
    let ctx = ComplexCtx::new(Complex64::new(0.0, 0.3));
    let q = Complex64::q(&ctx);
    assert!((q - Complex64::new(0.0, 0.15).exp()).norm() < 1e-15);
    let two = q_integer::<Complex64>(2, &ctx);
    assert!((two - 2.0 * (0.15f64).cos()).norm() < 1e-14);
    assert_eq!(Complex64::new(1.0, -2.0).to_string(), "1-2i");
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Poly::new(c.into_iter().map(|x| rat(x, 1)).collect()))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, small_poly(), small_poly()).prop_map(|(s, n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        RatFunc::from_parts(s, n, d)
    })
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 6).prop_map(|c| {
        Series::from_coeffs(c.into_iter().map(|(n, d)| rat(n, d)).collect(), 6)
    })
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_nil());
        if let Some(i) = a.try_inv() {
            prop_assert_eq!(a.mul(&i), RatFunc::one());
        }
    }

    #[test]
    fn ratfunc_display_round_trips(a in ratfunc()) {
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if let Some(i) = a.try_inv() {
            prop_assert_eq!(a.mul(&i), Series::one_in(&6));
        }
    }

    #[test]
    fn series_display_round_trips(a in series()) {
        let back: Series = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn complex_ring_axioms(a in complex(), b in complex(), c in complex()) {
        prop_assert!(close(a.add(&b), b.add(&a)));
        prop_assert!(close(a.mul(&b).mul(&c), a.mul(&b.mul(&c))));
        prop_assert!(close(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c))));
        if let Some(i) = Ring::try_inv(&a) {
            prop_assert!(close(a.mul(&i), Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn log_inverts_exp(a in series()) {
        let mut c = a.coeffs().to_vec();
        c[0] = rat(0, 1);
        let s = Series::from_coeffs(c, 6);
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn embedding_is_multiplicative(a in ratfunc(), b in ratfunc()) {
        if let (Ok(x), Ok(y)) = (embed_q_series(&a, 6), embed_q_series(&b, 6)) {
            prop_assert_eq!(embed_q_series(&a.mul(&b), 6).unwrap(), x.mul(&y));
            prop_assert_eq!(embed_q_series(&a.add(&b), 6).unwrap(), x.add(&y));
        }
    }
}

#[test]
fn q_binomial_symmetry() {
    for n in 0..=8 {
        for m in 0..=n {
            let a = q_binomial::<RatFunc>(n, m, &()).unwrap();
            let b = q_binomial::<RatFunc>(n, n - m, &()).unwrap();
            assert_eq!(a, b, "n={n} m={m}");
            // bar-invariant: the balanced binomial is a Laurent polynomial symmetric in q <-> 1/q
            assert!(a.is_laurent());
            let c = a.numerator().coeffs();
            let rev: Vec<_> = c.iter().rev().cloned().collect();
            assert_eq!(c.to_vec(), rev);
        }
    }
}

#[test]
fn laurent_helper_matches_parser() {
    assert_eq!(laurent(-1, &[1, 0, 1]), "q^-1 + q".parse().unwrap());
}
