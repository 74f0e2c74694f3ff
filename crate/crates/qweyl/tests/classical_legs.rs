//! The gl_k and gl_2 actions on polynomials in k x 2 matrices, compared with
//! the same operators assembled leg by leg from one-column and one-row pieces.

use num_rational::BigRational as Q;
use qweyl::classical::{gl_k_op, gl_n_op, on_leg, Split};
use qweyl::matrix::Mat;
use qweyl::monomial::MonomialBasis;

fn sum(ms: Vec<Mat<Q>>, n: usize) -> Mat<Q> {
    ms.into_iter().fold(Mat::zeros(n, n, &()), |acc, m| acc.add(&m))
}

fn bracket(a: &Mat<Q>, b: &Mat<Q>) -> Mat<Q> {
    a.mul(b).sub(&b.mul(a))
}

#[test]
fn gl_k_is_the_sum_over_column_legs() {
    for k in 1..=3 {
        for d in 0..=4 {
            let basis = MonomialBasis::total_degree(k, 2, d);
            for a in 0..k {
                for b in 0..k {
                    let whole = gl_k_op::<Q>(&basis, a, b, &()).unwrap();
                    let legs = (0..2)
                        .map(|j| on_leg::<Q>(&basis, Split::Columns, j, &(), &|fb| gl_k_op::<Q>(fb, a, b, &())).unwrap())
                        .collect();
                    assert_eq!(whole, sum(legs, basis.len()), "k={k} d={d} E_{a}{b}");
                }
            }
        }
    }
}

#[test]
fn gl_2_is_the_sum_over_row_legs() {
    for k in 1..=3 {
        for d in 0..=4 {
            let basis = MonomialBasis::total_degree(k, 2, d);
            for i in 0..2 {
                for j in 0..2 {
                    let whole = gl_n_op::<Q>(&basis, i, j, &()).unwrap();
                    let legs = (0..k)
                        .map(|a| on_leg::<Q>(&basis, Split::Rows, a, &(), &|fb| gl_n_op::<Q>(fb, i, j, &())).unwrap())
                        .collect();
                    assert_eq!(whole, sum(legs, basis.len()), "k={k} d={d} E_{i}{j}");
                }
            }
        }
    }
}

#[test]
fn the_two_actions_commute() {
    for k in 1..=3 {
        for d in 0..=4 {
            let basis = MonomialBasis::total_degree(k, 2, d);
            let zero = Mat::<Q>::zeros(basis.len(), basis.len(), &());
            for a in 0..k {
                for b in 0..k {
                    let x = gl_k_op::<Q>(&basis, a, b, &()).unwrap();
                    for i in 0..2 {
                        for j in 0..2 {
                            let y = gl_n_op::<Q>(&basis, i, j, &()).unwrap();
                            assert_eq!(bracket(&x, &y), zero, "k={k} d={d}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn gl_k_commutation_relations() {
    let k = 3;
    let basis = MonomialBasis::total_degree(k, 2, 3);
    let e = |a: usize, b: usize| gl_k_op::<Q>(&basis, a, b, &()).unwrap();
    let zero = Mat::<Q>::zeros(basis.len(), basis.len(), &());
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let mut rhs = zero.clone();
                    if b == c {
                        rhs = rhs.add(&e(a, d));
                    }
                    if d == a {
                        rhs = rhs.sub(&e(c, b));
                    }
                    assert_eq!(bracket(&e(a, b), &e(c, d)), rhs);
                }
            }
        }
    }
}

#[test]
fn diagonal_generators_count_degrees() {
    let basis = MonomialBasis::total_degree(2, 2, 3);
    for i in 0..basis.len() {
        let e00 = gl_k_op::<Q>(&basis, 0, 0, &()).unwrap();
        let row0: u32 = basis.row_degree(i, 0);
        assert_eq!(*e00.get(i, i), Q::from_integer(row0.into()));
        let f11 = gl_n_op::<Q>(&basis, 1, 1, &()).unwrap();
        assert_eq!(*f11.get(i, i), Q::from_integer(basis.col_degree(i, 1).into()));
    }
}
