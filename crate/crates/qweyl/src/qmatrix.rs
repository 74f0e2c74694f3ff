//! Quantum `k x n` matrix space as a module over `U_h(gl_k) x U_h(gl_n)`,
//! built on monomial bases `X^m`. Nothing here multiplies monomials; only the
//! module structure is used.

use crate::check::IdentityCheck;
use crate::coeff::{embed_q_series, q_integer, QRing, RatFunc, Ring, Series};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::monomial::MonomialBasis;
use crate::qloop::{lattice_operators, tensor_evaluation, LoopRep};
use crate::uq::{triple_exponential, RMatrices};

/// A Chevalley generator, zero-indexed: `E(0)` is `E_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QGen {
    E(usize),
    F(usize),
    D(usize),
}

/// Which of the two commuting algebras acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// `U_h(gl_k)`, mixing rows.
    Left,
    /// `U_h(gl_n)`, mixing columns.
    Right,
}

fn action<T: QRing>(basis: &MonomialBasis, side: Side, g: QGen, ctx: &T::Ctx) -> Result<Mat<T>> {
    let (k, n) = (basis.k, basis.n);
    let p = if side == Side::Left { k } else { n };
    // entry with the acting index first
    let m = |i: usize, a: usize, j: usize| match side {
        Side::Left => basis.entry(i, a, j),
        Side::Right => basis.entry(i, j, a),
    } as i64;
    let flat = |a: usize, j: usize| match side {
        Side::Left => a * n + j,
        Side::Right => j * n + a,
    };
    let others = if side == Side::Left { n } else { k };
    let idx = match g {
        QGen::E(a) | QGen::F(a) => a + 1,
        QGen::D(a) => a,
    };
    if idx >= p {
        return Err(Error::Domain(format!("generator {g:?} out of range for gl_{p}")));
    }
    let dim = basis.len();
    let mut out: Mat<T> = Mat::zeros(dim, dim, ctx);
    for s in 0..dim {
        match g {
            QGen::D(a) => {
                let w: i64 = (0..others).map(|j| m(s, a, j)).sum();
                out.set(s, s, T::from_int(w, ctx));
            }
            QGen::E(a) => {
                for i in 0..others {
                    let c = m(s, a + 1, i);
                    if c == 0 {
                        continue;
                    }
                    let shift: i64 = (i + 1..others).map(|j| m(s, a, j) - m(s, a + 1, j)).sum();
                    let t = basis.shifted(s, flat(a, i), flat(a + 1, i))?;
                    let v = q_integer::<T>(c, ctx).mul(&T::q_pow(shift, ctx));
                    out.set(t, s, out.get(t, s).add(&v));
                }
            }
            QGen::F(a) => {
                for i in 0..others {
                    let c = m(s, a, i);
                    if c == 0 {
                        continue;
                    }
                    let shift: i64 = (0..i).map(|j| m(s, a, j) - m(s, a + 1, j)).sum();
                    let t = basis.shifted(s, flat(a + 1, i), flat(a, i))?;
                    let v = q_integer::<T>(c, ctx).mul(&T::q_pow(-shift, ctx));
                    out.set(t, s, out.get(t, s).add(&v));
                }
            }
        }
    }
    Ok(out)
}

/// `U_h(gl_k)` generator on a component of quantum matrix space.
pub fn glk_q_action<T: QRing>(basis: &MonomialBasis, g: QGen, ctx: &T::Ctx) -> Result<Mat<T>> {
    action(basis, Side::Left, g, ctx)
}

/// `U_h(gl_n)` generator on a component of quantum matrix space.
pub fn gln_q_action<T: QRing>(basis: &MonomialBasis, g: QGen, ctx: &T::Ctx) -> Result<Mat<T>> {
    action(basis, Side::Right, g, ctx)
}

/// Permutation swapping the two exponent columns of every monomial.
pub fn flip_tau<T: QRing>(basis: &MonomialBasis, ctx: &T::Ctx) -> Result<Mat<T>> {
    if basis.n != 2 {
        return Err(Error::Dimension("the flip needs two columns".into()));
    }
    let mut out: Mat<T> = Mat::zeros(basis.len(), basis.len(), ctx);
    for s in 0..basis.len() {
        let mut e = basis.exp(s).to_vec();
        for a in 0..basis.k {
            e.swap(2 * a, 2 * a + 1);
        }
        let t = basis
            .index_of(&e)
            .ok_or_else(|| Error::Domain("component is not closed under the column swap".into()))?;
        out.set(t, s, T::one_in(ctx));
    }
    Ok(out)
}

/// The component of `A_q(M_{k,2})` with row degrees `lambda`, as a module over
/// the loop algebra: `V_{lambda_1}(zeta_1) x .. x V_{lambda_k}(zeta_k)` with
/// `zeta_a = q^{-two_s[a]}`. The tensor basis is the monomial basis of
/// `MonomialBasis::row_degrees(2, lambda)`.
pub fn loop_structure_on_qmatrix<T: QRing>(lambda: &[u32], two_s: &[i64], window: usize, ctx: &T::Ctx) -> Result<LoopRep<T>> {
    if lambda.len() != two_s.len() || lambda.is_empty() {
        return Err(Error::Dimension("need one shift per row".into()));
    }
    let factors: Vec<(u32, T)> = lambda.iter().zip(two_s).map(|(&l, &t)| (l, T::q_pow(-t, ctx))).collect();
    tensor_evaluation(&factors, window, ctx)
}

/// `(q^{2s})^{(j)}`: the diagonal `prod_a q^{2 s_a m_{aj}}`.
pub fn shift_diag<T: QRing>(basis: &MonomialBasis, two_s: &[i64], column: usize, ctx: &T::Ctx) -> Mat<T> {
    let d = (0..basis.len())
        .map(|i| {
            let e: i64 = (0..basis.k).map(|a| two_s[a] * basis.entry(i, a, column) as i64).sum();
            T::q_pow(e, ctx)
        })
        .collect();
    Mat::diag(d, ctx)
}

/// The `U_h(gl_k)` R-matrix of `A_q(M_{k,1}) x A_q(M_{k,1})` (first column
/// times second column) restricted to the component `basis`.
pub fn r_matrix_on_component(basis: &MonomialBasis, rs: &RMatrices<RatFunc>) -> Result<Mat<RatFunc>> {
    if basis.n != 2 {
        return Err(Error::Dimension("the R-matrix splits two columns".into()));
    }
    let k = basis.k;
    let col = |i: usize, j: usize| -> Vec<u32> { (0..k).map(|a| basis.entry(i, a, j)).collect() };
    let mut out = Mat::zeros(basis.len(), basis.len(), &());
    for src in 0..basis.len() {
        let (c1, c2) = (col(src, 0), col(src, 1));
        let (a, b): (u32, u32) = (c1.iter().sum(), c2.iter().sum());
        if k == 1 {
            // U_h(gl_1): q^{D x D}
            out.set(src, src, RatFunc::q_pow((a * b) as i64));
            continue;
        }
        let ba = MonomialBasis::total_degree(k, 1, a);
        let bb = MonomialBasis::total_degree(k, 1, b);
        let r = rs.r(k, a, b)?;
        let from = ba.index_of(&c1).unwrap() * bb.len() + bb.index_of(&c2).unwrap();
        for (x, y) in (0..ba.len()).flat_map(|x| (0..bb.len()).map(move |y| (x, y))) {
            let v = r.get(x * bb.len() + y, from);
            if v.is_nil() {
                continue;
            }
            let mut e = vec![0; 2 * k];
            for aa in 0..k {
                e[2 * aa] = ba.exp(x)[aa];
                e[2 * aa + 1] = bb.exp(y)[aa];
            }
            let to = basis
                .index_of(&e)
                .ok_or_else(|| Error::Domain("R-matrix leaves the component".into()))?;
            out.set(to, src, v.clone());
        }
    }
    Ok(out)
}

/// `S = S_1 (-1)^{D_1}` of `U_h(gl_2)` acting on the columns of a component.
pub fn weyl_s_on_component<T: QRing>(basis: &MonomialBasis, ctx: &T::Ctx) -> Result<Mat<T>> {
    let e = gln_q_action::<T>(basis, QGen::E(0), ctx)?;
    let f = gln_q_action::<T>(basis, QGen::F(0), ctx)?;
    let d1: Vec<i64> = (0..basis.len()).map(|i| basis.col_degree(i, 0) as i64).collect();
    let h: Vec<i64> = (0..basis.len()).map(|i| d1[i] - basis.col_degree(i, 1) as i64).collect();
    let s1 = triple_exponential(&e, &f, &h, ctx)?;
    let sign = Mat::diag(d1.iter().map(|w| T::from_int(if w % 2 == 0 { 1 } else { -1 }, ctx)).collect(), ctx);
    Ok(s1.mul(&sign))
}

fn ad<T: QRing>(g: &Mat<T>, gi: &Mat<T>, x: &Mat<T>) -> Mat<T> {
    g.mul(x).mul(gi)
}

/// Every identity relating the `gl_k` R-matrix to the quantum Weyl group
/// operators of the loop algebra on the component with row degrees `lambda`.
/// The exact ones are checked over rational functions; the ones involving
/// `L_1, L_2` are checked modulo `h^order` with `r_max = order`.
pub fn verify_duality_identities(lambda: &[u32], two_s: &[i64], order: usize) -> Result<Vec<IdentityCheck>> {
    let basis = MonomialBasis::row_degrees(2, lambda);
    let rs = RMatrices::<RatFunc>::new(&());
    let r = r_matrix_on_component(&basis, &rs)?;
    let ri = r.try_inverse()?;
    let q1 = shift_diag::<RatFunc>(&basis, two_s, 0, &());
    let q2 = shift_diag::<RatFunc>(&basis, two_s, 1, &());
    let tau = flip_tau::<RatFunc>(&basis, &())?;
    let d1: Vec<i64> = (0..basis.len()).map(|i| basis.col_degree(i, 0) as i64).collect();
    let qd1 = Mat::diag(d1.iter().map(|&w| RatFunc::q_pow(-w)).collect(), &());
    let s = weyl_s_on_component::<RatFunc>(&basis, &())?;
    let mut out = vec![];

    out.push(IdentityCheck::compare("(1 2)R = S q^{-D_1}", &tau.mul(&r), &s.mul(&qd1)));

    let window = order.max(2);
    let exact = loop_structure_on_qmatrix::<RatFunc>(lambda, two_s, window, &())?;
    let same = gln_q_action::<RatFunc>(&basis, QGen::E(0), &())? == *exact.e(0)?
        && gln_q_action::<RatFunc>(&basis, QGen::F(0), &())? == *exact.f(0)?;
    out.push(IdentityCheck::new("loop structure shares the monomial basis", if same { 0.0 } else { 1.0 }));

    // (q^{2s})^{(1)} = q^{2 s_1 D_1} x .. x q^{2 s_k D_1}, read off the factors
    let mut tensor_q1 = Mat::identity(1, &());
    for (a, &l) in lambda.iter().enumerate() {
        let f = MonomialBasis::total_degree(1, 2, l);
        let dg = Mat::diag((0..f.len()).map(|i| RatFunc::q_pow(two_s[a] * f.entry(i, 0, 0) as i64)).collect(), &());
        tensor_q1 = tensor_q1.kron(&dg);
    }
    out.push(IdentityCheck::compare("(q^{2s})^{(1)} is a tensor product", &q1, &tensor_q1));

    // Ad((q^{2s})^{(1)} tau) X = Ad(q^{H/2}) omega(X)
    let (k1, ki) = (exact.k_pow(1), exact.k_pow(-1));
    let (qp, qm) = (RatFunc::q_pow(1), RatFunc::q_pow(-1));
    let g = q1.mul(&tau);
    let gi = g.try_inverse()?;
    let omega = [
        ("E_0", exact.e(0)?, ki.mul(exact.f(1)?).scale(&qm)),
        ("F_0", exact.f(0)?, exact.e(-1)?.mul(&k1).scale(&qp)),
        ("E_-1", exact.e(-1)?, exact.f(0)?.mul(&k1).scale(&qm)),
        ("F_1", exact.f(1)?, ki.mul(exact.e(0)?).scale(&qp)),
    ];
    for (name, x, want) in omega {
        out.push(IdentityCheck::compare(format!("Ad((q^{{2s}})^{{(1)}} tau) {name} = Ad(q^{{H/2}}) omega({name})"), &ad(&g, &gi, x), &want));
    }

    // Ad((q^{2s})^{(1)} R) acts on E(z), F(z) like L_1
    let g = q1.mul(&r);
    let gi = g.try_inverse()?;
    let mut worst: f64 = 0.0;
    let w = window as i64;
    for kk in -w + 1..w {
        worst = worst.max(ad(&g, &gi, exact.e(kk)?).sub(exact.e(kk - 1)?).max_magnitude());
        worst = worst.max(ad(&g, &gi, exact.f(kk)?).sub(exact.f(kk + 1)?).max_magnitude());
    }
    for kk in -w..=w {
        for j in 1..=2 {
            worst = worst.max(g.commutator(exact.d(j, kk)?).max_magnitude());
        }
    }
    out.push(IdentityCheck::new("Ad((q^{2s})^{(1)} R) = Ad(L_1) on loop generators", worst));

    // R Omega = Omega, Omega = X_11^{lambda_1} .. X_k1^{lambda_k} is the first basis vector
    let mut worst: f64 = 0.0;
    for i in 0..basis.len() {
        let want = if i == 0 { RatFunc::one() } else { RatFunc::zero() };
        worst = worst.max(r.get(i, 0).sub(&want).magnitude());
    }
    out.push(IdentityCheck::new("R Omega = Omega", worst));

    // braid relations of the realization b -> (1 2)R, L_1 -> (q^{2s})^{(1)} R, L_2 -> R^-1 (q^{2s})^{(2)}
    let b = tau.mul(&r);
    let l1 = q1.mul(&r);
    let l2 = ri.mul(&q2);
    out.push(IdentityCheck::compare("b L_2 b = L_1 through R", &b.mul(&l2).mul(&b), &l1));
    out.push(IdentityCheck::compare("L_1 L_2 = L_2 L_1 through R", &l1.mul(&l2), &l2.mul(&l1)));

    // the lattice operators, mod h^order
    let rep = loop_structure_on_qmatrix::<Series>(lambda, two_s, order, &order)?;
    let ops = lattice_operators(&rep, order)?;
    let emb = |m: &Mat<RatFunc>| m.convert(&order, |x| embed_q_series(x, order));
    let (l1s, l2s) = (emb(&l1)?, emb(&ri.mul(&q2))?);
    let qi = Mat::diag(
        (0..basis.len()).map(|i| Series::q_pow((basis.col_degree(i, 0) + basis.col_degree(i, 1)) as i64, &order)).collect(),
        &order,
    );
    out.push(IdentityCheck::compare("(q^{2s})^{(1)} R = L_1", &l1s, &ops.l1));
    out.push(IdentityCheck::compare("R^-1 (q^{2s})^{(2)} = L_2 q^I", &l2s, &ops.l2.mul(&qi)));
    let zl = lambda.iter().zip(two_s).map(|(&l, &t)| t * l as i64).sum::<i64>();
    let mut worst: f64 = 0.0;
    for i in 0..basis.len() {
        let want = if i == 0 { Series::q_pow(zl, &order) } else { Series::zero(order) };
        worst = worst.max(ops.l1.get(i, 0).sub(&want).magnitude());
    }
    out.push(IdentityCheck::new("L_1 Omega = prod zeta^-lambda Omega", worst));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RatFunc;

    #[test]
    fn lowering_on_a_square() {
        // F X_11^2 = [2] X_11 X_12 on the row module of degree 2
        let b = MonomialBasis::total_degree(1, 2, 2);
        let f = gln_q_action::<RatFunc>(&b, QGen::F(0), &()).unwrap();
        assert_eq!(f.get(1, 0).to_string(), "(q^2+1)/q");
    }

    #[test]
    fn raising_on_degree_one() {
        // E_1 X_21 = X_11 for k = 2, one column
        let b = MonomialBasis::total_degree(2, 1, 1);
        let e = glk_q_action::<RatFunc>(&b, QGen::E(0), &()).unwrap();
        let src = b.index_of(&[0, 1]).unwrap();
        let dst = b.index_of(&[1, 0]).unwrap();
        assert_eq!(*e.get(dst, src), RatFunc::one());
        assert!(glk_q_action::<RatFunc>(&b, QGen::E(1), &()).is_err());
    }

    #[test]
    fn flip_is_an_involution() {
        let b = MonomialBasis::row_degrees(2, &[2, 1]);
        let t = flip_tau::<RatFunc>(&b, &()).unwrap();
        assert_eq!(t.mul(&t), Mat::identity(b.len(), &()));
        let from = b.index_of(&[2, 0, 1, 0]).unwrap();
        let to = b.index_of(&[0, 2, 0, 1]).unwrap();
        assert_eq!(*t.get(to, from), RatFunc::one());
    }

    fn all_pass(checks: &[IdentityCheck]) {
        for c in checks {
            assert!(c.passed(), "{} residual {}", c.name, c.residual);
        }
    }

    #[test]
    fn duality_on_two_rows() {
        all_pass(&verify_duality_identities(&[1, 1], &[2, 6], 8).unwrap());
    }

    #[test]
    fn duality_on_unequal_rows() {
        all_pass(&verify_duality_identities(&[2, 1], &[1, -3], 5).unwrap());
    }

    #[test]
    fn duality_on_one_row() {
        for l in 0..=3 {
            all_pass(&verify_duality_identities(&[l], &[3], 4).unwrap());
        }
    }

    #[test]
    fn duality_on_three_rows() {
        all_pass(&verify_duality_identities(&[1, 1, 1], &[0, 2, -2], 4).unwrap());
    }

    #[test]
    fn the_r_matrix_is_needed() {
        // without R neither identity holds
        let basis = MonomialBasis::row_degrees(2, &[1, 1]);
        let tau = flip_tau::<RatFunc>(&basis, &()).unwrap();
        let s = weyl_s_on_component::<RatFunc>(&basis, &()).unwrap();
        let qd1 = Mat::diag((0..4).map(|i| RatFunc::q_pow(-(basis.col_degree(i, 0) as i64))).collect(), &());
        assert_ne!(tau, s.mul(&qd1));
        let rep = loop_structure_on_qmatrix::<Series>(&[1, 1], &[2, 6], 6, &6).unwrap();
        let ops = lattice_operators(&rep, 6).unwrap();
        let q1 = shift_diag::<Series>(&basis, &[2, 6], 0, &6);
        assert_ne!(q1, ops.l1);
        let checks = verify_duality_identities(&[1, 1], &[2, 6], 6).unwrap();
        assert!(checks.len() >= 12);
    }
}
