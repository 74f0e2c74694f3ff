//! The commuting `gl_k` and `gl_n` actions on polynomials in a `k x n` matrix
//! of variables, and the identities relating operators placed on column legs
//! with operators placed on row legs.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;

use crate::check::IdentityCheck;
use crate::coeff::Ring;
use crate::error::Result;
use crate::matrix::Mat;
use crate::monomial::MonomialBasis;

/// `E^{(k)}_{ab} = sum_j x_{aj} d/dx_{bj}`, rows mixing inside each column.
pub fn gl_k_op<T: Ring>(basis: &MonomialBasis, a: usize, b: usize, ctx: &T::Ctx) -> Result<Mat<T>> {
    let n = basis.n;
    let mut m: Mat<T> = Mat::zeros(basis.len(), basis.len(), ctx);
    for i in 0..basis.len() {
        for j in 0..n {
            let c = basis.entry(i, b, j);
            if c == 0 {
                continue;
            }
            let t = basis.shifted(i, a * n + j, b * n + j)?;
            let cur = m.get(t, i).add(&T::from_int(c as i64, ctx));
            m.set(t, i, cur);
        }
    }
    Ok(m)
}

/// `E^{(n)}_{ij} = sum_a x_{ai} d/dx_{aj}`, columns mixing inside each row.
pub fn gl_n_op<T: Ring>(basis: &MonomialBasis, i: usize, j: usize, ctx: &T::Ctx) -> Result<Mat<T>> {
    let n = basis.n;
    let mut m: Mat<T> = Mat::zeros(basis.len(), basis.len(), ctx);
    for s in 0..basis.len() {
        for a in 0..basis.k {
            let c = basis.entry(s, a, j);
            if c == 0 {
                continue;
            }
            let t = basis.shifted(s, a * n + i, a * n + j)?;
            let cur = m.get(t, s).add(&T::from_int(c as i64, ctx));
            m.set(t, s, cur);
        }
    }
    Ok(m)
}

/// Lazily built total-degree components, shared between threads.
#[derive(Default)]
pub struct ComponentCache {
    inner: RwLock<HashMap<(usize, usize, u32), Arc<MonomialBasis>>>,
}

impl ComponentCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize, n: usize, d: u32) -> Arc<MonomialBasis> {
        if let Some(b) = self.inner.read().unwrap().get(&(k, n, d)) {
            return b.clone();
        }
        let b = Arc::new(MonomialBasis::total_degree(k, n, d));
        self.inner.write().unwrap().entry((k, n, d)).or_insert(b).clone()
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// How a component of `C[M_{k,n}]` is read as a tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// `C[M_{k,1}]^{x n}`, one leg per column.
    Columns,
    /// `C[M_{1,n}]^{x k}`, one leg per row.
    Rows,
}

fn factor_exps(basis: &MonomialBasis, i: usize, split: Split, leg: usize) -> Vec<u32> {
    match split {
        Split::Columns => (0..basis.k).map(|a| basis.entry(i, a, leg)).collect(),
        Split::Rows => (0..basis.n).map(|j| basis.entry(i, leg, j)).collect(),
    }
}

/// Place a factor operator on one leg. `factor_op(fb)` must return the operator
/// on the factor component `fb` (a total-degree component of `C[M_{k,1}]` or
/// `C[M_{1,n}]`).
pub fn on_leg<T: Ring>(
    basis: &MonomialBasis,
    split: Split,
    leg: usize,
    ctx: &T::Ctx,
    factor_op: &dyn Fn(&MonomialBasis) -> Result<Mat<T>>,
) -> Result<Mat<T>> {
    let mut ops: HashMap<u32, (MonomialBasis, Mat<T>)> = HashMap::new();
    let mut out: Mat<T> = Mat::zeros(basis.len(), basis.len(), ctx);
    for i in 0..basis.len() {
        let f = factor_exps(basis, i, split, leg);
        let d: u32 = f.iter().sum();
        if !ops.contains_key(&d) {
            let fb = match split {
                Split::Columns => MonomialBasis::total_degree(basis.k, 1, d),
                Split::Rows => MonomialBasis::total_degree(1, basis.n, d),
            };
            let op = factor_op(&fb)?;
            ops.insert(d, (fb, op));
        }
        let (fb, op) = &ops[&d];
        let src = fb.index_of(&f).expect("factor monomial");
        for t in 0..fb.len() {
            let c = op.get(t, src);
            if c.is_nil() {
                continue;
            }
            let mut e = basis.exp(i).to_vec();
            for (p, v) in fb.exp(t).iter().enumerate() {
                let flat = match split {
                    Split::Columns => p * basis.n + leg,
                    Split::Rows => leg * basis.n + p,
                };
                e[flat] = *v;
            }
            let target = basis
                .index_of(&e)
                .ok_or_else(|| crate::Error::Domain("leg operator leaves the component".into()))?;
            out.set(target, i, out.get(target, i).add(c));
        }
    }
    Ok(out)
}

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::from_frac(n, d, &())
}

/// Column-leg versus row-leg identities on `C[M_{k,2}]`, every degree up to `d`.
pub fn verify_transfer(k: usize, d: u32) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![];
    let s: Vec<Q> = (0..k).map(|a| q(2 * a as i64 + 1, 3)).collect();
    for deg in 0..=d {
        let b = MonomialBasis::total_degree(k, 2, deg);
        let col = |leg: usize, a: usize, bb: usize| on_leg::<Q>(&b, Split::Columns, leg, &(), &|fb| gl_k_op(fb, a, bb, &()));
        let row = |leg: usize, i: usize, j: usize| on_leg::<Q>(&b, Split::Rows, leg, &(), &|fb| gl_n_op(fb, i, j, &()));
        let mut push = |name: &str, lhs: Mat<Q>, rhs: Mat<Q>| {
            out.push(IdentityCheck::compare(format!("{name} [degree {deg}]"), &lhs, &rhs));
        };

        // Cartan elements agree leg by leg
        let mut worst_l = Mat::zeros(b.len(), b.len(), &());
        let mut worst_r = Mat::zeros(b.len(), b.len(), &());
        for a in 0..k {
            for i in 0..2 {
                let l = col(i, a, a)?;
                let r = row(a, i, i)?;
                if l != r {
                    worst_l = l;
                    worst_r = r;
                }
            }
        }
        push("cartan-transfer", worst_l, worst_r);

        // the classical r-matrix on the two columns
        let mut r_cols = Mat::zeros(b.len(), b.len(), &());
        let mut r21 = Mat::zeros(b.len(), b.len(), &());
        for a in 0..k {
            let aa = col(0, a, a)?.mul(&col(1, a, a)?).scale(&q(1, 2));
            r_cols = r_cols.add(&aa);
            r21 = r21.add(&aa);
            for c in a + 1..k {
                r_cols = r_cols.add(&col(0, a, c)?.mul(&col(1, c, a)?));
                r21 = r21.add(&col(0, c, a)?.mul(&col(1, a, c)?));
            }
        }
        let mut r_rows = Mat::zeros(b.len(), b.len(), &());
        for a in 0..k {
            r_rows = r_rows.add(&row(a, 0, 0)?.mul(&row(a, 1, 1)?).scale(&q(1, 2)));
            for c in a + 1..k {
                r_rows = r_rows.add(&row(a, 0, 1)?.mul(&row(c, 1, 0)?));
            }
        }
        push("r-matrix-transfer", r_cols.clone(), r_rows);

        // 2 Omega = Delta(kappa - I)
        let sum_rows = |i: usize, j: usize| -> Result<Mat<Q>> {
            let mut acc = Mat::zeros(b.len(), b.len(), &());
            for a in 0..k {
                acc = acc.add(&row(a, i, j)?);
            }
            Ok(acc)
        };
        let (e12, e21) = (sum_rows(0, 1)?, sum_rows(1, 0)?);
        let kappa = e12.mul(&e21).add(&e21.mul(&e12));
        let id = sum_rows(0, 0)?.add(&sum_rows(1, 1)?);
        let omega = r_cols.add(&r21);
        push("casimir-transfer", omega.scale(&q(2, 1)), kappa.sub(&id));
        // the coproduct of E_ij computed leg by leg is the global operator
        push("coproduct-is-global", e12, gl_n_op(&b, 0, 1, &())?);

        // s on column i equals sum_a s_a (E_ii) on row a
        for i in 0..2 {
            let mut lhs = Mat::zeros(b.len(), b.len(), &());
            let mut rhs = Mat::zeros(b.len(), b.len(), &());
            for a in 0..k {
                lhs = lhs.add(&col(i, a, a)?.scale(&s[a]));
                rhs = rhs.add(&row(a, i, i)?.scale(&s[a]));
            }
            push(&format!("shift-transfer-{}", i + 1), lhs, rhs);
        }
    }
    Ok(out)
}

/// Commutation relations of both families and their mutual commutation on the
/// total-degree components of `C[M_{k,n}]` up to degree `d`.
pub fn verify_dual_pair(k: usize, n: usize, d: u32, cache: &ComponentCache) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![];
    for deg in 0..=d {
        let b = cache.get(k, n, deg);
        let ek: Vec<Vec<Mat<Q>>> =
            (0..k).map(|a| (0..k).map(|c| gl_k_op(&b, a, c, &())).collect::<Result<_>>()).collect::<Result<_>>()?;
        let en: Vec<Vec<Mat<Q>>> =
            (0..n).map(|i| (0..n).map(|j| gl_n_op(&b, i, j, &())).collect::<Result<_>>()).collect::<Result<_>>()?;
        let zero = Mat::<Q>::zeros(b.len(), b.len(), &());
        let relations = |e: &Vec<Vec<Mat<Q>>>| {
            let m = e.len();
            let mut worst: f64 = 0.0;
            for a in 0..m {
                for bb in 0..m {
                    for c in 0..m {
                        for dd in 0..m {
                            let mut rhs = zero.clone();
                            if bb == c {
                                rhs = rhs.add(&e[a][dd]);
                            }
                            if dd == a {
                                rhs = rhs.sub(&e[c][bb]);
                            }
                            worst = worst.max(e[a][bb].commutator(&e[c][dd]).sub(&rhs).max_magnitude());
                        }
                    }
                }
            }
            worst
        };
        out.push(IdentityCheck::new(format!("gl_k relations [degree {deg}]"), relations(&ek)));
        out.push(IdentityCheck::new(format!("gl_n relations [degree {deg}]"), relations(&en)));
        let mut worst: f64 = 0.0;
        for x in ek.iter().flatten() {
            for y in en.iter().flatten() {
                worst = worst.max(x.commutator(y).max_magnitude());
            }
        }
        out.push(IdentityCheck::new(format!("actions commute [degree {deg}]"), worst));
    }
    Ok(out)
}

/// `E_12 E_21 + E_21 E_12 = I + 2 E_11 E_22` on `C[M_{1,2}]` up to degree `d`.
/// Here `I = E_11 + E_22` is the identity of `gl_2`, acting by the degree.
pub fn verify_internal_kappa(d: u32) -> Result<Vec<IdentityCheck>> {
    let mut out = vec![];
    for deg in 0..=d {
        let b = MonomialBasis::total_degree(1, 2, deg);
        let e = |i, j| gl_n_op::<Q>(&b, i, j, &());
        let kappa = e(0, 1)?.mul(&e(1, 0)?).add(&e(1, 0)?.mul(&e(0, 1)?));
        let id = e(0, 0)?.add(&e(1, 1)?);
        let rhs = id.add(&e(0, 0)?.mul(&e(1, 1)?).scale(&q(2, 1)));
        out.push(IdentityCheck::compare(format!("internal kappa [degree {deg}]"), &kappa, &rhs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transfer_identities_small() {
        for c in verify_transfer(2, 3).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn dual_pair_relations() {
        let cache = ComponentCache::new();
        for c in verify_dual_pair(2, 3, 2, &cache).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(cache.len(), 3);
    }

    #[test]
    fn kappa_on_rows() {
        assert!(verify_internal_kappa(5).unwrap().iter().all(|c| c.passed()));
    }

    #[test]
    fn raising_operator_on_two_variables() {
        // E_12 = x1 d/dx2 sends x2^2 to 2 x1 x2
        let b = MonomialBasis::total_degree(1, 2, 2);
        let e12 = gl_n_op::<Q>(&b, 0, 1, &()).unwrap();
        assert_eq!(*e12.get(1, 2), q(2, 1));
        assert!(e12.get(0, 1) == &q(1, 1));
    }

    #[test]
    fn a_broken_identity_is_caught() {
        // dropping the 1/2 in the Cartan part of r must make the transfer fail
        let b = MonomialBasis::total_degree(2, 2, 2);
        let col = |leg: usize, a: usize| on_leg::<Q>(&b, Split::Columns, leg, &(), &|fb| gl_k_op(fb, a, a, &())).unwrap();
        let row = |leg: usize| on_leg::<Q>(&b, Split::Rows, leg, &(), &|fb| gl_n_op(fb, 0, 0, &())).unwrap();
        let full = col(0, 0).mul(&col(1, 0));
        let wrong = row(0).mul(&row(0));
        assert!(!full.sub(&wrong).is_zero());
    }
}
