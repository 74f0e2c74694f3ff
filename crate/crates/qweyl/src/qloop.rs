//! Evaluation modules of the quantum loop algebra of `gl_2` and their tensor
//! products. Only `E_0, F_0, E_{-1}, F_1`, the Cartan weights and the quantum
//! determinant are given; every other loop generator is reconstructed inside a
//! finite level window.

use std::collections::BTreeMap;

use crate::check::IdentityCheck;
use crate::coeff::{q_integer, QRing, Ring};
use crate::error::{Error, Result};
use crate::matrix::{mat_exp, matrix_series_exp, matrix_series_scaled_log, Mat};
use crate::uq::{graded_module_from_qmatrix, triple_exponential, Line};

/// The data a representation has to supply.
#[derive(Clone, Debug)]
pub struct LoopBase<T: QRing> {
    /// `(D_{1,0}, D_{2,0})` eigenvalues per basis vector.
    pub weights: Vec<[i64; 2]>,
    pub e0: Mat<T>,
    pub f0: Mat<T>,
    pub e_m1: Mat<T>,
    pub f1: Mat<T>,
    /// `q^{-I} qdet^+(z) = 1 + (q - q^-1) sum_{r>=1} qdet_plus[r-1] z^-r`.
    pub qdet_plus: Vec<Mat<T>>,
    /// `q^{I} qdet^-(z) = 1 + (q - q^-1) sum_{r>=1} qdet_minus[r-1] z^r`.
    pub qdet_minus: Vec<Mat<T>>,
    /// `(lambda, zeta)` of each evaluation factor, in tensor order.
    pub factors: Vec<(u32, T)>,
    pub ctx: T::Ctx,
}

impl<T: QRing> LoopBase<T> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn q_diag(&self, f: impl Fn(&[i64; 2]) -> i64) -> Mat<T> {
        Mat::diag(self.weights.iter().map(|w| T::q_pow(f(w), &self.ctx)).collect(), &self.ctx)
    }

    /// `K^n = q^{n H_0}`.
    pub fn k_pow(&self, n: i64) -> Mat<T> {
        self.q_diag(|w| n * (w[0] - w[1]))
    }
}

/// `q - q^-1`.
pub fn q_gap<T: QRing>(ctx: &T::Ctx) -> T {
    T::q(ctx).sub(&T::q_pow(-1, ctx))
}

/// `V_lambda(zeta)`: `E_{-1} -> q zeta^-1 K^-1 E`, `F_1 -> q^-1 zeta F K`, and
/// `qdet^+(z) -> q^I (z - q^-I zeta)/(z - q^I zeta)`.
pub fn evaluation_base<T: QRing>(lambda: u32, zeta: &T, levels: usize, ctx: &T::Ctx) -> Result<LoopBase<T>> {
    let zi = zeta.try_inv().ok_or_else(|| Error::Domain("evaluation point is not invertible".into()))?;
    let m = graded_module_from_qmatrix::<T>(2, lambda, Line::Row, ctx)?;
    let weights: Vec<[i64; 2]> = m.weights.iter().map(|w| [w[0], w[1]]).collect();
    let k = m.k_pow(0, 1);
    let ki = m.k_pow(0, -1);
    let e = m.e[0].clone();
    let f = m.f[0].clone();
    let q = T::q(ctx);
    let qi = T::q_pow(-1, ctx);
    let e_m1 = ki.mul(&e).scale(&q.mul(&zi));
    let f1 = f.mul(&k).scale(&qi.mul(zeta));
    let l = lambda as i64;
    let ql = q_integer::<T>(l, ctx);
    let id = Mat::identity(m.dim(), ctx);
    let mut qdet_plus = vec![];
    let mut qdet_minus = vec![];
    for r in 1..=levels as i64 {
        // q^{lambda(r-1)} [lambda] zeta^r and -q^{-lambda(r-1)} [lambda] zeta^-r
        let p = T::q_pow(l * (r - 1), ctx).mul(&ql).mul(&zeta.pow_u(r as u32, ctx));
        let n = T::q_pow(-l * (r - 1), ctx).mul(&ql).mul(&zi.pow_u(r as u32, ctx)).negate();
        qdet_plus.push(id.scale(&p));
        qdet_minus.push(id.scale(&n));
    }
    Ok(LoopBase { weights, e0: e, f0: f, e_m1, f1, qdet_plus, qdet_minus, factors: vec![(lambda, zeta.clone())], ctx: ctx.clone() })
}

/// `(1 + cX(z)) x (1 + cY(z)) = 1 + c(X x 1 + 1 x Y + c X x Y)` coefficientwise.
fn grouplike_product<T: QRing>(x: &[Mat<T>], y: &[Mat<T>], dx: usize, dy: usize, ctx: &T::Ctx) -> Vec<Mat<T>> {
    let c = q_gap::<T>(ctx);
    let ix = Mat::identity(dx, ctx);
    let iy = Mat::identity(dy, ctx);
    let n = x.len().min(y.len());
    (0..n)
        .map(|r| {
            let mut acc = x[r].kron(&iy).add(&ix.kron(&y[r]));
            // z^-(i+1) z^-(j+1) with i + j + 2 = r + 1
            for i in 0..r {
                let j = r - 1 - i;
                acc = acc.add(&x[i].kron(&y[j]).scale(&c));
            }
            acc
        })
        .collect()
}

/// Tensor product of bases through the coproduct.
pub fn tensor_base<T: QRing>(a: &LoopBase<T>, b: &LoopBase<T>) -> Result<LoopBase<T>> {
    if a.ctx != b.ctx {
        return Err(Error::Dimension("tensor factors live over different rings".into()));
    }
    let ctx = &a.ctx;
    let (ia, ib) = (Mat::identity(a.dim(), ctx), Mat::identity(b.dim(), ctx));
    let mut weights = vec![];
    for x in &a.weights {
        for y in &b.weights {
            weights.push([x[0] + y[0], x[1] + y[1]]);
        }
    }
    let e0 = a.e0.kron(&b.k_pow(1)).add(&ia.kron(&b.e0));
    let f0 = a.f0.kron(&ib).add(&a.k_pow(-1).kron(&b.f0));
    let e_m1 = a.e_m1.kron(&b.k_pow(-1)).add(&ia.kron(&b.e_m1));
    let f1 = a.f1.kron(&ib).add(&a.k_pow(1).kron(&b.f1));
    let qdet_plus = grouplike_product(&a.qdet_plus, &b.qdet_plus, a.dim(), b.dim(), ctx);
    let qdet_minus = grouplike_product(&a.qdet_minus, &b.qdet_minus, a.dim(), b.dim(), ctx);
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().cloned());
    Ok(LoopBase { weights, e0, f0, e_m1, f1, qdet_plus, qdet_minus, factors, ctx: ctx.clone() })
}

/// A representation with all generators inside the window `|r| <= R`.
#[derive(Clone, Debug)]
pub struct LoopRep<T: QRing> {
    pub base: LoopBase<T>,
    pub window: usize,
    e: BTreeMap<i64, Mat<T>>,
    f: BTreeMap<i64, Mat<T>>,
    h: BTreeMap<i64, Mat<T>>,
    d1: BTreeMap<i64, Mat<T>>,
    d2: BTreeMap<i64, Mat<T>>,
    z: BTreeMap<i64, Mat<T>>,
    /// `theta[(j, plus)][n]` is the coefficient of `z^{-n}` (plus) or `z^n` (minus).
    theta: BTreeMap<(usize, bool), Vec<Mat<T>>>,
}

fn get<'a, T: Ring>(m: &'a BTreeMap<i64, Mat<T>>, k: i64, what: &str) -> Result<&'a Mat<T>> {
    m.get(&k).ok_or_else(|| Error::Domain(format!("{what}_{k} is outside the level window")))
}

impl<T: QRing> LoopRep<T> {
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.base.ctx
    }

    pub fn e(&self, k: i64) -> Result<&Mat<T>> {
        get(&self.e, k, "E")
    }

    pub fn f(&self, k: i64) -> Result<&Mat<T>> {
        get(&self.f, k, "F")
    }

    /// `H_r`, with `H_0 = D_{1,0} - D_{2,0}`.
    pub fn h(&self, r: i64) -> Result<&Mat<T>> {
        get(&self.h, r, "H")
    }

    /// `D_{j,r}` for `j = 1, 2`.
    pub fn d(&self, j: usize, r: i64) -> Result<&Mat<T>> {
        match j {
            1 => get(&self.d1, r, "D_1"),
            2 => get(&self.d2, r, "D_2"),
            _ => Err(Error::Domain(format!("D_{j} does not exist"))),
        }
    }

    /// Central `q^r D_{1,r} + q^-r D_{2,r}`, read off the quantum determinant.
    pub fn central(&self, r: i64) -> Result<&Mat<T>> {
        get(&self.z, r, "z")
    }

    pub fn theta(&self, j: usize, plus: bool) -> &[Mat<T>] {
        &self.theta[&(j, plus)]
    }

    pub fn k_pow(&self, n: i64) -> Mat<T> {
        self.base.k_pow(n)
    }

    /// `psi^+_r` for `r >= 0` and `psi^-_r` for `r <= 0`, zero otherwise.
    pub fn psi(&self, plus: bool, r: i64) -> Result<Mat<T>> {
        let ctx = self.ctx();
        let n = self.dim();
        match (plus, r) {
            (true, 0) => Ok(self.k_pow(1)),
            (false, 0) => Ok(self.k_pow(-1)),
            (true, r) if r < 0 => Ok(Mat::zeros(n, n, ctx)),
            (false, r) if r > 0 => Ok(Mat::zeros(n, n, ctx)),
            (true, r) => Ok(self.e(r)?.commutator(self.f(0)?).scale(&q_gap::<T>(ctx))),
            (false, r) => Ok(self.e(r)?.commutator(self.f(0)?).scale(&q_gap::<T>(ctx).negate())),
        }
    }

    /// `(-1)^I` with `I = D_{1,0} + D_{2,0}`.
    pub fn sign_of_total(&self) -> Mat<T> {
        let ctx = self.ctx();
        Mat::diag(
            self.base.weights.iter().map(|w| T::from_int(if (w[0] + w[1]) % 2 == 0 { 1 } else { -1 }, ctx)).collect(),
            ctx,
        )
    }

    /// `(-1)^{D_1}`.
    pub fn sign_of_d1(&self) -> Mat<T> {
        let ctx = self.ctx();
        Mat::diag(self.base.weights.iter().map(|w| T::from_int(if w[0] % 2 == 0 { 1 } else { -1 }, ctx)).collect(), ctx)
    }

    pub fn h0_weights(&self) -> Vec<i64> {
        self.base.weights.iter().map(|w| w[0] - w[1]).collect()
    }
}

/// Reconstruct every generator with `|r| <= window`.
///
/// `H_1 = K^-1 [E_0, F_1]` and `H_-1 = K [E_-1, F_0]` drive the ladders
/// `E_{k+-1} = [2]^-1 [H_{+-1}, E_k]`, `F_{k+-1} = -[2]^-1 [H_{+-1}, F_k]`.
/// The remaining `H_r` come from the logarithm of `psi`, and `D_{j,r}` from
/// splitting `H_r` against the central series of the quantum determinant.
pub fn derive_loop_generators<T: QRing>(base: LoopBase<T>, window: usize) -> Result<LoopRep<T>> {
    if window < 1 {
        return Err(Error::Domain("the level window must be at least 1".into()));
    }
    if base.qdet_plus.len() < window || base.qdet_minus.len() < window {
        return Err(Error::Domain("quantum determinant data is shorter than the window".into()));
    }
    let ctx = base.ctx.clone();
    let rr = window as i64;
    let c = q_gap::<T>(&ctx);
    let k = base.k_pow(1);
    let ki = base.k_pow(-1);
    let two_inv = q_integer::<T>(2, &ctx).try_inv().ok_or_else(|| Error::Domain("[2] vanishes".into()))?;
    let h1 = ki.mul(&base.e0.commutator(&base.f1));
    let hm1 = k.mul(&base.e_m1.commutator(&base.f0));

    let mut e = BTreeMap::new();
    let mut f = BTreeMap::new();
    e.insert(0, base.e0.clone());
    e.insert(-1, base.e_m1.clone());
    f.insert(0, base.f0.clone());
    f.insert(1, base.f1.clone());
    for j in 0..rr {
        let up = h1.commutator(&e[&j]).scale(&two_inv);
        e.insert(j + 1, up);
    }
    for j in (-rr + 1..=-1).rev() {
        let down = hm1.commutator(&e[&j]).scale(&two_inv);
        e.insert(j - 1, down);
    }
    for j in 1..rr {
        let up = h1.commutator(&f[&j]).scale(&two_inv).neg();
        f.insert(j + 1, up);
    }
    for j in (-rr + 1..=0).rev() {
        let down = hm1.commutator(&f[&j]).scale(&two_inv).neg();
        f.insert(j - 1, down);
    }

    // K^-1 psi^+(z) = 1 + c sum X_r z^-r and K psi^-(z) = 1 + c sum Y_r z^r
    let x: Vec<Mat<T>> = (1..=rr).map(|r| ki.mul(&e[&r].commutator(&f[&0]))).collect();
    let y: Vec<Mat<T>> = (1..=rr).map(|r| k.mul(&e[&-r].commutator(&f[&0])).neg()).collect();
    let hp = matrix_series_scaled_log(&x, &c);
    let hn = matrix_series_scaled_log(&y, &c);
    let zp = matrix_series_scaled_log(&base.qdet_plus[..window], &c);
    let zn = matrix_series_scaled_log(&base.qdet_minus[..window], &c);

    let mut h = BTreeMap::new();
    let mut z = BTreeMap::new();
    let d10 = Mat::diag(base.weights.iter().map(|w| T::from_int(w[0], &ctx)).collect(), &ctx);
    let d20 = Mat::diag(base.weights.iter().map(|w| T::from_int(w[1], &ctx)).collect(), &ctx);
    h.insert(0, d10.sub(&d20));
    let mut d1 = BTreeMap::new();
    let mut d2 = BTreeMap::new();
    d1.insert(0, d10);
    d2.insert(0, d20);
    for r in 1..=rr {
        let i = (r - 1) as usize;
        h.insert(r, hp[i].clone());
        h.insert(-r, hn[i].neg());
        z.insert(r, zp[i].clone());
        z.insert(-r, zn[i].neg());
        let qr = T::q_pow(r, &ctx);
        let qmr = T::q_pow(-r, &ctx);
        let s = qr
            .add(&qmr)
            .try_inv()
            .ok_or_else(|| Error::Domain(format!("q^{r} + q^-{r} vanishes; this q is degenerate")))?;
        // H = D_1 - D_2 and z = q^r D_1 + q^-r D_2 (q^{-r} D_1 + q^r D_2 for -r)
        d1.insert(r, z[&r].add(&h[&r].scale(&qmr)).scale(&s));
        d2.insert(r, z[&r].sub(&h[&r].scale(&qr)).scale(&s));
        d1.insert(-r, z[&-r].add(&h[&-r].scale(&qr)).scale(&s));
        d2.insert(-r, z[&-r].sub(&h[&-r].scale(&qmr)).scale(&s));
    }

    let mut theta = BTreeMap::new();
    for j in 1..=2usize {
        let dj = if j == 1 { &d1 } else { &d2 };
        let w0 = |sgn: i64| base.q_diag(|w| sgn * w[j - 1]);
        for plus in [true, false] {
            let sgn = if plus { 1 } else { -1 };
            let logs: Vec<Mat<T>> = (1..=rr).map(|r| dj[&(sgn * r)].scale(&c).scale(&T::from_int(sgn, &ctx))).collect();
            let ex = matrix_series_exp(&logs);
            let lead = w0(sgn);
            let mut coeffs = vec![lead.clone()];
            coeffs.extend(ex.iter().map(|m| lead.mul(m)));
            theta.insert((j, plus), coeffs);
        }
    }
    Ok(LoopRep { base, window, e, f, h, d1, d2, z, theta })
}

/// `V_lambda(zeta)` with generators derived up to `window`.
pub fn evaluation_rep<T: QRing>(lambda: u32, zeta: &T, window: usize, ctx: &T::Ctx) -> Result<LoopRep<T>> {
    derive_loop_generators(evaluation_base(lambda, zeta, window, ctx)?, window)
}

/// Tensor product of evaluation modules `V_{lambda_a}(zeta_a)`.
pub fn tensor_evaluation<T: QRing>(factors: &[(u32, T)], window: usize, ctx: &T::Ctx) -> Result<LoopRep<T>> {
    let mut it = factors.iter();
    let (l, z) = it.next().ok_or_else(|| Error::Domain("no evaluation factors".into()))?;
    let mut base = evaluation_base(*l, z, window, ctx)?;
    for (l, z) in it {
        base = tensor_base(&base, &evaluation_base(*l, z, window, ctx)?)?;
    }
    derive_loop_generators(base, window)
}

/// Tensor product of already derived representations, rederived at the
/// smallest window among them.
pub fn tensor_loop<T: QRing>(reps: &[&LoopRep<T>]) -> Result<LoopRep<T>> {
    let first = reps.first().ok_or_else(|| Error::Domain("empty tensor product".into()))?;
    let window = reps.iter().map(|r| r.window).min().unwrap();
    let mut base = first.base.clone();
    for r in &reps[1..] {
        base = tensor_base(&base, &r.base)?;
    }
    derive_loop_generators(base, window)
}

/// Coefficients `theta_n` of `theta_m(q^{shift} z/w)` expanded around `z = infinity`
/// (`plus`) or `z = 0`, in the convention `sum_n theta_n (w/z)^n` resp. `(z/w)^n`.
/// Only the four cases appearing in the relations are needed; each is
/// `(leading, rest)` with every higher coefficient equal to `rest`.
fn conjugation_coefficients<T: QRing>(j: usize, plus: bool, ctx: &T::Ctx) -> (T, T) {
    let q = T::q(ctx);
    let qi = T::q_pow(-1, ctx);
    let c = q_gap::<T>(ctx);
    match (j, plus) {
        (1, true) | (2, false) => (q, c),
        _ => (qi, c.negate()),
    }
}

/// Inverse of `lead * exp(...)` as a coefficient list.
fn theta_inverse<T: QRing>(rep: &LoopRep<T>, j: usize, plus: bool) -> Result<Vec<Mat<T>>> {
    let th = rep.theta(j, plus);
    let ctx = rep.ctx();
    let lead_inv = th[0].try_inverse()?;
    // solve (sum th_n z^n)(sum u_n z^n) = 1 recursively
    let mut u = vec![lead_inv.clone()];
    for n in 1..th.len() {
        let mut acc = Mat::zeros(rep.dim(), rep.dim(), ctx);
        for i in 1..=n {
            acc = acc.add(&th[i].mul(&u[n - i]));
        }
        u.push(lead_inv.mul(&acc).neg());
    }
    Ok(u)
}

/// The defining relations within the window, and the commutation table with
/// the Cartan loop generators.
pub fn check_loop_relations<T: QRing>(rep: &LoopRep<T>) -> Result<Vec<IdentityCheck>> {
    let ctx = rep.ctx().clone();
    let rr = rep.window as i64;
    let n = rep.dim();
    let c = q_gap::<T>(&ctx);
    let q2 = T::q_pow(2, &ctx);
    let mut out = vec![];
    let worst = |acc: &mut f64, m: Mat<T>| *acc = acc.max(m.max_magnitude());

    // commuting Cartan series
    let mut w = 0.0;
    let cartan: Vec<&Mat<T>> = rep.d1.values().chain(rep.d2.values()).collect();
    for a in &cartan {
        for b in &cartan {
            worst(&mut w, a.commutator(b));
        }
    }
    out.push(IdentityCheck::new("the D_{j,r} commute", w));

    // Theta against E and F, coefficientwise
    let mut w = 0.0;
    for j in 1..=2 {
        for plus in [true, false] {
            let th = rep.theta(j, plus);
            let inv = theta_inverse(rep, j, plus)?;
            let (lead, rest) = conjugation_coefficients::<T>(j, plus, &ctx);
            let dir = if plus { 1 } else { -1 };
            for k in -rr..=rr {
                for m in 0..=rr {
                    let target = k + dir * m;
                    if target.abs() > rr {
                        continue;
                    }
                    let coef = if m == 0 { lead.clone() } else { rest.clone() };
                    let mut lhs_e = Mat::zeros(n, n, &ctx);
                    let mut lhs_f = Mat::zeros(n, n, &ctx);
                    for s in 0..=m as usize {
                        let t = m as usize - s;
                        lhs_e = lhs_e.add(&th[s].mul(rep.e(k)?).mul(&inv[t]));
                        lhs_f = lhs_f.add(&inv[s].mul(rep.f(k)?).mul(&th[t]));
                    }
                    worst(&mut w, lhs_e.sub(&rep.e(target)?.scale(&coef)));
                    worst(&mut w, lhs_f.sub(&rep.f(target)?.scale(&coef)));
                }
            }
        }
    }
    out.push(IdentityCheck::new("Theta conjugates E(w) and F(w)", w));

    // E-E and F-F exchange
    let mut w = 0.0;
    for a in -rr..rr {
        for b in -rr..rr {
            let (ea, ea1, eb, eb1) = (rep.e(a)?, rep.e(a + 1)?, rep.e(b)?, rep.e(b + 1)?);
            let lhs = ea1.mul(eb).sub(&ea.mul(eb1).scale(&q2));
            let rhs = eb.mul(ea1).scale(&q2).sub(&eb1.mul(ea));
            worst(&mut w, lhs.sub(&rhs));
            let (fa, fa1, fb, fb1) = (rep.f(a)?, rep.f(a + 1)?, rep.f(b)?, rep.f(b + 1)?);
            let lhs = fa1.mul(fb).scale(&q2).sub(&fa.mul(fb1));
            let rhs = fb.mul(fa1).sub(&fb1.mul(fa).scale(&q2));
            worst(&mut w, lhs.sub(&rhs));
        }
    }
    out.push(IdentityCheck::new("exchange relations of E(z) and F(z)", w));

    // E-F commutator
    let mut w = 0.0;
    for k in -rr..=rr {
        for l in -rr..=rr {
            if (k + l).abs() > rr {
                continue;
            }
            let lhs = rep.e(k)?.commutator(rep.f(l)?).scale(&c);
            let rhs = rep.psi(true, k + l)?.sub(&rep.psi(false, k + l)?);
            worst(&mut w, lhs.sub(&rhs));
        }
    }
    out.push(IdentityCheck::new("(q - q^-1)[E_k, F_l] = psi^+ - psi^-", w));

    // commutation table
    let mut w = 0.0;
    for k in -rr..=rr {
        let (ek, fk) = (rep.e(k)?, rep.f(k)?);
        worst(&mut w, rep.d(1, 0)?.commutator(ek).sub(ek));
        worst(&mut w, rep.d(2, 0)?.commutator(ek).add(ek));
        worst(&mut w, rep.d(1, 0)?.commutator(fk).add(fk));
        worst(&mut w, rep.d(2, 0)?.commutator(fk).sub(fk));
        let two = T::from_int(2, &ctx);
        worst(&mut w, rep.h(0)?.commutator(ek).sub(&ek.scale(&two)));
        worst(&mut w, rep.h(0)?.commutator(fk).add(&fk.scale(&two)));
        for r in -rr..=rr {
            if r == 0 || (k + r).abs() > rr {
                continue;
            }
            let rt = T::from_int(r, &ctx);
            let a = q_integer::<T>(r, &ctx).try_div(&rt).unwrap();
            let b = q_integer::<T>(2 * r, &ctx).try_div(&rt).unwrap();
            let (ekr, fkr) = (rep.e(k + r)?, rep.f(k + r)?);
            let qm = T::q_pow(-r, &ctx).mul(&a);
            let qp = T::q_pow(r, &ctx).mul(&a);
            worst(&mut w, rep.d(1, r)?.commutator(ek).sub(&ekr.scale(&qm)));
            worst(&mut w, rep.d(2, r)?.commutator(ek).add(&ekr.scale(&qp)));
            worst(&mut w, rep.d(1, r)?.commutator(fk).add(&fkr.scale(&qm)));
            worst(&mut w, rep.d(2, r)?.commutator(fk).sub(&fkr.scale(&qp)));
            worst(&mut w, rep.h(r)?.commutator(ek).sub(&ekr.scale(&b)));
            worst(&mut w, rep.h(r)?.commutator(fk).add(&fkr.scale(&b)));
        }
    }
    out.push(IdentityCheck::new("commutation table of D_{j,r} and H_r with E_k, F_k", w));

    // H_r = D_{1,r} - D_{2,r} and centrality
    let mut w = 0.0;
    let mut wz = 0.0;
    for r in -rr..=rr {
        worst(&mut w, rep.d(1, r)?.sub(rep.d(2, r)?).sub(rep.h(r)?));
        if r == 0 {
            continue;
        }
        let (qa, qb) = (T::q_pow(r, &ctx), T::q_pow(-r, &ctx));
        let zr = rep.d(1, r)?.scale(&qa).add(&rep.d(2, r)?.scale(&qb));
        for k in -rr..=rr {
            worst(&mut wz, zr.commutator(rep.e(k)?));
            worst(&mut wz, zr.commutator(rep.f(k)?));
        }
    }
    out.push(IdentityCheck::new("H_r = D_{1,r} - D_{2,r}", w));
    out.push(IdentityCheck::new("q^r D_{1,r} + q^-r D_{2,r} is central", wz));

    // qdet(z) = Theta_1(q^-1 z) Theta_2(q z), coefficientwise
    let mut w = 0.0;
    let total: Vec<i64> = rep.base.weights.iter().map(|x| x[0] + x[1]).collect();
    for plus in [true, false] {
        let sgn = if plus { 1 } else { -1 };
        let t1 = rep.theta(1, plus);
        let t2 = rep.theta(2, plus);
        let lead = Mat::diag(total.iter().map(|&i| T::q_pow(sgn * i, &ctx)).collect(), &ctx);
        let series = if plus { &rep.base.qdet_plus } else { &rep.base.qdet_minus };
        for m in 0..=rr as usize {
            let mut lhs = Mat::zeros(n, n, &ctx);
            for s in 0..=m {
                let t = m - s;
                // Theta_1^+(q^-1 z): z^-s picks q^s; Theta_1^-(q^-1 z): z^s picks q^-s
                let f1 = T::q_pow(sgn * s as i64, &ctx);
                let f2 = T::q_pow(-sgn * t as i64, &ctx);
                lhs = lhs.add(&t1[s].mul(&t2[t]).scale(&f1.mul(&f2)));
            }
            let rhs = if m == 0 { lead.clone() } else { lead.mul(&series[m - 1]).scale(&c) };
            worst(&mut w, lhs.sub(&rhs));
        }
    }
    out.push(IdentityCheck::new("qdet(z) = Theta_1(q^-1 z) Theta_2(q z)", w));
    Ok(out)
}

/// `[r]/r sum_a zeta_a^{+-r}` on tensor products of `V_1(zeta_a)`, against the
/// central elements derived from the quantum determinant.
pub fn check_central_power_sums<T: QRing>(rep: &LoopRep<T>) -> Result<Vec<IdentityCheck>> {
    let ctx = rep.ctx().clone();
    let mut out = vec![];
    if rep.base.factors.iter().any(|(l, _)| *l != 1) {
        return Err(Error::Domain("power sums are stated for two dimensional factors".into()));
    }
    for r in 1..=rep.window as i64 {
        for sgn in [1i64, -1] {
            let mut sum = T::zero_in(&ctx);
            for (_, z) in &rep.base.factors {
                let p = z.powi(sgn * r, &ctx).ok_or_else(|| Error::Domain("zeta not invertible".into()))?;
                sum = sum.add(&p);
            }
            let coef = q_integer::<T>(r, &ctx).try_div(&T::from_int(r, &ctx)).unwrap().mul(&sum);
            let expect = Mat::scalar(rep.dim(), &coef, &ctx);
            out.push(IdentityCheck::compare(format!("z_{} = [{r}]/{r} sum zeta^{}", sgn * r, sgn * r), rep.central(sgn * r)?, &expect));
        }
    }
    Ok(out)
}

/// `theta_n` of `lead * (z - a)/(z - b)` expanded in `z^-1` (plus) or `z` (minus).
pub fn ratio_expansion<T: QRing>(lead: &T, a: &T, b: &T, terms: usize, plus: bool, ctx: &T::Ctx) -> Result<Vec<T>> {
    let mut out = vec![];
    if plus {
        out.push(lead.clone());
        for r in 1..terms as u32 {
            // b^r - a b^{r-1}
            let v = b.pow_u(r, ctx).sub(&a.mul(&b.pow_u(r - 1, ctx)));
            out.push(lead.mul(&v));
        }
    } else {
        let ai = a.try_inv().ok_or_else(|| Error::Domain("zero root".into()))?;
        let bi = b.try_inv().ok_or_else(|| Error::Domain("zero pole".into()))?;
        let l0 = lead.mul(a).mul(&bi);
        out.push(l0.clone());
        for r in 1..terms as u32 {
            // b^-r - a^-1 b^-(r-1)
            let v = bi.pow_u(r, ctx).sub(&ai.mul(&bi.pow_u(r - 1, ctx)));
            out.push(l0.mul(&v));
        }
    }
    Ok(out)
}

/// Theta series on the highest and lowest weight vectors of a single
/// evaluation module, against the expansions of the closed forms.
pub fn theta_on_extremal<T: QRing>(rep: &LoopRep<T>) -> Result<Vec<IdentityCheck>> {
    if rep.base.factors.len() != 1 {
        return Err(Error::Domain("extremal Theta formulas are for one evaluation factor".into()));
    }
    let ctx = rep.ctx().clone();
    let (lambda, zeta) = rep.base.factors[0].clone();
    let l = lambda as i64;
    let terms = rep.window + 1;
    let top = 0;
    let bottom = rep.dim() - 1;
    let ql = T::q_pow(l, &ctx);
    let qz = |e: i64| T::q_pow(e, &ctx).mul(&zeta);
    let one = T::one_in(&ctx);
    let mut out = vec![];
    for plus in [true, false] {
        let tag = if plus { "+" } else { "-" };
        let on_top = ratio_expansion(&ql, &qz(-l - 1), &qz(l - 1), terms, plus, &ctx)?;
        let on_bottom = ratio_expansion(&ql, &qz(-l + 1), &qz(l + 1), terms, plus, &ctx)?;
        let cases = [
            (1, top, on_top.clone(), "Theta_1 on Omega"),
            (2, top, unit_series(&one, terms, &ctx), "Theta_2 on Omega"),
            (1, bottom, unit_series(&one, terms, &ctx), "Theta_1 on Omega_bar"),
            (2, bottom, on_bottom.clone(), "Theta_2 on Omega_bar"),
        ];
        for (j, v, expect, name) in cases {
            let th = rep.theta(j, plus);
            let mut worst: f64 = 0.0;
            for (n, x) in expect.iter().enumerate() {
                // the column of v must be x e_v
                for i in 0..rep.dim() {
                    let want = if i == v { x.clone() } else { T::zero_in(&ctx) };
                    worst = worst.max(th[n].get(i, v).sub(&want).magnitude());
                }
            }
            out.push(IdentityCheck::new(format!("{name} ({tag})"), worst));
        }
    }
    Ok(out)
}

fn unit_series<T: QRing>(one: &T, terms: usize, ctx: &T::Ctx) -> Vec<T> {
    let mut v = vec![one.clone()];
    v.extend((1..terms).map(|_| T::zero_in(ctx)));
    v
}

/// The quantum Weyl group operators of a representation.
#[derive(Clone, Debug)]
pub struct LatticeOperators<T: QRing> {
    pub l1: Mat<T>,
    pub l2: Mat<T>,
    pub l: Mat<T>,
    pub s0: Mat<T>,
    pub s1: Mat<T>,
    pub s: Mat<T>,
    pub r_max: usize,
    /// Largest entry of the last term `D~_{i,r_max}/r_max` that was kept.
    pub tail: f64,
    /// Root test estimate of the decay rate of `D~_{i,r}`.
    pub rho: f64,
}

/// `D~_{i,r} = D_{i,0} + sum_{s=1}^r (-1)^s C(r,s) s/[s] D_{i,s}`; `i = 0` gives `H~_r`.
pub fn log_generator<T: QRing>(rep: &LoopRep<T>, i: usize, r: i64) -> Result<Mat<T>> {
    let ctx = rep.ctx();
    let pick = |s: i64| if i == 0 { rep.h(s) } else { rep.d(i, s) };
    let mut acc = pick(0)?.clone();
    let mut binom: i64 = 1;
    for s in 1..=r {
        binom = binom * (r - s + 1) / s;
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let w = T::from_int(sign * binom * s, ctx)
            .try_div(&q_integer::<T>(s, ctx))
            .ok_or_else(|| Error::Domain(format!("[{s}] is not invertible")))?;
        acc = acc.add(&pick(s)?.scale(&w));
    }
    Ok(acc)
}

fn lattice_exponent<T: QRing>(rep: &LoopRep<T>, i: usize, r_max: usize) -> Result<(Mat<T>, f64, f64)> {
    let ctx = rep.ctx();
    let mut sum = Mat::zeros(rep.dim(), rep.dim(), ctx);
    let mut tail = 0.0;
    let mut rho: f64 = 0.0;
    for r in 1..=r_max as i64 {
        let term = log_generator(rep, i, r)?.scale(&T::from_frac(1, r, ctx));
        let size = term.max_magnitude();
        if r as usize == r_max {
            tail = size;
        }
        if 2 * r >= r_max as i64 && size > 0.0 {
            rho = rho.max(size.powf(1.0 / r as f64));
        }
        sum = sum.add(&term);
    }
    Ok((sum, tail, rho))
}

/// Divergence threshold for the floating point lattice sums.
pub const MAX_RHO: f64 = 0.9;

/// `L_i = q^{-D_1} exp(sum_{r=1}^{r_max} D~_{i,r}/r)`, `L = L_1 L_2^-1`, and the
/// triple exponentials `S_0, S_1` through `E_0 -> K^-1 F_1`, `F_0 -> E_-1 K`.
pub fn lattice_operators<T: QRing>(rep: &LoopRep<T>, r_max: usize) -> Result<LatticeOperators<T>> {
    if r_max > rep.window {
        return Err(Error::Domain(format!("r_max {r_max} exceeds the level window {}", rep.window)));
    }
    let ctx = rep.ctx().clone();
    let qd1 = rep.base.q_diag(|w| -w[0]);
    let (x1, t1, rho1) = lattice_exponent(rep, 1, r_max)?;
    let (x2, t2, rho2) = lattice_exponent(rep, 2, r_max)?;
    let rho = rho1.max(rho2);
    if !T::EXACT && rho >= MAX_RHO {
        return Err(Error::Convergence(format!("lattice series decays like {rho:.3}^r; take h smaller")));
    }
    let l1 = qd1.mul(&mat_exp(&x1)?);
    let l2 = qd1.mul(&mat_exp(&x2)?);
    let l = l1.mul(&l2.try_inverse()?);
    let h = rep.h0_weights();
    let s1 = triple_exponential(rep.e(0)?, rep.f(0)?, &h, &ctx)?;
    let e0 = rep.k_pow(-1).mul(rep.f(1)?);
    let f0 = rep.e(-1)?.mul(&rep.k_pow(1));
    let hneg: Vec<i64> = h.iter().map(|x| -x).collect();
    let s0 = triple_exponential(&e0, &f0, &hneg, &ctx)?;
    let s = s1.mul(&rep.sign_of_d1());
    Ok(LatticeOperators { l1, l2, l, s0, s1, s, r_max, tail: t1.max(t2), rho })
}

/// `exp(sum H~_r / r)`, the other expression for `L`.
pub fn lattice_l_from_h<T: QRing>(rep: &LoopRep<T>, r_max: usize) -> Result<Mat<T>> {
    let (x, _, _) = lattice_exponent(rep, 0, r_max)?;
    mat_exp(&x)
}

fn divided_square<T: QRing>(x: &Mat<T>, ctx: &T::Ctx) -> Mat<T> {
    let two_fact = q_integer::<T>(2, ctx).try_inv().expect("[2] invertible");
    x.mul(x).scale(&two_fact)
}

/// `T_i(E_j) = E_i^(2) E_j - q^-1 E_i E_j E_i + q^-2 E_j E_i^(2)` and
/// `T_i(F_j) = F_j F_i^(2) - q F_i F_j F_i + q^2 F_i^(2) F_j`.
fn braid_on_other<T: QRing>(ei: &Mat<T>, ej: &Mat<T>, raising: bool, ctx: &T::Ctx) -> Mat<T> {
    let e2 = divided_square(ei, ctx);
    if raising {
        e2.mul(ej).sub(&ei.mul(ej).mul(ei).scale(&T::q_pow(-1, ctx))).add(&ej.mul(&e2).scale(&T::q_pow(-2, ctx)))
    } else {
        ej.mul(&e2).sub(&ei.mul(ej).mul(ei).scale(&T::q(ctx))).add(&e2.mul(ej).scale(&T::q_pow(2, ctx)))
    }
}

/// Conjugation by the quantum Weyl operators against the braid group
/// automorphisms, and the relations among the operators.
pub fn check_automorphisms<T: QRing>(rep: &LoopRep<T>, ops: &LatticeOperators<T>) -> Result<Vec<IdentityCheck>> {
    let ctx = rep.ctx().clone();
    let rr = rep.window as i64;
    let k = rep.k_pow(1);
    let ki = rep.k_pow(-1);
    let e1 = rep.e(0)?.clone();
    let f1 = rep.f(0)?.clone();
    let e0 = ki.mul(rep.f(1)?);
    let f0 = rep.e(-1)?.mul(&k);
    let mut out = vec![];
    let ad = |x: &Mat<T>, inv: &Mat<T>, y: &Mat<T>| x.mul(y).mul(inv);

    let s1i = ops.s1.try_inverse()?;
    let s0i = ops.s0.try_inverse()?;
    let a1 = |y: &Mat<T>| ad(&ops.s1, &s1i, y);
    let a0 = |y: &Mat<T>| ad(&ops.s0, &s0i, y);
    out.push(IdentityCheck::compare("T_1(E_1) = -F_1 K_1", &a1(&e1), &f1.mul(&k).neg()));
    out.push(IdentityCheck::compare("T_1(F_1) = -K_1^-1 E_1", &a1(&f1), &ki.mul(&e1).neg()));
    out.push(IdentityCheck::compare("T_1(E_0)", &a1(&e0), &braid_on_other(&e1, &e0, true, &ctx)));
    out.push(IdentityCheck::compare("T_1(F_0)", &a1(&f0), &braid_on_other(&f1, &f0, false, &ctx)));
    out.push(IdentityCheck::compare("T_0(E_0) = -F_0 K_0", &a0(&e0), &f0.mul(&ki).neg()));
    out.push(IdentityCheck::compare("T_0(F_0) = -K_0^-1 E_0", &a0(&f0), &k.mul(&e0).neg()));
    out.push(IdentityCheck::compare("T_0(E_1)", &a0(&e1), &braid_on_other(&e0, &e1, true, &ctx)));
    out.push(IdentityCheck::compare("T_0(F_1)", &a0(&f1), &braid_on_other(&f0, &f1, false, &ctx)));
    // loop generator form
    out.push(IdentityCheck::compare("T_0 F_1 = -K^-1 E_-1", &a0(rep.f(1)?), &ki.mul(rep.e(-1)?).neg()));
    out.push(IdentityCheck::compare("T_0 E_-1 = -F_1 K", &a0(rep.e(-1)?), &rep.f(1)?.mul(&k).neg()));
    if rr >= 2 {
        out.push(IdentityCheck::compare("T_0 E_0 = -K^-1 F_2", &a0(rep.e(0)?), &ki.mul(rep.f(2)?).neg()));
        out.push(IdentityCheck::compare("T_0 F_0 = -E_-2 K", &a0(rep.f(0)?), &rep.e(-2)?.mul(&k).neg()));
    }

    // lattice shifts
    let l1i = ops.l1.try_inverse()?;
    let l2i = ops.l2.try_inverse()?;
    let li = ops.l.try_inverse()?;
    let mut w1: f64 = 0.0;
    let mut w2: f64 = 0.0;
    let mut wl: f64 = 0.0;
    let mut wc: f64 = 0.0;
    for kk in -rr..=rr {
        if kk - 1 >= -rr && kk + 1 <= rr {
            w1 = w1.max(ad(&ops.l1, &l1i, rep.e(kk)?).sub(rep.e(kk - 1)?).max_magnitude());
            w1 = w1.max(ad(&ops.l1, &l1i, rep.f(kk)?).sub(rep.f(kk + 1)?).max_magnitude());
            w2 = w2.max(ad(&ops.l2, &l2i, rep.e(kk)?).sub(rep.e(kk + 1)?).max_magnitude());
            w2 = w2.max(ad(&ops.l2, &l2i, rep.f(kk)?).sub(rep.f(kk - 1)?).max_magnitude());
        }
        if kk - 2 >= -rr && kk + 2 <= rr {
            wl = wl.max(ad(&ops.l, &li, rep.e(kk)?).sub(rep.e(kk - 2)?).max_magnitude());
            wl = wl.max(ad(&ops.l, &li, rep.f(kk)?).sub(rep.f(kk + 2)?).max_magnitude());
        }
        for j in 1..=2 {
            let d = rep.d(j, kk)?;
            wc = wc.max(ops.l1.commutator(d).max_magnitude());
            wc = wc.max(ops.l2.commutator(d).max_magnitude());
        }
    }
    out.push(IdentityCheck::new("Ad(L_1) E(z) = z^-1 E(z), F(z) -> z F(z)", w1));
    out.push(IdentityCheck::new("Ad(L_2) E(z) = z E(z), F(z) -> z^-1 F(z)", w2));
    out.push(IdentityCheck::new("Ad(L) E(z) = z^-2 E(z), F(z) -> z^2 F(z)", wl));
    out.push(IdentityCheck::new("L_1, L_2 fix the D_{j,r}", wc));

    let s01 = ops.s0.mul(&ops.s1);
    let s01i = s01.try_inverse()?;
    let mut wp: f64 = 0.0;
    for r in -rr..=rr {
        wp = wp.max(ad(&s01, &s01i, rep.h(r)?).sub(rep.h(r)?).max_magnitude());
    }
    out.push(IdentityCheck::new("Ad(S_0 S_1) fixes psi(z)", wp));
    out.push(IdentityCheck::compare("S_0 S_1 = L", &s01, &ops.l));
    out.push(IdentityCheck::compare(
        "S_1 L_2 S_1 = (-1)^I L_1",
        &ops.s1.mul(&ops.l2).mul(&ops.s1),
        &rep.sign_of_total().mul(&ops.l1),
    ));
    out.push(IdentityCheck::compare("L_1 L_2 = L_2 L_1", &ops.l1.mul(&ops.l2), &ops.l2.mul(&ops.l1)));
    out.push(IdentityCheck::compare("S L_2 S = L_1", &ops.s.mul(&ops.l2).mul(&ops.s), &ops.l1));
    Ok(out)
}

/// `L_1, L_2` on `Omega` and `Omega_bar` of a tensor product of evaluation modules.
pub fn lattice_on_extremal<T: QRing>(rep: &LoopRep<T>, ops: &LatticeOperators<T>) -> Result<Vec<IdentityCheck>> {
    let ctx = rep.ctx().clone();
    let mut zl = T::one_in(&ctx);
    let mut ql = T::one_in(&ctx);
    for (l, z) in &rep.base.factors {
        let l = *l as i64;
        zl = zl.mul(&z.powi(-l, &ctx).ok_or_else(|| Error::Domain("zeta not invertible".into()))?);
        ql = ql.mul(&T::q_pow(-l, &ctx));
    }
    let top = 0;
    let bottom = rep.dim() - 1;
    let column = |m: &Mat<T>, v: usize, x: &T| {
        let mut worst: f64 = 0.0;
        for i in 0..rep.dim() {
            let want = if i == v { x.clone() } else { T::zero_in(&ctx) };
            worst = worst.max(m.get(i, v).sub(&want).magnitude());
        }
        worst
    };
    let one = T::one_in(&ctx);
    Ok(vec![
        IdentityCheck::new("L_1 Omega = prod zeta^-lambda Omega", column(&ops.l1, top, &zl)),
        IdentityCheck::new("L_2 Omega = prod q^-lambda Omega", column(&ops.l2, top, &ql)),
        IdentityCheck::new("L_1 Omega_bar = Omega_bar", column(&ops.l1, bottom, &one)),
        IdentityCheck::new("L_2 Omega_bar = prod q^-lambda zeta^-lambda Omega_bar", column(&ops.l2, bottom, &ql.mul(&zl))),
    ])
}

#[cfg(test)]
mod tests;
