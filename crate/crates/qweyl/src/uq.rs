//! Finite dimensional `U_h(gl_p)` modules, tensor products through the
//! coproduct, R-matrices on symmetric powers and the Weyl element of `U_h(gl_2)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::check::IdentityCheck;
use crate::coeff::{q_binomial, q_integer, QRing, RatFunc, Ring};
use crate::error::{Error, Result};
use crate::matrix::{permute_legs, place_on_legs2, solve_intertwiner, solve_linear, Mat};
use crate::monomial::MonomialBasis;
use crate::qmatrix::{glk_q_action, gln_q_action, QGen};

/// Weight module with matrices for `E_j, F_j` (`j < p - 1`); `D_i` is diagonal
/// and read off from `weights`.
#[derive(Clone, Debug, PartialEq)]
pub struct UqModule<T: Ring> {
    pub p: usize,
    /// `weights[v][i]` is the `D_i` eigenvalue of basis vector `v`.
    pub weights: Vec<Vec<i64>>,
    pub e: Vec<Mat<T>>,
    pub f: Vec<Mat<T>>,
    pub ctx: T::Ctx,
}

impl<T: QRing> UqModule<T> {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The one dimensional module with all generators acting by zero.
    pub fn trivial(p: usize, ctx: &T::Ctx) -> Self {
        UqModule {
            p,
            weights: vec![vec![0; p]],
            e: vec![Mat::zeros(1, 1, ctx); p - 1],
            f: vec![Mat::zeros(1, 1, ctx); p - 1],
            ctx: ctx.clone(),
        }
    }

    pub fn d(&self, i: usize) -> Mat<T> {
        Mat::diag(self.weights.iter().map(|w| T::from_int(w[i], &self.ctx)).collect(), &self.ctx)
    }

    /// `H_j = D_j - D_{j+1}` eigenvalue of vector `v`.
    pub fn h_weight(&self, v: usize, j: usize) -> i64 {
        self.weights[v][j] - self.weights[v][j + 1]
    }

    /// Diagonal matrix with entries `q^{f(weight)}`.
    pub fn q_diag(&self, f: impl Fn(&[i64]) -> i64) -> Mat<T> {
        Mat::diag(self.weights.iter().map(|w| T::q_pow(f(w), &self.ctx)).collect(), &self.ctx)
    }

    /// `q^{n H_j}`.
    pub fn k_pow(&self, j: usize, n: i64) -> Mat<T> {
        self.q_diag(|w| n * (w[j] - w[j + 1]))
    }

    /// `I_p = D_1 + .. + D_p` eigenvalues.
    pub fn total_weight(&self, v: usize) -> i64 {
        self.weights[v].iter().sum()
    }

    /// All generators in a fixed order, for intertwiner solves.
    pub fn generators(&self) -> Vec<Mat<T>> {
        let mut g: Vec<Mat<T>> = (0..self.p).map(|i| self.d(i)).collect();
        g.extend(self.e.iter().cloned());
        g.extend(self.f.iter().cloned());
        g
    }
}

/// Standard module: `E_j e_{j+1} = e_j`, `F_j e_j = e_{j+1}`.
pub fn vector_rep<T: QRing>(p: usize, ctx: &T::Ctx) -> Result<UqModule<T>> {
    if p < 2 {
        return Err(Error::Domain("vector_rep needs p >= 2".into()));
    }
    let weights = (0..p).map(|i| (0..p).map(|j| (i == j) as i64).collect()).collect();
    let mut e = vec![];
    let mut f = vec![];
    for j in 0..p - 1 {
        let mut ej = Mat::zeros(p, p, ctx);
        ej.set(j, j + 1, T::one_in(ctx));
        let mut fj = Mat::zeros(p, p, ctx);
        fj.set(j + 1, j, T::one_in(ctx));
        e.push(ej);
        f.push(fj);
    }
    Ok(UqModule { p, weights, e, f, ctx: ctx.clone() })
}

/// Which one-line quantum matrix space carries the module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    /// `A_q(M_{p,1})` with `U_h(gl_p)` acting on rows.
    Column,
    /// `A_q(M_{1,p})` with `U_h(gl_p)` acting on columns.
    Row,
}

/// Degree `d` monomials of a one-line quantum matrix space. The first basis
/// vector is the highest weight vector `X_1^d`.
pub fn graded_module_from_qmatrix<T: QRing>(p: usize, d: u32, line: Line, ctx: &T::Ctx) -> Result<UqModule<T>> {
    if p < 2 {
        return Err(Error::Domain("need p >= 2".into()));
    }
    let basis = match line {
        Line::Column => MonomialBasis::total_degree(p, 1, d),
        Line::Row => MonomialBasis::total_degree(1, p, d),
    };
    let act = |g| match line {
        Line::Column => glk_q_action::<T>(&basis, g, ctx),
        Line::Row => gln_q_action::<T>(&basis, g, ctx),
    };
    let e = (0..p - 1).map(|j| act(QGen::E(j))).collect::<Result<_>>()?;
    let f = (0..p - 1).map(|j| act(QGen::F(j))).collect::<Result<_>>()?;
    let weights = basis.exps().iter().map(|m| m.iter().map(|&x| x as i64).collect()).collect();
    Ok(UqModule { p, weights, e, f, ctx: ctx.clone() })
}

/// `Delta(E) = E x K + 1 x E`, `Delta(F) = F x 1 + K^-1 x F`, weights add.
pub fn tensor_module<T: QRing>(m: &UqModule<T>, n: &UqModule<T>) -> Result<UqModule<T>> {
    if m.p != n.p || m.ctx != n.ctx {
        return Err(Error::Dimension("tensor factors disagree on p or ring".into()));
    }
    let ctx = &m.ctx;
    let (im, in_) = (Mat::identity(m.dim(), ctx), Mat::identity(n.dim(), ctx));
    let mut weights = vec![];
    for a in &m.weights {
        for b in &n.weights {
            weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    let e = (0..m.p - 1).map(|j| m.e[j].kron(&n.k_pow(j, 1)).add(&im.kron(&n.e[j]))).collect();
    let f = (0..m.p - 1).map(|j| m.f[j].kron(&in_).add(&m.k_pow(j, -1).kron(&n.f[j]))).collect();
    Ok(UqModule { p: m.p, weights, e, f, ctx: ctx.clone() })
}

/// The coproduct with its factors swapped, still on `M x N`.
pub fn tensor_module_op<T: QRing>(m: &UqModule<T>, n: &UqModule<T>) -> Result<UqModule<T>> {
    let nm = tensor_module(n, m)?;
    let dims = [n.dim(), m.dim()];
    let swap = permute_legs::<T>(&[1, 0], &dims, &m.ctx);
    let back = permute_legs::<T>(&[1, 0], &[m.dim(), n.dim()], &m.ctx);
    let conj = |x: &Mat<T>| swap.mul(x).mul(&back);
    let mut weights = vec![];
    for a in &m.weights {
        for b in &n.weights {
            weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    Ok(UqModule {
        p: m.p,
        weights,
        e: nm.e.iter().map(conj).collect(),
        f: nm.f.iter().map(conj).collect(),
        ctx: m.ctx.clone(),
    })
}

/// The defining relations as matrix identities.
pub fn check_relations<T: QRing>(m: &UqModule<T>) -> Result<Vec<IdentityCheck>> {
    let ctx = &m.ctx;
    let p = m.p;
    let dim = m.dim();
    let zero = Mat::<T>::zeros(dim, dim, ctx);
    let mut out = vec![];
    let d: Vec<Mat<T>> = (0..p).map(|i| m.d(i)).collect();

    let mut worst: f64 = 0.0;
    for a in &d {
        for b in &d {
            worst = worst.max(a.commutator(b).max_magnitude());
        }
    }
    out.push(IdentityCheck::new("Cartan elements commute", worst));

    let mut worst: f64 = 0.0;
    for i in 0..p {
        for j in 0..p - 1 {
            let c = (i == j) as i64 - (i == j + 1) as i64;
            let ce = T::from_int(c, ctx);
            worst = worst.max(d[i].commutator(&m.e[j]).sub(&m.e[j].scale(&ce)).max_magnitude());
            worst = worst.max(d[i].commutator(&m.f[j]).add(&m.f[j].scale(&ce)).max_magnitude());
        }
    }
    out.push(IdentityCheck::new("weights of E and F", worst));

    let mut worst: f64 = 0.0;
    for j in 0..p - 1 {
        for jj in 0..p - 1 {
            let rhs = if j == jj {
                Mat::diag((0..dim).map(|v| q_integer::<T>(m.h_weight(v, j), ctx)).collect(), ctx)
            } else {
                zero.clone()
            };
            worst = worst.max(m.e[j].commutator(&m.f[jj]).sub(&rhs).max_magnitude());
        }
    }
    out.push(IdentityCheck::new("[E_j, F_j'] = [H_j]", worst));

    let mut worst: f64 = 0.0;
    for i in 0..p - 1 {
        for j in 0..p - 1 {
            if i == j {
                continue;
            }
            for x in [&m.e, &m.f] {
                let r = serre(&x[i], &x[j], i.abs_diff(j) == 1, ctx)?;
                worst = worst.max(r.max_magnitude());
            }
        }
    }
    out.push(IdentityCheck::new("Serre relations", worst));
    Ok(out)
}

/// `sum_t (-1)^t [n choose t] x^{n-t} y x^t` with `n = 2` for adjacent nodes, `n = 1` otherwise.
fn serre<T: QRing>(x: &Mat<T>, y: &Mat<T>, adjacent: bool, ctx: &T::Ctx) -> Result<Mat<T>> {
    let n = if adjacent { 2 } else { 1 };
    let mut acc = Mat::zeros(x.rows(), x.cols(), ctx);
    for t in 0..=n {
        let c = q_binomial::<T>(n as i64, t as i64, ctx)?;
        let c = if t % 2 == 1 { c.negate() } else { c };
        let term = x.pow_u(n - t).mul(y).mul(&x.pow_u(t)).scale(&c);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Which triangular half carries the off-diagonal part of the seed R-matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedHalf {
    /// `e_j x e_i -> e_i x e_j` for `i < j`.
    Upper,
    /// `e_i x e_j -> e_j x e_i` for `i < j`.
    Lower,
}

/// The half for which the seed intertwines the coproduct with its opposite
/// and `(1 2) R = S q^{-D_1}` holds. Both halves are tried in the tests.
pub const SEED_HALF: SeedHalf = SeedHalf::Upper;

/// R-matrix on `V x V`: `q` on `e_i x e_i`, `1` on `e_i x e_j`, plus
/// `q - q^-1` on one triangular half.
pub fn seed_r_matrix<T: QRing>(p: usize, half: SeedHalf, ctx: &T::Ctx) -> Mat<T> {
    let n = p * p;
    let mut r = Mat::zeros(n, n, ctx);
    let c = T::q(ctx).sub(&T::q_pow(-1, ctx));
    for i in 0..p {
        for j in 0..p {
            let v = i * p + j;
            r.set(v, v, if i == j { T::q(ctx) } else { T::one_in(ctx) });
        }
    }
    for i in 0..p {
        for j in i + 1..p {
            match half {
                SeedHalf::Upper => r.set(i * p + j, j * p + i, c.clone()),
                SeedHalf::Lower => r.set(j * p + i, i * p + j, c.clone()),
            }
        }
    }
    r
}

/// Cache of R-matrices on symmetric powers, keyed by `(p, a, b)`.
pub struct RMatrices<T: QRing> {
    ctx: T::Ctx,
    half: SeedHalf,
    modules: RwLock<HashMap<(usize, u32), Arc<UqModule<T>>>>,
    embeddings: RwLock<HashMap<(usize, u32), Arc<Mat<T>>>>,
    r: RwLock<HashMap<(usize, u32, u32), Arc<Mat<T>>>>,
}

impl<T: QRing> RMatrices<T> {
    pub fn new(ctx: &T::Ctx) -> Self {
        Self::with_half(SEED_HALF, ctx)
    }

    pub fn with_half(half: SeedHalf, ctx: &T::Ctx) -> Self {
        RMatrices {
            ctx: ctx.clone(),
            half,
            modules: RwLock::new(HashMap::new()),
            embeddings: RwLock::new(HashMap::new()),
            r: RwLock::new(HashMap::new()),
        }
    }

    /// Degree `d` symmetric power, as `A_q(M_{p,1})_d`.
    pub fn module(&self, p: usize, d: u32) -> Result<Arc<UqModule<T>>> {
        if let Some(m) = self.modules.read().unwrap().get(&(p, d)) {
            return Ok(m.clone());
        }
        let m = Arc::new(graded_module_from_qmatrix(p, d, Line::Column, &self.ctx)?);
        Ok(self.modules.write().unwrap().entry((p, d)).or_insert(m).clone())
    }

    /// The embedding `S^d -> S^{d-1} x V` sending the highest weight vector to
    /// the highest weight vector.
    pub fn embedding(&self, p: usize, d: u32) -> Result<Arc<Mat<T>>> {
        if let Some(m) = self.embeddings.read().unwrap().get(&(p, d)) {
            return Ok(m.clone());
        }
        let small = self.module(p, d)?;
        let big = tensor_module(&*self.module(p, d - 1)?, &vector_rep(p, &self.ctx)?)?;
        let x = solve_intertwiner(&small.generators(), &big.generators())?
            .ok_or_else(|| Error::Domain(format!("no embedding of degree {d} into degree {} x V", d - 1)))?;
        let s = x
            .get(0, 0)
            .try_inv()
            .ok_or_else(|| Error::Domain("embedding misses the highest weight vector".into()))?;
        let x = Arc::new(x.scale(&s));
        Ok(self.embeddings.write().unwrap().entry((p, d)).or_insert(x).clone())
    }

    /// R-matrix on `S^a x S^b`, by fusion from the seed on `V x V`.
    pub fn r(&self, p: usize, a: u32, b: u32) -> Result<Arc<Mat<T>>> {
        if let Some(m) = self.r.read().unwrap().get(&(p, a, b)) {
            return Ok(m.clone());
        }
        let ctx = &self.ctx;
        let r = if a == 0 || b == 0 {
            let n = self.module(p, a)?.dim() * self.module(p, b)?.dim();
            Mat::identity(n, ctx)
        } else if a == 1 && b == 1 {
            seed_r_matrix(p, self.half, ctx)
        } else if a > 1 {
            // (Delta x 1) R = R_13 R_23 on S^{a-1} x V x S^b, pulled back along S^a -> S^{a-1} x V
            let da = self.module(p, a - 1)?.dim();
            let db = self.module(p, b)?.dim();
            let dims = [da, p, db];
            let r13 = place_on_legs2(&*self.r(p, a - 1, b)?, 0, 2, &dims);
            let r23 = place_on_legs2(&*self.r(p, 1, b)?, 1, 2, &dims);
            let big = r13.mul(&r23);
            let iota = self.embedding(p, a)?.kron(&Mat::identity(db, ctx));
            solve_linear(&iota, &big.mul(&iota))?
        } else {
            // (1 x Delta) R = R_13 R_12 on S^a x S^{b-1} x V
            let da = self.module(p, a)?.dim();
            let db = self.module(p, b - 1)?.dim();
            let dims = [da, db, p];
            let r13 = place_on_legs2(&*self.r(p, a, 1)?, 0, 2, &dims);
            let r12 = place_on_legs2(&*self.r(p, a, b - 1)?, 0, 1, &dims);
            let big = r13.mul(&r12);
            let iota = Mat::identity(da, ctx).kron(&*self.embedding(p, b)?);
            solve_linear(&iota, &big.mul(&iota))?
        };
        let r = Arc::new(r);
        Ok(self.r.write().unwrap().entry((p, a, b)).or_insert(r).clone())
    }
}

/// `R Delta(x) = Delta^op(x) R` for every generator.
pub fn check_r_intertwines<T: QRing>(m: &UqModule<T>, n: &UqModule<T>, r: &Mat<T>) -> Result<IdentityCheck> {
    let d = tensor_module(m, n)?;
    let dop = tensor_module_op(m, n)?;
    let mut worst: f64 = 0.0;
    for (x, y) in d.e.iter().zip(&dop.e).chain(d.f.iter().zip(&dop.f)) {
        worst = worst.max(r.mul(x).sub(&y.mul(r)).max_magnitude());
    }
    Ok(IdentityCheck::new("R intertwines the coproduct and its opposite", worst))
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on `S^a x S^b x S^c`.
pub fn check_yang_baxter<T: QRing>(rs: &RMatrices<T>, p: usize, a: u32, b: u32, c: u32) -> Result<IdentityCheck> {
    let dims = [rs.module(p, a)?.dim(), rs.module(p, b)?.dim(), rs.module(p, c)?.dim()];
    let r12 = place_on_legs2(&*rs.r(p, a, b)?, 0, 1, &dims);
    let r13 = place_on_legs2(&*rs.r(p, a, c)?, 0, 2, &dims);
    let r23 = place_on_legs2(&*rs.r(p, b, c)?, 1, 2, &dims);
    Ok(IdentityCheck::compare(
        format!("Yang-Baxter on S^{a} x S^{b} x S^{c}, p = {p}"),
        &r12.mul(&r13).mul(&r23),
        &r23.mul(&r13).mul(&r12),
    ))
}

/// `exp_{q^-1}(x) = sum_n q^{-n(n-1)/2} x^n / [n]!` for nilpotent `x`.
pub fn q_exp_inv<T: QRing>(x: &Mat<T>) -> Result<Mat<T>> {
    let ctx = x.ctx().clone();
    let n = x.rows();
    let mut sum = Mat::identity(n, &ctx);
    let mut power = Mat::identity(n, &ctx);
    let mut fact = T::one_in(&ctx);
    for k in 1..=n as i64 + 1 {
        power = power.mul(x);
        if power.is_zero() {
            return Ok(sum);
        }
        fact = fact.mul(&q_integer::<T>(k, &ctx));
        let c = T::q_pow(-k * (k - 1) / 2, &ctx)
            .try_div(&fact)
            .ok_or_else(|| Error::Domain("[n]! is not invertible".into()))?;
        sum = sum.add(&power.scale(&c));
    }
    Err(Error::Domain("q-exponential of a non-nilpotent matrix".into()))
}

/// `exp_{q^-1}(q^-1 E q^-H) exp_{q^-1}(-F) exp_{q^-1}(q E q^H) q^{H(H+1)/2}`
/// for an `sl_2` triple given as `E`, `F` and the diagonal `H` eigenvalues.
pub fn triple_exponential<T: QRing>(e: &Mat<T>, f: &Mat<T>, h: &[i64], ctx: &T::Ctx) -> Result<Mat<T>> {
    let qh = |s: i64| Mat::diag(h.iter().map(|&w| T::q_pow(s * w, ctx)).collect(), ctx);
    let a = q_exp_inv(&e.mul(&qh(-1)).scale(&T::q_pow(-1, ctx)))?;
    let b = q_exp_inv(&f.neg())?;
    let c = q_exp_inv(&e.mul(&qh(1)).scale(&T::q(ctx)))?;
    let d = Mat::diag(h.iter().map(|&w| T::q_pow(w * (w + 1) / 2, ctx)).collect(), ctx);
    Ok(a.mul(&b).mul(&c).mul(&d))
}

/// `S_1` of `U_h(gl_2)` on `m`.
pub fn weyl_s1<T: QRing>(m: &UqModule<T>) -> Result<Mat<T>> {
    if m.p != 2 {
        return Err(Error::Domain("the Weyl element is built for gl_2".into()));
    }
    let h: Vec<i64> = (0..m.dim()).map(|v| m.h_weight(v, 0)).collect();
    triple_exponential(&m.e[0], &m.f[0], &h, &m.ctx)
}

/// `S = S_1 (-1)^{D_1}`.
pub fn weyl_s<T: QRing>(m: &UqModule<T>) -> Result<Mat<T>> {
    let sign = Mat::diag(
        m.weights.iter().map(|w| T::from_int(if w[0] % 2 == 0 { 1 } else { -1 }, &m.ctx)).collect(),
        &m.ctx,
    );
    Ok(weyl_s1(m)?.mul(&sign))
}

/// `Ad(S_1)` on `E`, `F`, `H` against `E -> -F q^H`, `F -> -q^-H E`, `H -> -H`.
pub fn check_weyl_conjugation<T: QRing>(m: &UqModule<T>) -> Result<Vec<IdentityCheck>> {
    let s = weyl_s1(m)?;
    let si = s.try_inverse()?;
    let kp = m.k_pow(0, 1);
    let km = m.k_pow(0, -1);
    let h = m.d(0).sub(&m.d(1));
    let ad = |x: &Mat<T>| s.mul(x).mul(&si);
    Ok(vec![
        IdentityCheck::compare("Ad(S_1) E = -F K", &ad(&m.e[0]), &m.f[0].mul(&kp).neg()),
        IdentityCheck::compare("Ad(S_1) F = -K^-1 E", &ad(&m.f[0]), &km.mul(&m.e[0]).neg()),
        IdentityCheck::compare("Ad(S_1) H = -H", &ad(&h), &h.neg()),
    ])
}

/// Exact relations and R-matrix checks over `Q(q)` for `p` and degrees up to `max_degree`.
pub fn verify_quantum_group(p: usize, max_degree: u32) -> Result<Vec<IdentityCheck>> {
    let ctx = ();
    let rs = RMatrices::<RatFunc>::new(&ctx);
    let mut out = vec![];
    for d in 0..=max_degree {
        let m = rs.module(p, d)?;
        for c in check_relations(&m)? {
            out.push(IdentityCheck::new(format!("{} [S^{d}, p = {p}]", c.name), c.residual));
        }
    }
    let v = vector_rep::<RatFunc>(p, &ctx)?;
    for c in check_relations(&tensor_module(&v, &v)?)? {
        out.push(IdentityCheck::new(format!("{} [V x V, p = {p}]", c.name), c.residual));
    }
    for a in 1..=max_degree.min(2) {
        for b in 1..=max_degree.min(2) {
            let r = rs.r(p, a, b)?;
            let c = check_r_intertwines(&*rs.module(p, a)?, &*rs.module(p, b)?, &r)?;
            out.push(IdentityCheck::new(format!("{} [S^{a} x S^{b}, p = {p}]", c.name), c.residual));
        }
    }
    out.push(check_yang_baxter(&rs, p, 1, 1, 1)?);
    if max_degree >= 2 {
        out.push(check_yang_baxter(&rs, p, 2, 1, 1)?);
        out.push(check_yang_baxter(&rs, p, 1, 2, 1)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
