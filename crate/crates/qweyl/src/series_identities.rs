//! The polynomials `p_{l;n}^{(m)}` in commuting variables `x_0, x_1, ..` that
//! control the `hbar`-adic order of the logarithmic loop generators, and the
//! recurrences between them.
//!
//! `y_{l;n} = sum_m hbar^{m-1}/m! p_{l;n}^{(m)}` with `x_k` standing in for
//! `(q - q^-1)/hbar H_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::Series;
use crate::qloop::{log_generator, LoopRep};
use crate::Result;

/// A polynomial with rational coefficients, keyed by exponent vectors with
/// trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutativePoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl CommutativePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![], c);
        p
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `x_k`.
    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        let mut p = Self::zero();
        p.add_term(e, BigRational::one());
        p
    }

    /// The monomial `x_{a_1} .. x_{a_m}`.
    pub fn monomial(vars: &[usize]) -> Self {
        let mut e = vec![0; vars.iter().max().map_or(0, |m| m + 1)];
        for &v in vars {
            e[v] += 1;
        }
        let mut p = Self::zero();
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let v = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(&trim(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let n = ea.len().max(eb.len());
                let e = (0..n).map(|i| ea.get(i).unwrap_or(&0) + eb.get(i).unwrap_or(&0)).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl fmt::Display for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // by degree, then x_1 before x_2
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.iter().sum::<u32>().cmp(&b.iter().sum()).then_with(|| b.cmp(a)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let sign = match (c.is_negative(), i > 0) {
                (true, true) => " - ",
                (true, false) => "-",
                (false, true) => " + ",
                (false, false) => "",
            };
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| if p == 1 { format!("x{k}") } else { format!("x{k}^{p}") })
                .collect();
            let body = match (a.is_one(), vars.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => vars.join("*"),
                (false, true) => a.to_string(),
                (false, false) => format!("{}*{}", a, vars.join("*")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn binomial(n: u32, k: u32) -> BigRational {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    BigRational::from_integer(c)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Partitions of `total` into exactly `parts` positive parts, non-increasing.
pub fn partitions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        let hi = max.min(total - (parts - 1));
        for p in (1..=hi).rev() {
            cur.push(p);
            go(total - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(total, parts, total, &mut vec![], &mut out);
    out
}

/// Compositions `a_1 + .. + a_parts = total`, all `a_i >= 1`.
pub fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        for a in 1..=total - (parts - 1) {
            cur.push(a);
            go(total - a, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(total, parts, &mut vec![], &mut out);
    out
}

fn x_of(parts: &[u32]) -> CommutativePoly {
    CommutativePoly::monomial(&parts.iter().map(|&p| p as usize).collect::<Vec<_>>())
}

/// `sum_{lambda |- total, l(lambda) = m} m!/prod l_i! x_lambda`, `l_i` the
/// multiplicity of the part `i`.
fn partition_sum(total: u32, m: u32) -> CommutativePoly {
    let mut out = CommutativePoly::zero();
    for lam in partitions(total, m) {
        let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &lam {
            *mult.entry(p).or_default() += 1;
        }
        let den = mult.values().fold(BigInt::one(), |a, &k| a * factorial(k));
        out = out.add(&x_of(&lam).scale(&BigRational::new(factorial(m), den)));
    }
    out
}

fn composition_sum(total: u32, m: u32) -> CommutativePoly {
    compositions(total, m).iter().fold(CommutativePoly::zero(), |acc, a| acc.add(&x_of(a)))
}

fn x0_term(m: u32) -> CommutativePoly {
    let s = if m % 2 == 1 { int(1) } else { int(-1) };
    CommutativePoly::var(0).pow(m).scale(&s)
}

fn alternating(l: u32, n: u32, m: u32, inner: impl Fn(u32, u32) -> CommutativePoly) -> CommutativePoly {
    let mut out = if l == 0 { x0_term(m) } else { CommutativePoly::zero() };
    let start = if l == 0 { 1 } else { 0 };
    for r in start..=n {
        let sign = if r % 2 == 0 { int(1) } else { int(-1) };
        out = out.add(&inner(l + r, m).scale(&(sign * binomial(n, r))));
    }
    out
}

/// `p_{l;n}^{(m)}` through partitions with multinomial weights. For `l = 0`
/// the `r = 0` term is `(-1)^{m-1} x_0^m`.
pub fn p_poly(l: u32, n: u32, m: u32) -> CommutativePoly {
    assert!(m >= 1, "m starts at 1");
    alternating(l, n, m, partition_sum)
}

/// `p_{l;n}^{(m)}` by summing over ordered compositions.
pub fn p_poly_by_compositions(l: u32, n: u32, m: u32) -> CommutativePoly {
    assert!(m >= 1, "m starts at 1");
    alternating(l, n, m, composition_sum)
}

/// `p_{l;n}^{(m)} = sum_{t=1}^{l-1} p_{t;0}^{(m-1)} p_{l-t;n}^{(1)} - sum_{k=0}^{n-1} p_{1;k}^{(1)} p_{l;n-k-1}^{(m-1)}`.
pub fn relation_l_rhs(l: u32, n: u32, m: u32) -> CommutativePoly {
    let mut out = CommutativePoly::zero();
    for t in 1..l {
        out = out.add(&p_poly(t, 0, m - 1).mul(&p_poly(l - t, n, 1)));
    }
    for k in 0..n {
        out = out.sub(&p_poly(1, k, 1).mul(&p_poly(l, n - k - 1, m - 1)));
    }
    out
}

pub fn verify_relation_l(l: u32, n: u32, m: u32) -> bool {
    assert!(l >= 1 && m >= 2);
    p_poly(l, n, m) == relation_l_rhs(l, n, m)
}

/// `p_{0;n}^{(m)} = (-1)^{m-1} x_0^{m-1} p_{0;n-1}^{(1)} - sum_{k=0}^{n-2} p_{1;k}^{(1)} p_{0;n-1-k}^{(m-1)}`.
pub fn relation_0_rhs(n: u32, m: u32) -> CommutativePoly {
    let s = if m % 2 == 1 { int(1) } else { int(-1) };
    let mut out = CommutativePoly::var(0).pow(m - 1).scale(&s).mul(&p_poly(0, n - 1, 1));
    for k in 0..n.saturating_sub(1) {
        out = out.sub(&p_poly(1, k, 1).mul(&p_poly(0, n - 1 - k, m - 1)));
    }
    out
}

pub fn verify_relation_0(n: u32, m: u32) -> bool {
    assert!(n >= 1 && m >= 2);
    p_poly(0, n, m) == relation_0_rhs(n, m)
}

/// The composition-sum form of
/// `sum_{t=1}^{l-1} p_{t;0}^{(m-1)} p_{l-t;n}^{(1)} - p_{l;n}^{(m)}`:
/// `sum_{s=0}^{n-1} (-1)^s C(n, s+1) sum x_{a_1} .. x_{a_m}` over `a_i >= 1`
/// with `a_1 + .. + a_m = l + s + 1` and `l <= a_1 + .. + a_{m-1} <= l + s`.
pub fn lhs_closed_form(l: u32, n: u32, m: u32) -> CommutativePoly {
    let mut out = CommutativePoly::zero();
    for s in 0..n {
        let sign = if s % 2 == 0 { int(1) } else { int(-1) };
        let mut inner = CommutativePoly::zero();
        for head in l..=l + s {
            let last = CommutativePoly::var((l + s + 1 - head) as usize);
            inner = inner.add(&composition_sum(head, m - 1).mul(&last));
        }
        out = out.add(&inner.scale(&(sign * binomial(n, s + 1))));
    }
    out
}

pub fn lhs_direct(l: u32, n: u32, m: u32) -> CommutativePoly {
    let mut out = CommutativePoly::zero();
    for t in 1..l {
        out = out.add(&p_poly(t, 0, m - 1).mul(&p_poly(l - t, n, 1)));
    }
    out.sub(&p_poly(l, n, m))
}

pub fn verify_lhs(l: u32, n: u32, m: u32) -> bool {
    assert!(l >= 1 && m >= 2);
    lhs_direct(l, n, m) == lhs_closed_form(l, n, m)
}

/// `hbar`-adic valuation of `H~_r` on a series representation; `None` when the
/// matrix vanishes to the working order.
pub fn module_order_probe(rep: &LoopRep<Series>, r: i64) -> Result<Option<usize>> {
    let m = log_generator(rep, 0, r)?;
    let mut best: Option<usize> = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if let Some(v) = m.get(i, j).valuation() {
                best = Some(best.map_or(v, |b: usize| b.min(v)));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests;
