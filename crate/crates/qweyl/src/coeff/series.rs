//! Truncated power series in `h` with rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QRing, RatFunc, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 8;
const MAX_ORDER: usize = 4096;

/// `sum c_i h^i + O(h^N)` with `N = c.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    c: Vec<BigRational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { c: vec![BigRational::zero(); order] }
    }

    pub fn constant(r: BigRational, order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 0 {
            s.c[0] = r;
        }
        s
    }

    /// Coefficients beyond the order are dropped, missing ones are zero.
    pub fn from_coeffs(mut c: Vec<BigRational>, order: usize) -> Self {
        c.resize(order, BigRational::zero());
        Series { c }
    }

    /// The series `h`.
    pub fn h(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 1 {
            s.c[1] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::from_coeffs(self.c[..order.min(self.c.len())].to_vec(), order)
    }

    /// Smallest `i` with a nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    fn pair<'a>(&'a self, o: &'a Series) -> (usize, &'a [BigRational], &'a [BigRational]) {
        let n = self.c.len().min(o.c.len());
        (n, &self.c[..n], &o.c[..n])
    }

    pub fn scale(&self, r: &BigRational) -> Series {
        Series { c: self.c.iter().map(|x| x * r).collect() }
    }

    /// `exp(s)` for `s` without constant term.
    pub fn exp(&self) -> Result<Series> {
        if self.c.first().is_some_and(|x| !x.is_zero()) {
            return Err(Error::Domain("exp needs a series with zero constant term".into()));
        }
        let n = self.c.len();
        let mut e = vec![BigRational::zero(); n];
        if n == 0 {
            return Ok(Series { c: e });
        }
        e[0] = BigRational::one();
        // n e_n = sum_k k s_k e_{n-k}
        for m in 1..n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() && !e[m - k].is_zero() {
                    acc += &self.c[k] * &e[m - k] * BigInt::from(k);
                }
            }
            e[m] = acc / BigInt::from(m);
        }
        Ok(Series { c: e })
    }

    /// `log(s)` for `s` with constant term one.
    pub fn log(&self) -> Result<Series> {
        if !self.c.first().is_some_and(|x| x.is_one()) {
            return Err(Error::Domain("log needs a series with constant term 1".into()));
        }
        let n = self.c.len();
        let mut l = vec![BigRational::zero(); n];
        // m l_m = m s_m - sum_{k=1}^{m-1} k l_k s_{m-k}
        for m in 1..n {
            let mut acc = &self.c[m] * BigInt::from(m);
            for k in 1..m {
                if !l[k].is_zero() && !self.c[m - k].is_zero() {
                    acc -= &l[k] * &self.c[m - k] * BigInt::from(k);
                }
            }
            l[m] = acc / BigInt::from(m);
        }
        Ok(Series { c: l })
    }

    /// `e^{a h}` truncated at `order`.
    pub fn exp_linear(a: &BigRational, order: usize) -> Series {
        let mut c = Vec::with_capacity(order);
        let mut term = BigRational::one();
        for k in 0..order {
            c.push(term.clone());
            term = term * a / BigInt::from(k + 1);
        }
        Series { c }
    }
}

impl Ring for Series {
    type Ctx = usize;
    const EXACT: bool = true;

    fn zero_in(order: &usize) -> Self {
        Series::zero(*order)
    }
    fn one_in(order: &usize) -> Self {
        Series::constant(BigRational::one(), *order)
    }
    fn from_rational(r: &BigRational, order: &usize) -> Self {
        Series::constant(r.clone(), *order)
    }
    fn add(&self, o: &Self) -> Self {
        let (_, a, b) = self.pair(o);
        Series { c: a.iter().zip(b).map(|(x, y)| x + y).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        let (_, a, b) = self.pair(o);
        Series { c: a.iter().zip(b).map(|(x, y)| x - y).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let (n, a, b) = self.pair(o);
        let mut c = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[..n - i].iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Series { c }
    }
    fn negate(&self) -> Self {
        Series { c: self.c.iter().map(|x| -x).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.c.len();
        let c0 = self.c.first()?;
        if c0.is_zero() {
            return None;
        }
        let i0 = c0.recip();
        let mut r = vec![BigRational::zero(); n];
        r[0] = i0.clone();
        for m in 1..n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() && !r[m - k].is_zero() {
                    acc += &self.c[k] * &r[m - k];
                }
            }
            r[m] = -acc * &i0;
        }
        Some(Series { c: r })
    }
    fn is_nil(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn is_unit(&self) -> bool {
        self.c.first().is_some_and(|x| !x.is_zero())
    }
    fn magnitude(&self) -> f64 {
        self.c
            .iter()
            .map(|a| a.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
    fn pivot_score(&self) -> f64 {
        match self.c.first() {
            Some(c0) if !c0.is_zero() => 1.0 / (1.0 + (c0.numer().bits() + c0.denom().bits()) as f64),
            _ => 0.0,
        }
    }
}

/// `q = e^{h/2}`.
impl QRing for Series {
    fn q_pow(n: i64, order: &usize) -> Self {
        Series::exp_linear(&BigRational::new(BigInt::from(n), BigInt::from(2)), *order)
    }
}

/// Expand a rational function of `q` at `q = e^{h/2}`.
pub fn embed_q_series(f: &RatFunc, order: usize) -> Result<Series> {
    if f.denominator().eval(&BigRational::one()).is_zero() {
        return Err(Error::NotEmbeddable(format!("denominator of {f} vanishes at q = 1")));
    }
    let poly = |p: &crate::coeff::Poly| {
        let mut acc = Series::zero(order);
        for (k, a) in p.coeffs().iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&Series::q_pow(k as i64, &order).scale(a));
            }
        }
        acc
    };
    let n = poly(f.numerator());
    let d = poly(f.denominator()).try_inv().expect("denominator is a unit");
    Ok(Series::q_pow(f.shift(), &order).mul(&n).mul(&d))
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let abs = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(h^{})", self.c.len())
    }
}

fn parse_err(s: &str) -> Error {
    Error::Parse(format!("bad series term '{s}'"))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let ok = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !ok(n) || !ok(d) {
        return Err(parse_err(s));
    }
    let d: BigInt = d.parse().map_err(|_| parse_err(s))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n.parse().map_err(|_| parse_err(s))?, d))
}

fn parse_power(s: &str) -> Result<usize> {
    let s = s.trim();
    if s == "h" {
        return Ok(1);
    }
    let e = s.strip_prefix("h^").ok_or_else(|| parse_err(s))?.trim();
    if e.is_empty() || !e.bytes().all(|b| b.is_ascii_digit()) || e.len() > 6 {
        return Err(parse_err(s));
    }
    e.parse().map_err(|_| parse_err(s))
}

impl FromStr for Series {
    type Err = Error;

    /// Parses the display format, e.g. `1 + 1/2*h - 3*h^2 + O(h^8)`.
    fn from_str(s: &str) -> Result<Self> {
        // split into signed terms at top-level + and -
        let mut terms: Vec<(bool, String)> = vec![];
        let mut cur = String::new();
        let mut sign: Option<bool> = None;
        let mut depth = 0i32;
        for ch in s.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    cur.push(ch);
                }
                ')' => {
                    depth -= 1;
                    cur.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if cur.trim().is_empty() {
                        if sign.is_some() {
                            return Err(Error::Parse("doubled sign".into()));
                        }
                    } else {
                        terms.push((sign == Some(true), std::mem::take(&mut cur)));
                    }
                    sign = Some(ch == '-');
                }
                _ => cur.push(ch),
            }
        }
        if cur.trim().is_empty() {
            if sign.is_some() {
                return Err(Error::Parse("trailing sign".into()));
            }
        } else {
            terms.push((sign == Some(true), cur));
        }
        let (last_neg, last) = terms.pop().ok_or_else(|| Error::Parse("empty series".into()))?;
        let last = last.trim();
        let inner = last
            .strip_prefix("O(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse("series must end with O(h^N)".into()))?;
        if last_neg {
            return Err(Error::Parse("negative order term".into()));
        }
        let order = parse_power(inner)?;
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Parse(format!("order {order} out of range")));
        }
        let mut out = Series::zero(order);
        for (neg, t) in terms {
            let t = t.trim();
            let (coef, pow) = if let Some((c, p)) = t.split_once('*') {
                (parse_rational(c)?, parse_power(p)?)
            } else if t.starts_with('h') {
                (BigRational::one(), parse_power(t)?)
            } else {
                (parse_rational(t)?, 0)
            };
            if pow < order {
                if neg {
                    out.c[pow] -= coef;
                } else {
                    out.c[pow] += coef;
                }
            }
        }
        Ok(out)
    }
}
