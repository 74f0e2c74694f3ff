//! Polynomials over Q and the rational function field Q(q).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QRing;
use crate::error::{Error, Result};

/// Dense polynomial in `q`, coefficient `i` multiplies `q^i`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn one() -> Self {
        Poly { c: vec![BigRational::one()] }
    }

    pub fn constant(r: BigRational) -> Self {
        Poly::new(vec![r])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.c.last()
    }

    fn low_zeros(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly { c: self.c[k..].to_vec() }
    }

    fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            c.push(v);
        }
        Poly::new(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, r: &BigRational) -> Poly {
        Poly::new(self.c.iter().map(|x| x * r).collect())
    }

    /// Euclidean division over Q.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] / &dl;
            for (j, b) in d.c.iter().enumerate() {
                let t = &f * b;
                r[i - dd + j] -= t;
            }
            quo[i - dd] = f;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let abs = a.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.c.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Element `q^shift * num / den` of Q(q).
///
/// Canonical: `num(0) != 0`, `den` monic with `den(0) != 0`, `gcd(num, den) = 1`.
/// Zero is `shift = 0, num = 0, den = 1`. Structural equality is equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { shift: 0, num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(r: BigRational) -> Self {
        RatFunc::from_parts(0, Poly::constant(r), Poly::one())
    }

    pub fn q_pow(n: i64) -> Self {
        RatFunc { shift: n, num: Poly::one(), den: Poly::one() }
    }

    /// `q^shift * num / den`, reduced. Panics on a zero denominator.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let mut shift = shift;
        let kn = num.low_zeros();
        let kd = den.low_zeros();
        let mut num = num.shift_down(kn);
        let mut den = den.shift_down(kd);
        shift += kn as i64 - kd as i64;
        if den.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree() != Some(0) {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        let l = den.lead().unwrap().recip();
        if !l.is_one() {
            num = num.scale(&l);
            den = den.scale(&l);
        }
        RatFunc { shift, num, den }
    }

    /// Is this a Laurent polynomial?
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Value at `q = x`, `None` if the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() || (x.is_zero() && self.shift < 0) {
            return None;
        }
        let p = if self.shift >= 0 {
            num_traits::pow(x.clone(), self.shift as usize)
        } else {
            num_traits::pow(x.recip(), (-self.shift) as usize)
        };
        Some(p * self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let ev = |p: &Poly| {
            p.c.iter().rev().fold(0.0, |acc, a| acc * x + a.to_f64().unwrap_or(f64::NAN))
        };
        x.powi(self.shift as i32) * ev(&self.num) / ev(&self.den)
    }

    fn add_impl(&self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = o.num.shift_up((o.shift - s) as usize);
        if self.den == o.den {
            return RatFunc::from_parts(s, a.add(&b), self.den.clone());
        }
        let n = a.mul(&o.den).add(&b.mul(&self.den));
        RatFunc::from_parts(s, n, self.den.mul(&o.den))
    }

    fn mul_impl(&self, o: &RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { shift, num: self.num.mul(&o.num), den: Poly::one() };
        }
        RatFunc::from_parts(shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        self.add_impl(o)
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add_impl(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        self.mul_impl(o)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFunc::from_parts(-self.shift, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Option<RatFunc> {
        o.inv().map(|i| self.mul_impl(&i))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn powi(&self, n: i64) -> Option<RatFunc> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul_impl(&base);
        }
        Some(acc)
    }

    /// Numerator and denominator as ordinary polynomials (negative shift moved down).
    fn display_parts(&self) -> (Poly, Poly) {
        if self.shift >= 0 {
            (self.num.shift_up(self.shift as usize), self.den.clone())
        } else {
            (self.num.clone(), self.den.shift_up((-self.shift) as usize))
        }
    }
}

impl super::Ring for RatFunc {
    type Ctx = ();
    const EXACT: bool = true;

    fn zero_in(_: &()) -> Self {
        RatFunc::zero()
    }
    fn one_in(_: &()) -> Self {
        RatFunc::one()
    }
    fn from_rational(r: &BigRational, _: &()) -> Self {
        RatFunc::constant(r.clone())
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn negate(&self) -> Self {
        RatFunc::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn is_nil(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.num
            .c
            .iter()
            .map(|a| a.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
    fn pivot_score(&self) -> f64 {
        if self.num.is_zero() {
            return 0.0;
        }
        let size = self.num.c.len() + self.den.c.len();
        let bits: u64 = self.num.c.iter().map(|a| a.numer().bits() + a.denom().bits()).sum();
        1.0 / (size as f64 + bits as f64 / 64.0)
    }
}

impl QRing for RatFunc {
    fn q_pow(n: i64, _: &()) -> Self {
        RatFunc::q_pow(n)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.display_parts();
        if d.is_one() {
            return n.fmt_terms(f);
        }
        if n.term_count() > 1 {
            write!(f, "(")?;
            n.fmt_terms(f)?;
            write!(f, ")")?;
        } else {
            n.fmt_terms(f)?;
        }
        write!(f, "/")?;
        if d.term_count() > 1 {
            write!(f, "(")?;
            d.fmt_terms(f)?;
            write!(f, ")")
        } else {
            d.fmt_terms(f)
        }
    }
}

const MAX_EXPONENT: i64 = 512;
const MAX_DEPTH: usize = 64;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn expr(&mut self) -> Result<RatFunc> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).ok_or_else(|| self.err("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.err("nesting too deep"));
            }
            let v = self.unary()?.neg();
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.integer()?;
        let e = n.to_i64().filter(|e| *e <= MAX_EXPONENT).ok_or_else(|| self.err("exponent too large"))?;
        let e = if neg { -e } else { e };
        base.powi(e).ok_or_else(|| self.err("negative power of zero"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse::<BigInt>().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(RatFunc::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::constant(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected q, integer or '('")),
        }
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    /// Parses expressions in `q` built from integers, `+ - * / ^` and parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, depth: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
