//! Coefficient rings.
//!
//! Everything above this module is generic over [`Ring`] (plain arithmetic) or
//! [`QRing`] (a ring that also knows its deformation parameter `q`). The
//! backends are
//!
//! * `BigRational`: the classical limit, `q = 1`;
//! * [`RatFunc`]: the field `Q(q)`, exact;
//! * [`Series`]: `Q[[h]]/(h^N)` with `q = e^{h/2}`;
//! * `Complex64`: floats, with `q = e^{h/2}` for a numerical `h`.

mod complex;
mod qcomb;
mod ratfunc;
mod rational;
mod series;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use complex::ComplexCtx;
pub use qcomb::{q_binomial, q_factorial, q_integer};
pub use ratfunc::{Poly, RatFunc};
pub use series::{embed_q_series, Series, DEFAULT_ORDER};

pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    /// Data needed to manufacture constants (series order, numerical `h`, ...).
    type Ctx: Clone + Debug + PartialEq + Send + Sync + 'static;
    /// Whether equality is meaningful (as opposed to floating point).
    const EXACT: bool;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn from_rational(r: &BigRational, ctx: &Self::Ctx) -> Self;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn is_nil(&self) -> bool;

    /// Size used for residual reporting. Zero exactly when `is_nil`.
    fn magnitude(&self) -> f64;

    /// Units are the only admissible pivots in elimination.
    fn is_unit(&self) -> bool {
        !self.is_nil()
    }

    /// Preference among admissible pivots, larger is better.
    fn pivot_score(&self) -> f64 {
        self.magnitude()
    }

    fn from_int(n: i64, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)), ctx)
    }

    fn from_frac(n: i64, d: i64, ctx: &Self::Ctx) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)), ctx)
    }

    fn try_div(&self, o: &Self) -> Option<Self> {
        o.try_inv().map(|i| self.mul(&i))
    }

    fn scale_int(&self, n: i64, ctx: &Self::Ctx) -> Self {
        self.mul(&Self::from_int(n, ctx))
    }

    fn pow_u(&self, n: u32, ctx: &Self::Ctx) -> Self {
        let mut acc = Self::one_in(ctx);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Ring-specific kernel computation, used instead of exact elimination.
    fn nullspace_override(_m: &crate::matrix::Mat<Self>) -> Option<Vec<Vec<Self>>> {
        None
    }

    /// Integer power, negative exponents need a unit.
    fn powi(&self, n: i64, ctx: &Self::Ctx) -> Option<Self> {
        if n >= 0 {
            Some(self.pow_u(n as u32, ctx))
        } else {
            self.try_inv().map(|i| i.pow_u((-n) as u32, ctx))
        }
    }
}

/// A ring with a distinguished invertible element `q`.
pub trait QRing: Ring {
    fn q_pow(n: i64, ctx: &Self::Ctx) -> Self;

    fn q(ctx: &Self::Ctx) -> Self {
        Self::q_pow(1, ctx)
    }
}

#[cfg(test)]
mod tests;
