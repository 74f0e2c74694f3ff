use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{QRing, Ring};

/// Numerical backend context: `q = e^{hbar/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexCtx {
    pub hbar: Complex64,
}

impl ComplexCtx {
    pub fn new(hbar: Complex64) -> Self {
        ComplexCtx { hbar }
    }

    /// The context used when `q` plays no role.
    pub fn plain() -> Self {
        ComplexCtx { hbar: Complex64::new(0.0, 0.0) }
    }
}

impl Ring for Complex64 {
    type Ctx = ComplexCtx;
    const EXACT: bool = false;

    fn zero_in(_: &ComplexCtx) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_in(_: &ComplexCtx) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &BigRational, _: &ComplexCtx) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn is_nil(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn nullspace_override(m: &crate::matrix::Mat<Self>) -> Option<Vec<Vec<Self>>> {
        Some(crate::matrix::svd_nullspace(m))
    }
    fn from_int(n: i64, _: &ComplexCtx) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_frac(n: i64, d: i64, _: &ComplexCtx) -> Self {
        Complex64::new(n as f64 / d as f64, 0.0)
    }
}

impl QRing for Complex64 {
    fn q_pow(n: i64, ctx: &ComplexCtx) -> Self {
        (ctx.hbar * (n as f64 / 2.0)).exp()
    }
}
