use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QRing;

impl super::Ring for BigRational {
    type Ctx = ();
    const EXACT: bool = true;

    fn zero_in(_: &()) -> Self {
        BigRational::zero()
    }
    fn one_in(_: &()) -> Self {
        BigRational::one()
    }
    fn from_rational(r: &BigRational, _: &()) -> Self {
        r.clone()
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
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_nil(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn pivot_score(&self) -> f64 {
        if <BigRational as Zero>::is_zero(self) {
            0.0
        } else {
            1.0 / (1.0 + (self.numer().bits() + self.denom().bits()) as f64)
        }
    }
}

/// The classical limit: `q = 1`.
impl QRing for BigRational {
    fn q_pow(_: i64, _: &()) -> Self {
        BigRational::one()
    }
}
