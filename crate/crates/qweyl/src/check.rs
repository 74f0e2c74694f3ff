//! Named residuals produced by the verification routines.

use serde::Serialize;

use crate::coeff::Ring;
use crate::matrix::Mat;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, residual: f64) -> Self {
        IdentityCheck { name: name.into(), residual }
    }

    /// `max |lhs - rhs|` over entries.
    pub fn compare<T: Ring>(name: impl Into<String>, lhs: &Mat<T>, rhs: &Mat<T>) -> Self {
        IdentityCheck::new(name, lhs.sub(rhs).max_magnitude())
    }

    /// Exact identity.
    pub fn passed(&self) -> bool {
        self.residual == 0.0
    }

    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// The failing checks, for assertion messages.
pub fn failures(checks: &[IdentityCheck], tol: f64) -> Vec<&IdentityCheck> {
    checks.iter().filter(|c| !c.within(tol)).collect()
}
