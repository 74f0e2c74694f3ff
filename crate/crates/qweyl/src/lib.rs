//! Exact and numerical machinery for comparing the monodromy of trigonometric
//! Casimir connections of gl2/sl2 with quantum Weyl group operators acting on
//! tensor products of evaluation modules of quantum loop algebras.

pub mod check;
pub mod error;
pub mod coeff;
pub mod matrix;
pub mod monomial;
pub mod classical;
pub mod qmatrix;
pub mod uq;
pub mod qloop;
pub mod connections;
pub mod braid;
pub mod series_identities;
pub mod report;

pub use error::{Error, Result};
