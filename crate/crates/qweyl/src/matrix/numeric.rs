use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Mat;
use crate::coeff::ComplexCtx;

/// Relative singular value cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-8;

pub fn to_dmatrix(m: &Mat<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| *m.get(i, j))
}

pub fn from_dmatrix(m: &DMatrix<Complex64>, ctx: &ComplexCtx) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), ctx, |i, j| m[(i, j)])
}

/// Right null space from the SVD, singular values below `RANK_TOL * max` count as zero.
pub fn svd_nullspace(m: &Mat<Complex64>) -> Vec<Vec<Complex64>> {
    let n = m.cols();
    if n == 0 {
        return vec![];
    }
    // pad to at least square so the thin SVD carries all right singular vectors
    let rows = m.rows().max(n);
    let a = DMatrix::from_fn(rows, n, |i, j| if i < m.rows() { *m.get(i, j) } else { Complex64::new(0.0, 0.0) });
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = RANK_TOL * smax.max(f64::MIN_POSITIVE);
    let mut out = vec![];
    for (k, s) in svd.singular_values.iter().enumerate() {
        if *s <= cut {
            out.push((0..n).map(|j| vt[(k, j)].conj()).collect());
        }
    }
    out
}

/// 2-norm condition number.
pub fn cond(m: &Mat<Complex64>) -> f64 {
    let a = to_dmatrix(m);
    let s = a.singular_values();
    let max = s.iter().cloned().fold(0.0, f64::max);
    let min = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
