use super::Mat;
use crate::coeff::Ring;
use crate::error::{Error, Result};

/// Coefficients `[c_1, .., c_R]` of a series `sum_r c_r z^-r`; products truncate at `R`.
fn series_mul<T: Ring>(a: &[Mat<T>], b: &[Mat<T>], ctx: &T::Ctx, n: usize) -> Vec<Mat<T>> {
    let dim = a.first().or(b.first()).map_or(0, |m| m.rows());
    let mut out = vec![Mat::zeros(dim, dim, ctx); a.len()];
    // coefficient of z^-(i+1) times z^-(j+1) lands at index i+j+1
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let k = i + j + 1;
            if k >= n {
                break;
            }
            if !y.is_zero() {
                out[k] = out[k].add(&x.mul(y));
            }
        }
    }
    out
}

/// Noncommutative formal log: `[L_1..L_R]` with `exp(sum L_r z^-r) = 1 + sum Psi_r z^-r`.
pub fn matrix_series_log<T: Ring>(psi: &[Mat<T>]) -> Vec<Mat<T>> {
    scaled_log_impl(psi, None)
}

/// `(1/c) log(1 + c X)` expanded without dividing by `c`.
pub fn matrix_series_scaled_log<T: Ring>(x: &[Mat<T>], c: &T) -> Vec<Mat<T>> {
    scaled_log_impl(x, Some(c))
}

fn scaled_log_impl<T: Ring>(x: &[Mat<T>], c: Option<&T>) -> Vec<Mat<T>> {
    let n = x.len();
    if n == 0 {
        return vec![];
    }
    let ctx = x[0].ctx().clone();
    let mut out: Vec<Mat<T>> = x.to_vec();
    let mut power = x.to_vec();
    let mut cpow = T::one_in(&ctx);
    for k in 2..=n {
        power = series_mul(&power, x, &ctx, n);
        if let Some(c) = c {
            cpow = cpow.mul(c);
        }
        let sign = if k % 2 == 0 { -1 } else { 1 };
        let coef = cpow.mul(&T::from_frac(sign, k as i64, &ctx));
        for (o, p) in out.iter_mut().zip(&power) {
            if !p.is_zero() {
                *o = o.add(&p.scale(&coef));
            }
        }
    }
    out
}

/// Formal exponential: `[Psi_1..Psi_R]` with `1 + sum Psi_r z^-r = exp(sum L_r z^-r)`.
pub fn matrix_series_exp<T: Ring>(l: &[Mat<T>]) -> Vec<Mat<T>> {
    let n = l.len();
    if n == 0 {
        return vec![];
    }
    let ctx = l[0].ctx().clone();
    let mut out: Vec<Mat<T>> = l.to_vec();
    let mut power = l.to_vec();
    let mut coef = T::one_in(&ctx);
    for k in 2..=n {
        power = series_mul(&power, l, &ctx, n);
        coef = coef.mul(&T::from_frac(1, k as i64, &ctx));
        for (o, p) in out.iter_mut().zip(&power) {
            if !p.is_zero() {
                *o = o.add(&p.scale(&coef));
            }
        }
    }
    out
}

/// `exp(m)` by its Taylor series. Exact rings need the terms to vanish
/// (nilpotent `m`, or `m` divisible by `h` in the series ring); floats stop
/// once terms drop below rounding and use scaling and squaring for large `m`.
pub fn mat_exp<T: Ring>(m: &Mat<T>) -> Result<Mat<T>> {
    let n = m.rows();
    let ctx = m.ctx().clone();
    if T::EXACT {
        let mut sum = Mat::identity(n, &ctx);
        let mut term = Mat::identity(n, &ctx);
        for k in 1..=4096i64 {
            term = term.mul(m).scale(&T::from_frac(1, k, &ctx));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&term);
        }
        return Err(Error::Convergence("exponential series does not terminate".into()));
    }
    let norm = m.max_magnitude() * n as f64;
    let mut squarings = 0;
    let mut scaled = m.clone();
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
        scaled = m.scale(&T::from_frac(1, 1i64 << squarings.min(60), &ctx));
    }
    let mut sum = Mat::identity(n, &ctx);
    let mut term = Mat::identity(n, &ctx);
    let mut converged = false;
    for k in 1..200i64 {
        term = term.mul(&scaled).scale(&T::from_frac(1, k, &ctx));
        sum = sum.add(&term);
        if term.max_magnitude() <= 1e-18 * (1.0 + sum.max_magnitude()) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("exponential series did not settle".into()));
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}
