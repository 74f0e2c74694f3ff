use super::QRing;
use crate::error::{Error, Result};

/// Balanced quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`, computed as a sum
/// so it also makes sense at `q = 1`.
pub fn q_integer<R: QRing>(n: i64, ctx: &R::Ctx) -> R {
    if n < 0 {
        return q_integer::<R>(-n, ctx).negate();
    }
    let mut acc = R::zero_in(ctx);
    for j in 0..n {
        acc = acc.add(&R::q_pow(n - 1 - 2 * j, ctx));
    }
    acc
}

pub fn q_factorial<R: QRing>(n: u32, ctx: &R::Ctx) -> R {
    let mut acc = R::one_in(ctx);
    for j in 1..=n as i64 {
        acc = acc.mul(&q_integer::<R>(j, ctx));
    }
    acc
}

/// Balanced Gaussian binomial via the q-Pascal rule, no division needed.
pub fn q_binomial<R: QRing>(n: i64, m: i64, ctx: &R::Ctx) -> Result<R> {
    if n < 0 || m < 0 || m > n {
        return Err(Error::Domain(format!("q_binomial({n}, {m}) needs 0 <= m <= n")));
    }
    let n = n as usize;
    let m = m as usize;
    // row[j] = [i choose j] for the current i
    let mut row = vec![R::one_in(ctx)];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let left = if j < i {
                row[j].mul(&R::q_pow(j as i64, ctx))
            } else {
                R::zero_in(ctx)
            };
            let right = if j > 0 {
                row[j - 1].mul(&R::q_pow(-((i - j) as i64), ctx))
            } else {
                R::zero_in(ctx)
            };
            next.push(left.add(&right));
        }
        row = next;
    }
    Ok(row.swap_remove(m))
}
