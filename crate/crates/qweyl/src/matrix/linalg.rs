use std::collections::BTreeMap;

use super::Mat;
use crate::coeff::Ring;
use crate::error::{Error, Result};

type Row<T> = BTreeMap<usize, T>;

fn sparse_rows<T: Ring>(m: &Mat<T>) -> Vec<Row<T>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .filter(|&j| !m.get(i, j).is_nil())
                .map(|j| (j, m.get(i, j).clone()))
                .collect()
        })
        .collect()
}

/// `r -= f * p`
fn axpy<T: Ring>(r: &mut Row<T>, f: &T, p: &Row<T>) {
    for (j, v) in p {
        let t = f.mul(v);
        match r.get_mut(j) {
            Some(x) => {
                let y = x.sub(&t);
                if y.is_nil() {
                    r.remove(j);
                } else {
                    *x = y;
                }
            }
            None => {
                if !t.is_nil() {
                    r.insert(*j, t.negate());
                }
            }
        }
    }
}

/// Row echelon form over the first `ncols` columns. Returns pivot rows in
/// creation order (pivot column, row normalised to 1 there) and leftover rows.
#[allow(clippy::type_complexity)]
fn echelon<T: Ring>(mut rows: Vec<Row<T>>, ncols: usize) -> Result<(Vec<(usize, Row<T>)>, Vec<Row<T>>)> {
    let mut pivots = vec![];
    for col in 0..ncols {
        let mut best: Option<(usize, f64)> = None;
        let mut blocked = false;
        for (i, r) in rows.iter().enumerate() {
            if let Some(x) = r.get(&col) {
                if x.is_unit() {
                    let s = x.pivot_score();
                    if best.is_none_or(|(_, b)| s > b) {
                        best = Some((i, s));
                    }
                } else {
                    blocked = true;
                }
            }
        }
        let Some((i, _)) = best else {
            if blocked {
                return Err(Error::Unsupported("elimination needs a non-unit pivot".into()));
            }
            continue;
        };
        let mut p = rows.swap_remove(i);
        let inv = p[&col].try_inv().expect("unit pivot");
        for v in p.values_mut() {
            *v = v.mul(&inv);
        }
        for r in rows.iter_mut() {
            if let Some(f) = r.get(&col).cloned() {
                axpy(r, &f, &p);
            }
        }
        pivots.push((col, p));
    }
    Ok((pivots, rows))
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<T: Ring>(m: &Mat<T>) -> Result<Vec<Vec<T>>> {
    if let Some(k) = T::nullspace_override(m) {
        return Ok(k);
    }
    nullspace_sparse(sparse_rows(m), m.cols(), m.ctx())
}

fn nullspace_sparse<T: Ring>(rows: Vec<Row<T>>, ncols: usize, ctx: &T::Ctx) -> Result<Vec<Vec<T>>> {
    let (pivots, _) = echelon(rows, ncols)?;
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for (c, _) in &pivots {
            v[*c] = true;
        }
        v
    };
    let mut basis = vec![];
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![T::zero_in(ctx); ncols];
        x[free] = T::one_in(ctx);
        for (pc, p) in pivots.iter().rev() {
            let mut acc = T::zero_in(ctx);
            for (j, v) in p {
                if j != pc && !x[*j].is_nil() {
                    acc = acc.add(&v.mul(&x[*j]));
                }
            }
            x[*pc] = acc.negate();
        }
        basis.push(x);
    }
    Ok(basis)
}

/// The unique `x` with `a x = b`. Errors when `a` lacks full column rank or,
/// for exact rings, when the system is inconsistent.
pub fn solve_linear<T: Ring>(a: &Mat<T>, b: &Mat<T>) -> Result<Mat<T>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!("solve: {} rows vs {} rows", a.rows(), b.rows())));
    }
    let ctx = a.ctx().clone();
    let n = a.cols();
    let rows: Vec<Row<T>> = (0..a.rows())
        .map(|i| {
            let mut r: Row<T> = (0..n).filter(|&j| !a.get(i, j).is_nil()).map(|j| (j, a.get(i, j).clone())).collect();
            for j in 0..b.cols() {
                if !b.get(i, j).is_nil() {
                    r.insert(n + j, b.get(i, j).clone());
                }
            }
            r
        })
        .collect();
    let (pivots, rest) = echelon(rows, n)?;
    if pivots.len() < n {
        return Err(Error::Domain("matrix does not have full column rank".into()));
    }
    if T::EXACT && rest.iter().any(|r| !r.is_empty()) {
        return Err(Error::Domain("inconsistent linear system".into()));
    }
    let mut x: Mat<T> = Mat::zeros(n, b.cols(), &ctx);
    for (pc, p) in pivots.iter().rev() {
        for j in 0..b.cols() {
            let mut acc = p.get(&(n + j)).cloned().unwrap_or_else(|| T::zero_in(&ctx));
            for (k, v) in p.range(..n) {
                if k != pc && !x.get(*k, j).is_nil() {
                    acc = acc.sub(&v.mul(x.get(*k, j)));
                }
            }
            x.set(*pc, j, acc);
        }
    }
    Ok(x)
}

/// A maximal-rank `X` with `X A_i = B_i X` for all `i`, or `None` if only zero
/// works. `X` has `dim B` rows and `dim A` columns.
pub fn solve_intertwiner<T: Ring>(gens_a: &[Mat<T>], gens_b: &[Mat<T>]) -> Result<Option<Mat<T>>> {
    if gens_a.len() != gens_b.len() || gens_a.is_empty() {
        return Err(Error::Dimension("generator lists differ in length".into()));
    }
    let da = gens_a[0].rows();
    let db = gens_b[0].rows();
    if gens_a.iter().any(|g| g.rows() != da || g.cols() != da) || gens_b.iter().any(|g| g.rows() != db || g.cols() != db) {
        return Err(Error::Dimension("generators must be square of a common size".into()));
    }
    let ctx = gens_a[0].ctx().clone();
    // diagonal pairs (weights) kill most unknowns outright
    let mut live = vec![true; db * da];
    let mut diagonal = vec![false; gens_a.len()];
    if T::EXACT {
        for (g, (a, b)) in gens_a.iter().zip(gens_b).enumerate() {
            if a.is_diagonal() && b.is_diagonal() {
                diagonal[g] = true;
                for r in 0..db {
                    for c in 0..da {
                        if a.get(c, c) != b.get(r, r) {
                            live[r * da + c] = false;
                        }
                    }
                }
            }
        }
    }
    let unknowns: Vec<usize> = (0..db * da).filter(|&u| live[u]).collect();
    if unknowns.is_empty() {
        return Ok(None);
    }
    let pos: BTreeMap<usize, usize> = unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let mut eqs: Vec<Row<T>> = vec![];
    for (g, (a, b)) in gens_a.iter().zip(gens_b).enumerate() {
        if diagonal[g] {
            continue;
        }
        for r in 0..db {
            for c in 0..da {
                // sum_k X[r,k] A[k,c] - sum_k B[r,k] X[k,c]
                let mut row: BTreeMap<usize, T> = BTreeMap::new();
                for k in 0..da {
                    let v = a.get(k, c);
                    if let (false, Some(&p)) = (v.is_nil(), pos.get(&(r * da + k))) {
                        let e = row.entry(p).or_insert_with(|| T::zero_in(&ctx));
                        *e = e.add(v);
                    }
                }
                for k in 0..db {
                    let v = b.get(r, k);
                    if let (false, Some(&p)) = (v.is_nil(), pos.get(&(k * da + c))) {
                        let e = row.entry(p).or_insert_with(|| T::zero_in(&ctx));
                        *e = e.sub(v);
                    }
                }
                row.retain(|_, v| !v.is_nil());
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    let kernel = if eqs.is_empty() {
        (0..unknowns.len())
            .map(|i| {
                let mut v = vec![T::zero_in(&ctx); unknowns.len()];
                v[i] = T::one_in(&ctx);
                v
            })
            .collect()
    } else if T::EXACT {
        nullspace_sparse(eqs, unknowns.len(), &ctx)?
    } else {
        let mut dense: Mat<T> = Mat::zeros(eqs.len(), unknowns.len(), &ctx);
        for (i, r) in eqs.into_iter().enumerate() {
            for (j, v) in r {
                dense.set(i, j, v);
            }
        }
        nullspace(&dense)?
    };
    if kernel.is_empty() {
        return Ok(None);
    }
    // a fixed generic combination of the kernel basis
    let mut x: Mat<T> = Mat::zeros(db, da, &ctx);
    for (t, v) in kernel.iter().enumerate() {
        let w = T::from_int(1 + ((7 * t as i64) % 11), &ctx);
        for (i, val) in v.iter().enumerate() {
            if !val.is_nil() {
                let u = unknowns[i];
                let cur = x.get(u / da, u % da).add(&w.mul(val));
                x.set(u / da, u % da, cur);
            }
        }
    }
    Ok(Some(x))
}
