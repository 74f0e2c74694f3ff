//! Dense matrices over any [`Ring`], tensor-leg bookkeeping, formal matrix
//! series and exact linear solving.

mod linalg;
mod numeric;
mod series;

use std::fmt;

use crate::coeff::Ring;
use crate::error::{Error, Result};

pub use linalg::{nullspace, solve_intertwiner, solve_linear};
pub use numeric::{cond, from_dmatrix, svd_nullspace, to_dmatrix};
pub use series::{mat_exp, matrix_series_exp, matrix_series_log, matrix_series_scaled_log};

#[derive(Clone, PartialEq)]
pub struct Mat<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    ctx: T::Ctx,
}

impl<T: Ring> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize, ctx: &T::Ctx) -> Self {
        Mat { rows, cols, data: vec![T::zero_in(ctx); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity(n: usize, ctx: &T::Ctx) -> Self {
        let mut m = Mat::zeros(n, n, ctx);
        for i in 0..n {
            m.data[i * n + i] = T::one_in(ctx);
        }
        m
    }

    pub fn scalar(n: usize, x: &T, ctx: &T::Ctx) -> Self {
        let mut m = Mat::zeros(n, n, ctx);
        for i in 0..n {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    pub fn diag(d: Vec<T>, ctx: &T::Ctx) -> Self {
        let n = d.len();
        let mut m = Mat::zeros(n, n, ctx);
        for (i, x) in d.into_iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, ctx: &T::Ctx, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data, ctx: ctx.clone() }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, ctx: &T::Ctx) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect(), ctx: ctx.clone() })
    }

    /// Integer matrix.
    pub fn from_ints(rows: &[&[i64]], ctx: &T::Ctx) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(r, c, ctx, |i, j| T::from_int(rows[i][j], ctx))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ctx(&self) -> &T::Ctx {
        &self.ctx
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    fn check_same(&self, o: &Mat<T>, op: &str) {
        assert!(
            self.rows == o.rows && self.cols == o.cols,
            "{op}: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            o.rows,
            o.cols
        );
    }

    pub fn add(&self, o: &Mat<T>) -> Mat<T> {
        self.check_same(o, "add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn sub(&self, o: &Mat<T>) -> Mat<T> {
        self.check_same(o, "sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data, ctx: self.ctx.clone() }
    }

    pub fn neg(&self) -> Mat<T> {
        self.map(|x| x.negate())
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        if s.is_nil() {
            return Mat::zeros(self.rows, self.cols, &self.ctx);
        }
        self.map(|x| if x.is_nil() { x.clone() } else { x.mul(s) })
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: self.ctx.clone() }
    }

    /// Change of coefficient ring entrywise.
    pub fn convert<U: Ring>(&self, ctx: &U::Ctx, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<U>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data, ctx: ctx.clone() })
    }

    /// Product, skipping zero entries (most operators here are very sparse).
    pub fn mul(&self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "mul: {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        let mut out: Mat<T> = Mat::zeros(self.rows, o.cols, &self.ctx);
        let mut touched = vec![false; o.cols];
        for i in 0..self.rows {
            touched.iter_mut().for_each(|t| *t = false);
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_nil() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if b.is_nil() {
                        continue;
                    }
                    let slot: &mut T = &mut out.data[i * o.cols + j];
                    let p = a.mul(b);
                    *slot = if touched[j] { slot.add(&p) } else { p };
                    touched[j] = true;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero_in(&self.ctx);
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_nil() && !x.is_nil() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, &self.ctx, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero_in(&self.ctx);
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_nil())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_nil()))
    }

    /// Largest entry magnitude, the residual reported by checks.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Kronecker product, `self` on the left leg.
    pub fn kron(&self, o: &Mat<T>) -> Mat<T> {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Mat::zeros(r, c, &self.ctx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_nil() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_nil() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow_u(&self, n: u32) -> Mat<T> {
        let mut acc = Mat::identity(self.rows, &self.ctx);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, o: &Mat<T>) -> Mat<T> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn try_inverse(&self) -> Result<Mat<T>> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        solve_linear(self, &Mat::identity(self.rows, &self.ctx))
    }

    /// Entries as strings, row by row.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.rows)
            .map(|i| serde_json::Value::Array((0..self.cols).map(|j| self.get(i, j).to_string().into()).collect()))
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<T> {
        Mat::from_fn(rows.len(), cols.len(), &self.ctx, |i, j| self.get(rows[i], cols[j]).clone())
    }
}

/// `1 x .. x op x .. x 1` with `op` on leg `leg` of a tensor product with leg dimensions `dims`.
pub fn place_on_leg<T: Ring>(op: &Mat<T>, leg: usize, dims: &[usize]) -> Mat<T> {
    assert!(op.is_square() && op.rows == dims[leg], "operator does not fit leg {leg}");
    let ctx = op.ctx();
    let left: usize = dims[..leg].iter().product();
    let right: usize = dims[leg + 1..].iter().product();
    let d = dims[leg];
    let n = left * d * right;
    let mut out = Mat::zeros(n, n, ctx);
    for l in 0..left {
        for i in 0..d {
            for j in 0..d {
                let a = op.get(i, j);
                if a.is_nil() {
                    continue;
                }
                for r in 0..right {
                    out.set((l * d + i) * right + r, (l * d + j) * right + r, a.clone());
                }
            }
        }
    }
    out
}

/// Operator moving the vector on leg `k` to leg `perm[k]`. Leg dimensions of the
/// input are `dims`. Composition: `permute_legs(s) * permute_legs(t) = permute_legs(s o t)`.
pub fn permute_legs<T: Ring>(perm: &[usize], dims: &[usize], ctx: &T::Ctx) -> Mat<T> {
    let n = perm.len();
    assert_eq!(dims.len(), n);
    let mut seen = vec![false; n];
    for &p in perm {
        assert!(p < n && !seen[p], "not a permutation");
        seen[p] = true;
    }
    let mut out_dims = vec![0; n];
    for k in 0..n {
        out_dims[perm[k]] = dims[k];
    }
    let total: usize = dims.iter().product();
    let mut out = Mat::zeros(total, total, ctx);
    let mut idx = vec![0usize; n];
    for flat in 0..total {
        let mut rem = flat;
        for k in (0..n).rev() {
            idx[k] = rem % dims[k];
            rem /= dims[k];
        }
        let mut target = 0;
        for leg in 0..n {
            // which input leg lands on output leg `leg`
            let k = perm.iter().position(|&p| p == leg).unwrap();
            target = target * out_dims[leg] + idx[k];
        }
        out.set(target, flat, T::one_in(ctx));
    }
    out
}

/// Place a two-leg operator on legs `(a, b)` of a tensor product.
pub fn place_on_legs2<T: Ring>(op: &Mat<T>, a: usize, b: usize, dims: &[usize]) -> Mat<T> {
    assert!(a != b);
    let n = dims.len();
    // move legs a, b to positions 0, 1, act, move back
    let mut perm = vec![0; n];
    perm[a] = 0;
    perm[b] = 1;
    let mut next = 2;
    for (k, p) in perm.iter_mut().enumerate() {
        if k != a && k != b {
            *p = next;
            next += 1;
        }
    }
    let ctx = op.ctx();
    let to_front = permute_legs::<T>(&perm, dims, ctx);
    let mut front_dims = vec![0; n];
    for k in 0..n {
        front_dims[perm[k]] = dims[k];
    }
    let rest: usize = front_dims[2..].iter().product();
    let acting = op.kron(&Mat::identity(rest, ctx));
    let mut inv_perm = vec![0; n];
    for k in 0..n {
        inv_perm[perm[k]] = k;
    }
    let back = permute_legs::<T>(&inv_perm, &front_dims, ctx);
    back.mul(&acting).mul(&to_front)
}

#[cfg(test)]
mod tests;
