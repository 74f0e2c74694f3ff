//! Monomial bases of homogeneous components of polynomial rings in a `k x n`
//! matrix of variables. Exponent matrices are stored flattened row-major and
//! sorted in decreasing lexicographic order, so `x_11^d` comes first.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialBasis {
    pub k: usize,
    pub n: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

/// All ways to write `d` as an ordered sum of `parts` nonnegative integers.
pub fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl MonomialBasis {
    fn from_exps(k: usize, n: usize, mut exps: Vec<Vec<u32>>) -> Self {
        exps.sort_by(|a, b| b.cmp(a));
        exps.dedup();
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { k, n, exps, index }
    }

    /// Monomials of total degree `d`.
    pub fn total_degree(k: usize, n: usize, d: u32) -> Self {
        MonomialBasis::from_exps(k, n, compositions(d, k * n))
    }

    /// Monomials whose row `a` has degree `row_deg[a]`.
    pub fn row_degrees(n: usize, row_deg: &[u32]) -> Self {
        let k = row_deg.len();
        let mut exps: Vec<Vec<u32>> = vec![vec![]];
        for &l in row_deg {
            let rows = compositions(l, n);
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    rows.iter().map(move |r| {
                        let mut e = e.clone();
                        e.extend_from_slice(r);
                        e
                    })
                })
                .collect();
        }
        MonomialBasis::from_exps(k, n, exps)
    }

    /// Monomials whose column `j` has degree `col_deg[j]`.
    pub fn col_degrees(k: usize, col_deg: &[u32]) -> Self {
        let n = col_deg.len();
        let t = MonomialBasis::row_degrees(k, col_deg);
        // transpose each exponent matrix
        let exps = t
            .exps
            .iter()
            .map(|e| {
                let mut out = vec![0; k * n];
                for j in 0..n {
                    for a in 0..k {
                        out[a * n + j] = e[j * k + a];
                    }
                }
                out
            })
            .collect();
        MonomialBasis::from_exps(k, n, exps)
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn entry(&self, i: usize, a: usize, j: usize) -> u32 {
        self.exps[i][a * self.n + j]
    }

    pub fn row_degree(&self, i: usize, a: usize) -> u32 {
        (0..self.n).map(|j| self.entry(i, a, j)).sum()
    }

    pub fn col_degree(&self, i: usize, j: usize) -> u32 {
        (0..self.k).map(|a| self.entry(i, a, j)).sum()
    }

    /// Index of `e + eps_{plus} - eps_{minus}` (flat positions), if it is in the basis.
    pub fn shifted(&self, i: usize, plus: usize, minus: usize) -> Result<usize> {
        let mut e = self.exps[i].clone();
        if e[minus] == 0 {
            return Err(Error::Domain("negative exponent".into()));
        }
        e[minus] -= 1;
        e[plus] += 1;
        self.index_of(&e).ok_or_else(|| Error::Domain("component is not closed under this operator".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_highest_weight_first() {
        let b = MonomialBasis::row_degrees(2, &[2]);
        assert_eq!(b.exps(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        let c = MonomialBasis::total_degree(2, 2, 1);
        assert_eq!(c.exp(0), &[1, 0, 0, 0]);
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn component_sizes() {
        // dim of degree-d polynomials in m variables is C(d+m-1, m-1)
        assert_eq!(MonomialBasis::total_degree(3, 2, 3).len(), 56);
        assert_eq!(MonomialBasis::row_degrees(2, &[1, 2, 2]).len(), 2 * 3 * 3);
        let cols = MonomialBasis::col_degrees(3, &[1, 2]);
        assert_eq!(cols.len(), 3 * 6);
        assert!(cols.exps().iter().all(|e| e[0] + e[2] + e[4] == 1));
    }
}
