//! Dense matrices over a [`FieldTable`] and enumeration of reduced row echelon
//! forms, one per subspace.

use super::field::{Elem, FieldTable};
use crate::combinat::{Subset, SubsetIndexer};
use crate::error::Result;

/// Rank by Gaussian elimination on a copy.
pub fn rank(f: &FieldTable, rows: &[Vec<Elem>]) -> usize {
    let mut a: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = f.inv(a[rank][col]).expect("nonzero pivot");
        for x in &mut a[rank][col..] {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix.
pub fn det(f: &FieldTable, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    let mut a: Vec<Vec<Elem>> = m.to_vec();
    let mut acc: Elem = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| a[i][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(col, piv);
            acc = f.neg(acc);
        }
        let p = a[col][col];
        acc = f.mul(acc, p);
        let inv = f.inv(p).expect("nonzero pivot");
        let (top, below) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below {
            if row[col] != 0 {
                let factor = f.mul(row[col], inv);
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
    }
    acc
}

/// Maximal minors of a `rows × cols` matrix, one per `rows`-subset of columns
/// in colex order.
pub fn maximal_minors(f: &FieldTable, mat: &[Vec<Elem>], column_sets: &[Subset]) -> Vec<Elem> {
    let mut sub: Vec<Vec<Elem>> = vec![Vec::with_capacity(mat.len()); mat.len()];
    column_sets
        .iter()
        .map(|cols| {
            for (row, out) in mat.iter().zip(sub.iter_mut()) {
                out.clear();
                out.extend(cols.iter().map(|c| row[c - 1]));
            }
            det(f, &sub)
        })
        .collect()
}

/// The reduced row echelon `rows × cols` matrices over `GF(q)`, grouped by
/// pivot set.
///
/// Pivot sets come in colex order; within a pivot set the free entries, read
/// row by row, run through `GF(q)^f` in lexicographic order.
pub struct RrefSpace {
    rows: usize,
    cols: usize,
    q: usize,
    pivot_sets: Vec<Subset>,
}

impl RrefSpace {
    pub fn new(rows: usize, cols: usize, q: usize) -> Result<Self> {
        let pivot_sets = SubsetIndexer::new(cols, rows)?.all();
        Ok(RrefSpace { rows, cols, q, pivot_sets })
    }

    pub fn pivot_sets(&self) -> &[Subset] {
        &self.pivot_sets
    }

    /// Free positions `(row, col)` for a pivot set, row-major.
    pub fn free_positions(&self, pivots: Subset) -> Vec<(usize, usize)> {
        let pv: Vec<usize> = pivots.iter().map(|c| c - 1).collect();
        let mut out = Vec::new();
        for (i, &p) in pv.iter().enumerate() {
            for c in p + 1..self.cols {
                if !pv.contains(&c) {
                    out.push((i, c));
                }
            }
        }
        out
    }

    /// Number of matrices with the given pivot set, `q^f`.
    pub fn cell_size(&self, pivots: Subset) -> u128 {
        (self.q as u128).pow(self.free_positions(pivots).len() as u32)
    }

    /// Calls `visit` on every matrix with pivot set `pivots`, in order.
    pub fn for_each_in_cell(&self, pivots: Subset, mut visit: impl FnMut(&[Vec<Elem>])) {
        let pv: Vec<usize> = pivots.iter().map(|c| c - 1).collect();
        let free = self.free_positions(pivots);
        let mut mat = vec![vec![0 as Elem; self.cols]; self.rows];
        for (i, &p) in pv.iter().enumerate() {
            mat[i][p] = 1;
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            for (&(i, c), &d) in free.iter().zip(&digits) {
                mat[i][c] = d as Elem;
            }
            visit(&mat);
            // increment, last position least significant
            let mut pos = free.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < self.q {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::gaussian_binom;
    use std::collections::HashSet;

    fn span(f: &FieldTable, mat: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let q = f.q();
        let n = mat.len();
        let mut out = HashSet::new();
        for idx in 0..q.pow(n as u32) {
            let mut v = vec![0 as Elem; mat[0].len()];
            let mut x = idx;
            for row in mat {
                let c = (x % q) as Elem;
                x /= q;
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.add(*a, f.mul(c, b));
                }
            }
            out.insert(v);
        }
        let mut s: Vec<_> = out.into_iter().collect();
        s.sort();
        s
    }

    #[test]
    fn rref_enumeration_hits_each_subspace_once() {
        for q in [2u64, 3, 4] {
            let f = FieldTable::with_order(q).unwrap();
            for (rows, cols) in [(1, 3), (2, 4), (2, 3), (3, 4)] {
                if q == 4 && cols == 4 && rows == 2 {
                    continue;
                }
                let space = RrefSpace::new(rows, cols, q as usize).unwrap();
                let mut seen = HashSet::new();
                let mut total = 0u128;
                for &p in space.pivot_sets() {
                    let mut in_cell = 0u128;
                    space.for_each_in_cell(p, |m| {
                        assert_eq!(rank(&f, m), rows);
                        assert!(seen.insert(span(&f, m)));
                        in_cell += 1;
                    });
                    assert_eq!(in_cell, space.cell_size(p));
                    total += in_cell;
                }
                assert_eq!(total, gaussian_binom(cols as u64, rows as u64, q).unwrap());
            }
        }
    }

    #[test]
    fn determinant_and_rank() {
        let f = FieldTable::with_order(3).unwrap();
        assert_eq!(det(&f, &[vec![1, 2], vec![2, 1]]), 0);
        assert_eq!(det(&f, &[vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(rank(&f, &[vec![1, 2, 0], vec![2, 1, 0]]), 1);
        assert_eq!(rank(&f, &[vec![1, 0, 0], vec![0, 0, 1]]), 2);
        assert_eq!(det(&f, &[]), 1);
    }
}
