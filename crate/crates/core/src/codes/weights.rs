//! Higher weights `d_r(C) = min{ ‖D‖ : D ≤ C, dim D = r }`, computed two
//! independent ways:
//!
//! * over subcodes: every `r`-dimensional subspace of the message space, its
//!   support the union of its basis codewords' supports;
//! * over sections: every `(k−r)`-dimensional subspace `W` of `F_q^k`,
//!   `d_r = n − max |{ columns in W }|`.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::code::LinearCode;
use super::field::{Elem, FieldTable};
use super::linalg::RrefSpace;
use crate::combinat::gaussian_binom;
use crate::error::{invalid, Error, Result};
use crate::exec::{self, Exec};

pub const DEFAULT_SUBSPACE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMethod {
    Exhaustive,
    SectionMax,
}

/// `d_1, …, d_k` with the method used for each entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightHierarchy {
    pub values: Vec<usize>,
    pub methods: Vec<WeightMethod>,
}

impl WeightHierarchy {
    /// `0 < d_1 < … < d_k = n`.
    pub fn is_strictly_increasing_to(&self, n: usize) -> bool {
        self.values.first().is_some_and(|&d| d > 0)
            && self.values.windows(2).all(|w| w[0] < w[1])
            && self.values.last() == Some(&n)
    }
}

fn subspace_budget(k: usize, r: usize, q: usize, budget: u128) -> Result<()> {
    let count = gaussian_binom(k as u64, r as u64, q as u64)?;
    if count > budget {
        return Err(Error::BudgetExceeded { what: "subspace enumeration", count, budget });
    }
    Ok(())
}

/// Codeword of message `u` (length `k`).
fn encode(f: &FieldTable, code: &LinearCode, u: &[Elem]) -> Vec<Elem> {
    let mut w = vec![0 as Elem; code.n];
    for (coef, row) in u.iter().zip(&code.generator) {
        if *coef == 0 {
            continue;
        }
        for (x, &g) in w.iter_mut().zip(row) {
            *x = f.add(*x, f.mul(*coef, g));
        }
    }
    w
}

fn support(word: &[Elem]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(word.len());
    for (i, &x) in word.iter().enumerate() {
        if x != 0 {
            s.insert(i);
        }
    }
    s
}

/// `d_r` by enumerating every `r`-dimensional subcode once, via reduced row
/// echelon forms over the message space.
pub fn higher_weight_exhaustive(f: &FieldTable, code: &LinearCode, r: usize, exec: Exec, budget: u128) -> Result<usize> {
    if r == 0 {
        return Ok(0);
    }
    if r > code.k {
        return Err(invalid(format!("r = {r} exceeds the dimension {}", code.k)));
    }
    subspace_budget(code.k, r, f.q(), budget)?;
    let space = RrefSpace::new(r, code.k, f.q())?;
    let best = exec::map_reduce(
        exec,
        space.pivot_sets().len(),
        usize::MAX,
        |i| {
            let mut best = usize::MAX;
            let mut acc = FixedBitSet::with_capacity(code.n);
            space.for_each_in_cell(space.pivot_sets()[i], |basis| {
                acc.clear();
                for u in basis {
                    acc.union_with(&support(&encode(f, code, u)));
                }
                best = best.min(acc.count_ones(..));
            });
            best
        },
        usize::min,
    );
    Ok(best)
}

/// `d_r = n − max |X ∩ Π|` over projective subspaces `Π` of codimension `r`,
/// each given as a `(k−r)`-dimensional `W ≤ F_q^k`.
pub fn higher_weight_by_sections(f: &FieldTable, code: &LinearCode, r: usize, exec: Exec, budget: u128) -> Result<usize> {
    if r > code.k {
        return Err(invalid(format!("r = {r} exceeds the dimension {}", code.k)));
    }
    if r == code.k {
        return Ok(code.n);
    }
    if r == 0 {
        return Ok(0);
    }
    let dim = code.k - r;
    subspace_budget(code.k, dim, f.q(), budget)?;
    let space = RrefSpace::new(dim, code.k, f.q())?;
    let columns: Vec<Vec<Elem>> = (0..code.n).map(|j| code.column(j)).collect();
    let most = exec::map_reduce(
        exec,
        space.pivot_sets().len(),
        0usize,
        |i| {
            let pivots: Vec<usize> = space.pivot_sets()[i].iter().map(|c| c - 1).collect();
            let mut most = 0usize;
            space.for_each_in_cell(space.pivot_sets()[i], |basis| {
                let inside = columns.iter().filter(|v| in_row_space(f, basis, &pivots, v)).count();
                most = most.max(inside);
            });
            most
        },
        usize::max,
    );
    Ok(code.n - most)
}

/// Membership in the row space of a reduced row echelon `basis`: `v` must
/// equal `Σ v[p_i]·row_i`.
fn in_row_space(f: &FieldTable, basis: &[Vec<Elem>], pivots: &[usize], v: &[Elem]) -> bool {
    (0..v.len()).all(|c| {
        let mut x: Elem = 0;
        for (row, &p) in basis.iter().zip(pivots) {
            x = f.add(x, f.mul(v[p], row[c]));
        }
        x == v[c]
    })
}

/// The complete hierarchy `d_1, …, d_k` by one method.
pub fn weight_hierarchy(f: &FieldTable, code: &LinearCode, method: WeightMethod, exec: Exec, budget: u128) -> Result<WeightHierarchy> {
    let values = (1..=code.k)
        .map(|r| match method {
            WeightMethod::Exhaustive => higher_weight_exhaustive(f, code, r, exec, budget),
            WeightMethod::SectionMax => higher_weight_by_sections(f, code, r, exec, budget),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightHierarchy { methods: vec![method; values.len()], values })
}
