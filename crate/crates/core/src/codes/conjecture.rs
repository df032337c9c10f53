//! Instance checker for the conjectured description of higher weights of
//! Grassmann and Schubert codes by subclose coordinate sections.
//!
//! For a code with row index set `I` and an `r ≤ |I|`, the harness computes
//!
//! * `d_r` exhaustively over subcodes,
//! * `n − max |X ∩ Π_Λ|` over the subclose `Λ ⊆ I` with `|Λ| = r`,
//! * `n − max |X ∩ Π_Λ|` over every `Λ ⊆ I` with `|Λ| = r`.
//!
//! The first two are compared for the verdict; the third localizes a failure
//! (subclose sections losing to other coordinate sections, or coordinate
//! sections losing to oblique ones).

use serde::Serialize;

use super::code::{build_code, LinearCode};
use super::field::FieldTable;
use super::grassmann::{enumerate_grassmannian, enumerate_schubert, PluckerPoint, SchubertIndex, DEFAULT_POINT_BUDGET};
use super::weights::{higher_weight_exhaustive, DEFAULT_SUBSPACE_BUDGET};
use crate::combinat::{binom, Subset, SubsetIndexer};
use crate::error::{invalid, Error, Result};
use crate::exec::{self, Exec};
use crate::families::{k_lambda, max_k_over, SearchOptions, DEFAULT_FAMILY_BUDGET};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    LhsLess,
    LhsGreater,
}

/// Parameter ranges where the conjectured equality is known to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProvenRegime {
    /// `C(ℓ,m)` with `1 ≤ r ≤ max{ℓ, m−ℓ} + 1`.
    GrassmannLow,
    /// `C(2,m)` with `r = max{2, m−2} + 2`.
    GrassmannPlaneNext,
    /// `C_α(ℓ,m)` with `r = 1`.
    SchubertMinimumDistance,
    /// `C_α(ℓ,m)` for submaximal `α` with `r ≤ max{ℓ, m−ℓ}`.
    SubmaximalLow,
    /// `r = k`: both sides equal `n`.
    FullDimension,
}

/// Budgets and execution policy for one harness.
#[derive(Debug, Clone, Copy)]
pub struct HarnessOptions {
    pub point_budget: u128,
    pub subspace_budget: u128,
    pub family_budget: u128,
    pub exec: Exec,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            point_budget: DEFAULT_POINT_BUDGET,
            subspace_budget: DEFAULT_SUBSPACE_BUDGET,
            family_budget: DEFAULT_FAMILY_BUDGET,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub ell: usize,
    pub m: usize,
    pub q: usize,
    pub alpha: Option<Vec<usize>>,
    pub r: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub schema_version: u32,
    pub params: ReportParams,
    pub d_r: usize,
    pub rhs_subclose: usize,
    pub rhs_all_coordinate: usize,
    pub verdict: Verdict,
    /// Colex-least subclose `Λ` attaining the largest section.
    pub witness_lambda: Vec<Subset>,
    /// Colex-least `Λ` of size `r` attaining the largest coordinate section.
    pub witness_all_coordinate: Vec<Subset>,
    /// `K_Λ` shared by every subclose family of this size.
    pub subclose_k: u64,
    pub subclose_count: usize,
    pub proven_regime: Option<ProvenRegime>,
}

impl ConjectureReport {
    /// False only when the instance lies in a proven regime and the sides differ.
    pub fn consistent(&self) -> bool {
        self.proven_regime.is_none() || self.verdict == Verdict::Equal
    }
}

/// Which regime, if any, covers `(ℓ, m, α, r)`.
pub fn proven_regime(ell: usize, m: usize, alpha: Option<&SchubertIndex>, r: usize, k: usize) -> Option<ProvenRegime> {
    if r == 0 {
        return None;
    }
    if r == k {
        return Some(ProvenRegime::FullDimension);
    }
    let top = ell.max(m - ell);
    if alpha.is_some() && r == 1 {
        return Some(ProvenRegime::SchubertMinimumDistance);
    }
    match alpha.filter(|a| !a.is_maximal()) {
        None if r <= top + 1 => Some(ProvenRegime::GrassmannLow),
        None if ell == 2 && r == 2usize.max(m - 2) + 2 => Some(ProvenRegime::GrassmannPlaneNext),
        Some(a) if a.is_submaximal() && r <= top => Some(ProvenRegime::SubmaximalLow),
        _ => None,
    }
}

/// A Grassmann or Schubert code with everything needed to check the
/// conjecture at several `r`, built once.
pub struct ConjectureHarness {
    field: FieldTable,
    ell: usize,
    m: usize,
    alpha: Option<SchubertIndex>,
    code: LinearCode,
    /// Bit `i` set when the point's coordinate at row `i` vanishes.
    zero_masks: Vec<u64>,
    opts: HarnessOptions,
}

impl ConjectureHarness {
    pub fn new(ell: usize, m: usize, q: u64, alpha: Option<Vec<usize>>, opts: HarnessOptions) -> Result<Self> {
        let field = FieldTable::with_order(q)?;
        let alpha = alpha.map(|a| SchubertIndex::new(a, ell, m)).transpose()?;
        let (points, rows) = match &alpha {
            None => (
                enumerate_grassmannian(ell, m, &field, opts.point_budget, opts.exec)?,
                SubsetIndexer::new(m, ell)?.all(),
            ),
            Some(a) => (enumerate_schubert(a, &field, opts.point_budget, opts.exec)?, a.index_set()?),
        };
        if rows.len() > 64 {
            return Err(invalid(format!("{} rows exceed the 64-row section limit", rows.len())));
        }
        let code = build_code(&field, ell, m, &points, &rows)?;
        let ix = SubsetIndexer::new(m, ell)?;
        let row_pos: Vec<usize> = rows.iter().map(|&b| ix.index(b)).collect::<Result<_>>()?;
        let zero_masks = points.iter().map(|p| zero_mask(p, &row_pos)).collect();
        Ok(ConjectureHarness { field, ell, m, alpha, code, zero_masks, opts })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn alpha(&self) -> Option<&SchubertIndex> {
        self.alpha.as_ref()
    }

    fn section(&self, lambda: u64) -> usize {
        self.zero_masks.iter().filter(|&&z| z & lambda == lambda).count()
    }

    fn mask_of(indices: &[usize]) -> u64 {
        indices.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    fn labels(&self, mask: u64) -> Vec<Subset> {
        (0..self.code.k).filter(|i| mask >> i & 1 == 1).map(|i| self.code.row_labels[i]).collect()
    }

    /// Largest coordinate section over every `r`-subset of rows, with the
    /// colex-least maximizer. Row masks of equal weight in numeric order are
    /// in colex order, so the first strict improvement wins ties.
    fn best_coordinate_section(&self, r: usize) -> Result<(usize, u64)> {
        let k = self.code.k;
        let count = binom(k as u64, r as u64)?;
        if count > self.opts.family_budget {
            return Err(Error::BudgetExceeded { what: "coordinate section scan", count, budget: self.opts.family_budget });
        }
        if r == 0 {
            return Ok((self.zero_masks.len(), 0));
        }
        let firsts: Vec<u64> = SubsetIndexer::new(k, r)?.iter().map(|s| s.bits()).collect();
        let (best, mask) = exec::map_reduce(
            self.opts.exec,
            firsts.len(),
            (0usize, u64::MAX),
            |i| (self.section(firsts[i]), firsts[i]),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );
        Ok((best, mask))
    }

    /// The full report at one `r`.
    pub fn report(&self, r: usize) -> Result<ConjectureReport> {
        let (n, k) = (self.code.n, self.code.k);
        if r == 0 || r > k {
            return Err(invalid(format!("need 1 <= r <= {k}, got r = {r}")));
        }
        let d_r = higher_weight_exhaustive(&self.field, &self.code, r, self.opts.exec, self.opts.subspace_budget)?;

        let search = SearchOptions { budget: self.opts.family_budget, ..SearchOptions::default() }
            .with_exec(self.opts.exec)
            .collecting();
        let outcome = max_k_over(&self.code.row_labels, r, &search)?;
        let families = outcome.all.unwrap_or_else(|| vec![outcome.best.clone()]);
        // Row masks index a colex-sorted row list, so among equal-size
        // families the smaller mask is the colex-smaller one.
        let mut best_sub = (0usize, u64::MAX);
        for fam in &families {
            let mask = Self::mask_of(fam);
            let s = self.section(mask);
            if s > best_sub.0 || (s == best_sub.0 && mask < best_sub.1) {
                best_sub = (s, mask);
            }
        }
        let (best_all, mask_all) = self.best_coordinate_section(r)?;

        let rhs_subclose = n - best_sub.0;
        let verdict = match d_r.cmp(&rhs_subclose) {
            std::cmp::Ordering::Equal => Verdict::Equal,
            std::cmp::Ordering::Less => Verdict::LhsLess,
            std::cmp::Ordering::Greater => Verdict::LhsGreater,
        };
        let witness_lambda = self.labels(best_sub.1);
        Ok(ConjectureReport {
            schema_version: REPORT_SCHEMA_VERSION,
            params: ReportParams {
                ell: self.ell,
                m: self.m,
                q: self.field.q(),
                alpha: self.alpha.as_ref().map(|a| a.alpha().to_vec()),
                r,
                n,
                k,
            },
            d_r,
            rhs_subclose,
            rhs_all_coordinate: n - best_all,
            verdict,
            subclose_k: k_lambda(&witness_lambda),
            witness_lambda,
            witness_all_coordinate: self.labels(mask_all),
            subclose_count: families.len(),
            proven_regime: proven_regime(self.ell, self.m, self.alpha.as_ref(), r, k),
        })
    }
}

fn zero_mask(p: &PluckerPoint, row_pos: &[usize]) -> u64 {
    row_pos.iter().enumerate().filter(|(_, &c)| p.coord(c) == 0).fold(0, |acc, (i, _)| acc | 1 << i)
}

/// One-shot wrapper around [`ConjectureHarness`].
pub fn verify_conjecture(
    ell: usize,
    m: usize,
    q: u64,
    alpha: Option<Vec<usize>>,
    r: usize,
    opts: HarnessOptions,
) -> Result<ConjectureReport> {
    ConjectureHarness::new(ell, m, q, alpha, opts)?.report(r)
}
