//! `K_r(ℓ,m)`: closed forms and the exhaustive oracle.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::Serialize;

use super::{check_params, close_family, mu, nu, SubsetFamily};
use crate::combinat::{binom, Subset, SubsetIndexer};
use crate::error::{invalid, Error, Result};
use crate::exec::{self, Exec};

pub const DEFAULT_FAMILY_BUDGET: u128 = 100_000_000;

/// Knobs for the exhaustive family search.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Largest number of candidate families the search may face.
    pub budget: u128,
    pub exec: Exec,
    /// Branch-and-bound pruning. Disable to audit the bound.
    pub prune: bool,
    /// Count every maximizer, not just the canonical one.
    pub count_maximizers: bool,
    /// Keep every maximizer as a list of universe indices.
    pub collect_maximizers: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_FAMILY_BUDGET,
            exec: Exec::default(),
            prune: true,
            count_maximizers: false,
            collect_maximizers: false,
        }
    }
}

impl SearchOptions {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn counting(mut self) -> Self {
        self.count_maximizers = true;
        self
    }

    pub fn collecting(mut self) -> Self {
        self.collect_maximizers = true;
        self.count_maximizers = true;
        self
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }
}

/// Result of maximizing `K` over the `r`-subsets of a universe of subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub value: u64,
    /// Universe indices of the colex-least maximizer.
    pub best: Vec<usize>,
    pub count: Option<u128>,
    /// Every maximizer, sorted colex, when requested.
    pub all: Option<Vec<Vec<usize>>>,
}

/// Colex order on sorted index lists of equal length: compare the largest
/// differing element.
fn colex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

#[derive(Debug, Clone)]
struct Partial {
    value: Option<u64>,
    best: Vec<usize>,
    count: u128,
    all: Vec<Vec<usize>>,
}

impl Partial {
    fn none() -> Self {
        Partial { value: None, best: Vec::new(), count: 0, all: Vec::new() }
    }

    fn offer(&mut self, value: u64, chosen: &[usize], collect: bool) {
        match self.value.map(|v| value.cmp(&v)) {
            None | Some(Ordering::Greater) => {
                self.value = Some(value);
                self.best = chosen.to_vec();
                self.count = 1;
                self.all.clear();
                if collect {
                    self.all.push(chosen.to_vec());
                }
            }
            Some(Ordering::Equal) => {
                self.count += 1;
                if colex_cmp(chosen, &self.best) == Ordering::Less {
                    self.best = chosen.to_vec();
                }
                if collect {
                    self.all.push(chosen.to_vec());
                }
            }
            Some(Ordering::Less) => {}
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        match (self.value, other.value) {
            (_, None) => self,
            (None, _) => other,
            (Some(a), Some(b)) if b > a => other,
            (Some(a), Some(b)) if b < a => self,
            _ => {
                self.count += other.count;
                if colex_cmp(&other.best, &self.best) == Ordering::Less {
                    self.best = other.best;
                }
                self.all.extend(other.all);
                self
            }
        }
    }
}

struct Searcher<'a> {
    meets: Vec<u32>,
    n: usize,
    r: usize,
    pair_cap: u64,
    opts: &'a SearchOptions,
    shared_best: &'a AtomicU64,
}

impl Searcher<'_> {
    fn meet(&self, i: usize, j: usize) -> u32 {
        self.meets[i * self.n + j]
    }

    /// Admissible upper bound on the final `K` of any completion: current
    /// value, plus the best `s` cross terms available, plus the pair cap on
    /// every pair among the `s` slots still open.
    fn bound(&self, value: u64, contrib: &[u64], next: usize, slots: usize, scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        scratch.extend_from_slice(&contrib[next..]);
        let cross: u64 = if slots >= scratch.len() {
            scratch.iter().sum()
        } else {
            scratch.select_nth_unstable_by(slots - 1, |a, b| b.cmp(a));
            scratch[..slots].iter().sum()
        };
        value + cross + self.pair_cap * (slots * slots.saturating_sub(1) / 2) as u64
    }

    fn run_branch(&self, first: usize) -> Partial {
        let mut out = Partial::none();
        let mut chosen = vec![first];
        let mut contrib: Vec<u64> = (0..self.n).map(|j| self.meet(first, j) as u64).collect();
        let mut scratch = Vec::with_capacity(self.n);
        self.dfs(&mut chosen, &mut contrib, 0, &mut out, &mut scratch);
        out
    }

    fn dfs(&self, chosen: &mut Vec<usize>, contrib: &mut [u64], value: u64, out: &mut Partial, scratch: &mut Vec<u64>) {
        let depth = chosen.len();
        if depth == self.r {
            if self.opts.prune {
                self.shared_best.fetch_max(value, AtomicOrdering::Relaxed);
            }
            out.offer(value, chosen, self.opts.collect_maximizers);
            return;
        }
        let slots = self.r - depth;
        let next = chosen[depth - 1] + 1;
        if self.opts.prune {
            let floor = self.shared_best.load(AtomicOrdering::Relaxed);
            if floor > 0 && self.bound(value, contrib, next, slots, scratch) < floor {
                return;
            }
        }
        for j in next..=self.n - slots {
            let add = contrib[j];
            for (t, c) in contrib.iter_mut().enumerate() {
                *c += self.meets[j * self.n + t] as u64;
            }
            chosen.push(j);
            self.dfs(chosen, contrib, value + add, out, scratch);
            chosen.pop();
            for (t, c) in contrib.iter_mut().enumerate() {
                *c -= self.meets[j * self.n + t] as u64;
            }
        }
    }
}

/// Maximizes `K_Λ` over all `r`-subsets `Λ` of `universe` by exhaustive
/// branch-and-bound search.
///
/// The returned maximizer is the colex-least one (in universe index order),
/// independent of [`Exec`].
pub fn max_k_over(universe: &[Subset], r: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    let n = universe.len();
    if r > n {
        return Err(invalid(format!("r = {r} exceeds the {n} available subsets")));
    }
    let candidates = binom(n as u64, r as u64)?;
    if candidates > opts.budget {
        return Err(Error::BudgetExceeded { what: "subset-family search", count: candidates, budget: opts.budget });
    }
    if r == 0 {
        return Ok(SearchOutcome {
            value: 0,
            best: Vec::new(),
            count: opts.count_maximizers.then_some(1),
            all: opts.collect_maximizers.then(|| vec![Vec::new()]),
        });
    }

    let mut meets = vec![0u32; n * n];
    let mut pair_cap = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let w = universe[i].meet(universe[j]);
                meets[i * n + j] = w;
                pair_cap = pair_cap.max(w as u64);
            }
        }
    }
    let shared_best = AtomicU64::new(0);
    let searcher = Searcher { meets, n, r, pair_cap, opts, shared_best: &shared_best };

    let firsts = n - r + 1;
    let merged = exec::map_reduce(opts.exec, firsts, Partial::none(), |i| searcher.run_branch(i), Partial::merge);
    let value = merged.value.expect("at least one family");
    let all = opts.collect_maximizers.then(|| {
        let mut all = merged.all;
        all.sort_by(|a, b| colex_cmp(a, b));
        all
    });
    Ok(SearchOutcome {
        value,
        best: merged.best,
        count: opts.count_maximizers.then_some(merged.count),
        all,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KrMethod {
    ClosedFormLow,
    ClosedFormHigh,
    BruteForce,
}

/// One value of `K_r(ℓ,m)` with a family attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KrRecord {
    pub ell: usize,
    pub m: usize,
    pub r: usize,
    pub value: u128,
    pub method: KrMethod,
    pub maximizer: SubsetFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximizer_count: Option<u128>,
}

fn pairs(n: i128) -> i128 {
    n * (n - 1) / 2
}

fn closed_with_method(ell: usize, m: usize, r: usize) -> Result<Option<(u128, KrMethod)>> {
    check_params(ell, m)?;
    let k = binom(m as u64, ell as u64)?;
    if r as u128 > k {
        return Err(invalid(format!("r = {r} exceeds C({m},{ell}) = {k}")));
    }
    let mu = mu(ell, m) as u128;
    let r128 = r as u128;
    if r128 <= mu {
        let v = (ell as u128 - 1)
            .checked_mul(pairs(r as i128) as u128)
            .ok_or(Error::Overflow("k_r_closed"))?;
        return Ok(Some((v, KrMethod::ClosedFormLow)));
    }
    let s = k - r128;
    if s <= mu {
        let nu = nu(ell, m)? as i128;
        let s = s as i128;
        let full = (m as i128).checked_mul(pairs(nu)).ok_or(Error::Overflow("k_r_closed"))?;
        let v = full
            .checked_sub((ell as i128) * (nu - 1) * s)
            .and_then(|x| x.checked_add((ell as i128 - 1) * pairs(s)))
            .ok_or(Error::Overflow("k_r_closed"))?;
        return Ok(Some((v as u128, KrMethod::ClosedFormHigh)));
    }
    Ok(None)
}

/// `K_r(ℓ,m)` from the closed forms, or `None` in the middle range
/// `μ < r < k−μ` where none is known.
///
/// * `r ≤ μ`: `(ℓ−1)·C(r,2)`.
/// * `k−r ≤ μ`: `m·C(ν,2) − ℓ(ν−1)(k−r) + (ℓ−1)·C(k−r,2)`; `r = k` gives `m·C(ν,2)`.
pub fn k_r_closed(ell: usize, m: usize, r: usize) -> Result<Option<u128>> {
    Ok(closed_with_method(ell, m, r)?.map(|(v, _)| v))
}

/// `K_r(ℓ,m)` by exhaustive search over all `r`-subsets of `I_ℓ[m]`.
pub fn k_r_oracle(ell: usize, m: usize, r: usize, opts: &SearchOptions) -> Result<KrRecord> {
    check_params(ell, m)?;
    let universe = SubsetIndexer::new(m, ell)?.all();
    let out = max_k_over(&universe, r, opts)?;
    let members = out.best.iter().map(|&i| universe[i]).collect();
    Ok(KrRecord {
        ell,
        m,
        r,
        value: out.value as u128,
        method: KrMethod::BruteForce,
        maximizer: SubsetFamily::from_sorted_unchecked(m, ell, members),
        maximizer_count: out.count,
    })
}

const MATERIALIZE_LIMIT: usize = 1 << 22;

/// `K_r(ℓ,m)` from a closed form when one applies, else from the oracle.
///
/// Closed-form records carry a constructed maximizer: a close family for
/// `r ≤ μ`, and the complement of a close family of size `k−r` otherwise.
pub fn k_r(ell: usize, m: usize, r: usize, opts: &SearchOptions) -> Result<KrRecord> {
    let Some((value, method)) = closed_with_method(ell, m, r)? else {
        return k_r_oracle(ell, m, r, opts);
    };
    let k = SubsetIndexer::new(m, ell)?.count();
    let maximizer = match method {
        KrMethod::ClosedFormLow => close_family(ell, m, r),
        _ if k <= MATERIALIZE_LIMIT => close_family(ell, m, k - r).map(|f| f.complement_in_universe()).transpose()?,
        _ => None,
    }
    .ok_or_else(|| invalid(format!("cannot materialize a maximizer for K_{r}({ell},{m})")))?;
    debug_assert_eq!(maximizer.k_lambda() as u128, value);
    Ok(KrRecord { ell, m, r, value, method, maximizer, maximizer_count: None })
}
