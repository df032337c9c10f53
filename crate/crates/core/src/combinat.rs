//! Exact integer combinatorics: extended binomial coefficients, Gaussian
//! binomials, and the colexicographic bijection between `[0, C(m,ℓ))` and the
//! ℓ-subsets of `[m] = {1, …, m}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest ground set a [`Subset`] can live in.
pub const MAX_GROUND: usize = 62;

/// A subset of `[m]` stored as a bitmask; element `i` is bit `i - 1`.
///
/// For subsets of equal cardinality, numeric order of the mask is colex order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based elements. Duplicates are rejected.
    pub fn from_elements(elems: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elems {
            if e == 0 || e > MAX_GROUND {
                return Err(invalid(format!("element {e} outside 1..={MAX_GROUND}")));
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(invalid(format!("duplicate element {e}")));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    /// `[m]` itself.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_GROUND);
        Subset(if m == 0 { 0 } else { u64::MAX >> (64 - m) })
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=64).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    /// `|self ∩ other|`.
    #[inline]
    pub fn meet(self, other: Subset) -> u32 {
        (self.0 & other.0).count_ones()
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// `[m] ∖ self`.
    pub fn complement(self, m: usize) -> Subset {
        Subset(Subset::full(m).0 & !self.0)
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(tz + 1)
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.elements()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Subset::from_elements(&v)
    }
}

/// Extended binomial coefficient: `a(a−1)⋯(a−b+1)/b!` for `b ≥ 0`, and `0`
/// for `b < 0`. Defined for every integer `a`, negative ones included.
pub fn binom_ext(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= BigInt::from(a) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Ordinary binomial `C(n, k)` with overflow reported rather than wrapped.
pub fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binom"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `C(n, k)` as a `usize`, for sizes that must be materialized.
pub(crate) fn binom_usize(n: usize, k: usize) -> Result<usize> {
    binom(n as u64, k as u64)?
        .try_into()
        .map_err(|_| Error::Overflow("binom"))
}

/// Gaussian binomial `[m choose ℓ]_q`, the number of ℓ-dimensional subspaces
/// of `F_q^m`, evaluated from the product formula.
pub fn gaussian_binom(m: u64, ell: u64, q: u64) -> Result<u128> {
    if q < 2 {
        return Err(invalid(format!("Gaussian binomial needs q >= 2, got {q}")));
    }
    if ell > m {
        return Ok(0);
    }
    let q = BigUint::from(q);
    let qm = q.pow(m as u32);
    let ql = q.pow(ell as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..ell {
        let qi = q.pow(i as u32);
        num *= &qm - &qi;
        den *= &ql - &qi;
    }
    debug_assert!((&num % &den).is_zero());
    (num / den).to_u128().ok_or(Error::Overflow("gaussian_binom"))
}

/// Colexicographic ranking of the ℓ-subsets of `[m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetIndexer {
    m: usize,
    ell: usize,
    count: usize,
}

impl SubsetIndexer {
    pub fn new(m: usize, ell: usize) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(invalid(format!("m = {m} exceeds {MAX_GROUND}")));
        }
        if ell > m {
            return Err(invalid(format!("ell = {ell} exceeds m = {m}")));
        }
        let count = binom_usize(m, ell)?;
        Ok(SubsetIndexer { m, ell, count })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `C(m, ℓ)`.
    pub fn count(&self) -> usize {
        self.count
    }

    fn check(&self, s: Subset) -> Result<()> {
        if s.len() != self.ell {
            return Err(invalid(format!("{s} has {} elements, expected {}", s.len(), self.ell)));
        }
        if s.max_element().is_some_and(|x| x > self.m) {
            return Err(invalid(format!("{s} is not inside [{}]", self.m)));
        }
        Ok(())
    }

    /// Colex rank of `s`: `Σ_i C(c_i, i+1)` over its 0-based elements
    /// `c_0 < c_1 < …`.
    pub fn index(&self, s: Subset) -> Result<usize> {
        self.check(s)?;
        Ok(s
            .iter()
            .enumerate()
            .map(|(i, e)| binom_usize(e - 1, i + 1).expect("bounded by count"))
            .sum())
    }

    pub fn subset(&self, index: usize) -> Result<Subset> {
        if index >= self.count {
            return Err(invalid(format!("index {index} out of range 0..{}", self.count)));
        }
        let mut rest = index;
        let mut bits = 0u64;
        let mut hi = self.m;
        for t in (1..=self.ell).rev() {
            // largest c < hi with C(c, t) <= rest
            let mut c = hi - 1;
            while binom_usize(c, t).expect("bounded by count") > rest {
                c -= 1;
            }
            bits |= 1 << c;
            rest -= binom_usize(c, t).expect("bounded by count");
            hi = c;
        }
        Ok(Subset(bits))
    }

    /// All ℓ-subsets in colex order.
    pub fn iter(&self) -> impl Iterator<Item = Subset> {
        self.iter_from(0)
    }

    /// The ℓ-subsets with colex index `start, start+1, …`.
    pub fn iter_from(&self, start: usize) -> impl Iterator<Item = Subset> {
        let limit = if self.m == 64 { u64::MAX } else { 1u64 << self.m };
        let mut remaining = self.count.saturating_sub(start);
        let mut next = self.subset(start).ok().map(Subset::bits);
        std::iter::from_fn(move || {
            if remaining == 0 {
                return None;
            }
            let cur = next?;
            remaining -= 1;
            // Gosper's hack: next larger integer with the same popcount
            next = if cur == 0 {
                None
            } else {
                let c = cur & cur.wrapping_neg();
                let r = cur + c;
                let n = (((r ^ cur) >> 2) / c) | r;
                (n < limit).then_some(n)
            };
            Some(Subset(cur))
        })
    }

    pub fn all(&self) -> Vec<Subset> {
        self.iter().collect()
    }
}

/// Which of the four binomial identities a check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BinomialIdentity {
    /// `C(a,b) = C(a,a−b)` iff `a ≥ 0` or `a < b < 0`.
    Symmetry,
    /// `C(a,b) = 0` iff `b < 0` or `b > a ≥ 0`.
    Vanishing,
    /// `C(a,b)C(b,c) = C(a,c)C(a−c,b−c)`.
    Trinomial,
    /// `C(a+b, c−e) = Σ_{j=e}^{c} C(a+d, c−j) C(b−d, j−e)`.
    Vandermonde,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: BinomialIdentity,
    /// The witness `(a, b, c, d, e)` truncated to the variables the identity uses.
    pub witness: Vec<i64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    pub checked: u64,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct IdentityRanges {
    pub a: RangeInclusive<i64>,
    pub b: RangeInclusive<i64>,
    pub c: RangeInclusive<i64>,
    pub d: RangeInclusive<i64>,
    pub e: RangeInclusive<i64>,
}

impl IdentityRanges {
    /// Same range for every variable.
    pub fn uniform(r: RangeInclusive<i64>) -> Self {
        IdentityRanges { a: r.clone(), b: r.clone(), c: r.clone(), d: r.clone(), e: r }
    }
}

struct BinomMemo(HashMap<(i64, i64), BigInt>);

impl BinomMemo {
    fn get(&mut self, a: i64, b: i64) -> BigInt {
        self.0.entry((a, b)).or_insert_with(|| binom_ext(a, b)).clone()
    }
}

/// Checks the four identities pointwise over the given ranges. Every
/// counterexample is reported with its witness tuple.
pub fn check_binomial_identities(r: &IdentityRanges) -> IdentityReport {
    let mut memo = BinomMemo(HashMap::new());
    let mut rep = IdentityReport::default();
    let fail = |rep: &mut IdentityReport, identity, witness: Vec<i64>| {
        rep.violations.push(IdentityViolation { identity, witness });
    };

    for a in r.a.clone() {
        for b in r.b.clone() {
            let ab = memo.get(a, b);
            let sym_holds = ab == memo.get(a, a - b);
            let sym_predicted = a >= 0 || (a < b && b < 0);
            rep.checked += 1;
            if sym_holds != sym_predicted {
                fail(&mut rep, BinomialIdentity::Symmetry, vec![a, b]);
            }
            let zero_predicted = b < 0 || (b > a && a >= 0);
            rep.checked += 1;
            if ab.is_zero() != zero_predicted {
                fail(&mut rep, BinomialIdentity::Vanishing, vec![a, b]);
            }
            for c in r.c.clone() {
                let lhs = &ab * memo.get(b, c);
                let rhs = memo.get(a, c) * memo.get(a - c, b - c);
                rep.checked += 1;
                if lhs != rhs {
                    fail(&mut rep, BinomialIdentity::Trinomial, vec![a, b, c]);
                }
            }
        }
    }

    for a in r.a.clone() {
        for b in r.b.clone() {
            for c in r.c.clone() {
                for d in r.d.clone() {
                    for e in r.e.clone() {
                        let lhs = memo.get(a + b, c - e);
                        let mut rhs = BigInt::zero();
                        for j in e..=c {
                            rhs += memo.get(a + d, c - j) * memo.get(b - d, j - e);
                        }
                        rep.checked += 1;
                        if lhs != rhs {
                            fail(&mut rep, BinomialIdentity::Vandermonde, vec![a, b, c, d, e]);
                        }
                    }
                }
            }
        }
    }
    rep
}
