//! Families of ℓ-subsets of `[m]` and the pairwise-intersection statistic
//! `K_Λ = Σ_{i<j} |A_i ∩ A_j|`.
//!
//! A family of size `r` is *subclose* when its `K_Λ` equals the maximum
//! `K_r(ℓ,m)` over all `r`-families; [`search`] computes that maximum both in
//! closed form (where one is known) and by exhaustion.

mod close;
mod duality;
mod search;
mod table;

use serde::{Deserialize, Serialize};

use crate::combinat::{binom_usize, Subset, SubsetIndexer, MAX_GROUND};
use crate::error::{invalid, Error, Result};

pub use close::{classify_close, close_family, is_close_pairwise, CloseFamilyWitness, CloseKind};
pub use duality::{first_duality_check, second_duality_check, DualityReport};
pub use search::{
    k_r, k_r_closed, k_r_oracle, max_k_over, KrMethod, KrRecord, SearchOptions, SearchOutcome,
    DEFAULT_FAMILY_BUDGET,
};
pub use table::{kr_json_lines, kr_text_table};

/// A set of distinct ℓ-subsets of `[m]`, kept sorted in colex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetFamily {
    m: usize,
    ell: usize,
    members: Vec<Subset>,
}

impl SubsetFamily {
    pub fn new(m: usize, ell: usize, mut members: Vec<Subset>) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(invalid(format!("m = {m} exceeds {MAX_GROUND}")));
        }
        if ell > m {
            return Err(invalid(format!("ell = {ell} exceeds m = {m}")));
        }
        let ground = Subset::full(m);
        for s in &members {
            if s.len() != ell || !s.is_subset_of(ground) {
                return Err(invalid(format!("{s} is not a {ell}-subset of [{m}]")));
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("family has repeated members"));
        }
        Ok(SubsetFamily { m, ell, members })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists(m: usize, ell: usize, lists: &[&[usize]]) -> Result<Self> {
        let members = lists
            .iter()
            .map(|l| Subset::from_elements(l))
            .collect::<Result<Vec<_>>>()?;
        SubsetFamily::new(m, ell, members)
    }

    /// Members are trusted to be valid, distinct and sorted.
    pub(crate) fn from_sorted_unchecked(m: usize, ell: usize, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|s| s.len() == ell));
        SubsetFamily { m, ell, members }
    }

    /// The whole of `I_ℓ[m]`.
    pub fn all(m: usize, ell: usize) -> Result<Self> {
        let ix = SubsetIndexer::new(m, ell)?;
        Ok(SubsetFamily { m, ell, members: ix.all() })
    }

    pub fn empty(m: usize, ell: usize) -> Result<Self> {
        SubsetFamily::new(m, ell, Vec::new())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// `K_Λ`: the sum of `|A ∩ B|` over unordered pairs of members.
    pub fn k_lambda(&self) -> u64 {
        k_lambda(&self.members)
    }

    /// `Λ* = { [m] ∖ A : A ∈ Λ }`, a family of `(m−ℓ)`-subsets.
    pub fn dual_star(&self) -> SubsetFamily {
        let mut members: Vec<Subset> = self.members.iter().map(|a| a.complement(self.m)).collect();
        members.sort_unstable();
        SubsetFamily::from_sorted_unchecked(self.m, self.m - self.ell, members)
    }

    /// `Λ^c = I_ℓ[m] ∖ Λ`.
    pub fn complement_in_universe(&self) -> Result<SubsetFamily> {
        let ix = SubsetIndexer::new(self.m, self.ell)?;
        let members = ix.iter().filter(|s| !self.contains(*s)).collect();
        Ok(SubsetFamily::from_sorted_unchecked(self.m, self.ell, members))
    }
}

/// `K_Λ` over a slice of subsets.
pub fn k_lambda(members: &[Subset]) -> u64 {
    let mut total = 0u64;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            total += a.meet(*b) as u64;
        }
    }
    total
}

/// `μ = max{ℓ, m−ℓ} + 1`, the largest size of a close family.
pub fn mu(ell: usize, m: usize) -> usize {
    ell.max(m - ell) + 1
}

/// `ν = C(m−1, ℓ−1)`, the number of ℓ-subsets through a fixed element.
pub fn nu(ell: usize, m: usize) -> Result<usize> {
    if ell == 0 || m == 0 {
        return Err(invalid("nu needs 1 <= ell <= m"));
    }
    binom_usize(m - 1, ell - 1)
}

pub(crate) fn check_params(ell: usize, m: usize) -> Result<()> {
    if ell == 0 || ell > m || m > MAX_GROUND {
        return Err(invalid(format!("need 1 <= ell <= m <= {MAX_GROUND}, got ell = {ell}, m = {m}")));
    }
    Ok(())
}

/// `Σ_{B ≠ A} |A ∩ B|` over `B ∈ I_ℓ[m]`, by direct enumeration.
pub fn sum_intersections_fixed(ell: usize, m: usize, a: Subset) -> Result<u64> {
    check_params(ell, m)?;
    let ix = SubsetIndexer::new(m, ell)?;
    ix.index(a)?;
    Ok(ix.iter().filter(|&b| b != a).map(|b| a.meet(b) as u64).sum())
}

/// `U = Σ_{A,B ∈ I_ℓ[m]} |A ∩ B|` over ordered pairs, diagonal included, by
/// direct double enumeration.
pub fn total_intersection_sum(ell: usize, m: usize) -> Result<u64> {
    check_params(ell, m)?;
    let all = SubsetIndexer::new(m, ell)?.all();
    if all.len() > 1 << 16 {
        return Err(Error::BudgetExceeded {
            what: "total_intersection_sum",
            count: (all.len() as u128).pow(2),
            budget: 1 << 32,
        });
    }
    Ok(all
        .iter()
        .map(|a| all.iter().map(|b| a.meet(*b) as u64).sum::<u64>())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(m: usize, ell: usize, lists: &[&[usize]]) -> SubsetFamily {
        SubsetFamily::from_lists(m, ell, lists).unwrap()
    }

    #[test]
    fn k_lambda_examples() {
        assert_eq!(fam(5, 2, &[]).k_lambda(), 0);
        assert_eq!(fam(5, 2, &[&[1, 2]]).k_lambda(), 0);
        assert_eq!(fam(4, 2, &[&[1, 2], &[1, 3], &[1, 4]]).k_lambda(), 3);
        assert_eq!(SubsetFamily::all(5, 2).unwrap().k_lambda(), 30);
    }

    #[test]
    fn family_validation() {
        assert!(SubsetFamily::from_lists(4, 2, &[&[1, 2], &[2, 1]]).is_err());
        assert!(SubsetFamily::from_lists(4, 2, &[&[1, 2, 3]]).is_err());
        assert!(SubsetFamily::from_lists(4, 2, &[&[1, 5]]).is_err());
        let f = fam(4, 2, &[&[3, 4], &[1, 2]]);
        assert_eq!(f.members()[0], Subset::from_elements(&[1, 2]).unwrap());
    }

    #[test]
    fn dual_star_examples() {
        let f = fam(4, 2, &[&[1, 2]]);
        assert_eq!(f.dual_star(), fam(4, 2, &[&[3, 4]]));
        let g = fam(6, 2, &[&[1, 2], &[1, 3], &[2, 5]]);
        assert_eq!(g.dual_star().ell(), 4);
        assert_eq!(g.dual_star().dual_star(), g);
    }

    #[test]
    fn complement_in_universe_partitions() {
        let f = fam(5, 2, &[&[1, 2], &[3, 5]]);
        let c = f.complement_in_universe().unwrap();
        assert_eq!(c.len(), 8);
        assert!(f.members().iter().all(|s| !c.contains(*s)));
    }

    #[test]
    fn mu_and_nu() {
        assert_eq!(mu(2, 5), 4);
        assert_eq!(mu(2, 6), 5);
        assert_eq!(nu(2, 5).unwrap(), 4);
        assert_eq!(nu(3, 6).unwrap(), 10);
    }

    #[test]
    fn fixed_member_sums() {
        // direct enumeration over the other nine pairs of [5]
        let a = Subset::from_elements(&[1, 2]).unwrap();
        let others: u64 = SubsetIndexer::new(5, 2)
            .unwrap()
            .iter()
            .filter(|&b| b != a)
            .map(|b| a.meet(b) as u64)
            .sum();
        assert_eq!(others, 6);
        assert_eq!(sum_intersections_fixed(2, 5, a).unwrap(), 6);
        assert_eq!(sum_intersections_fixed(2, 4, a).unwrap(), 4);
        assert_eq!(sum_intersections_fixed(1, 7, Subset::singleton(1)).unwrap(), 0);
        assert!(sum_intersections_fixed(2, 4, Subset::singleton(1)).is_err());
    }

    #[test]
    fn total_sums() {
        assert_eq!(total_intersection_sum(2, 5).unwrap(), 80);
        assert_eq!(total_intersection_sum(2, 4).unwrap(), 36);
        for m in 1..8 {
            assert_eq!(total_intersection_sum(1, m).unwrap(), m as u64);
        }
    }
}
