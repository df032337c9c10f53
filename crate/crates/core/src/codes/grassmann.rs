//! `F_q`-points of Grassmannians and their Schubert subvarieties in the
//! Plücker embedding.

use serde::{Deserialize, Serialize};

use super::field::{Elem, FieldTable};
use super::linalg::{maximal_minors, RrefSpace};
use crate::combinat::{gaussian_binom, Subset, SubsetIndexer};
use crate::error::{invalid, Error, Result};
use crate::exec::{self, Exec};
use crate::families::SubsetFamily;

pub const DEFAULT_POINT_BUDGET: u128 = 1_000_000;

/// A point of `P^{k−1}` given by its Plücker coordinates, indexed by the
/// ℓ-subsets of `[m]` in colex order, scaled so that the first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluckerPoint {
    coords: Vec<Elem>,
}

impl PluckerPoint {
    /// Normalizes `coords`; `None` for the zero vector.
    pub fn new(f: &FieldTable, mut coords: Vec<Elem>) -> Option<Self> {
        let lead = *coords.iter().find(|&&c| c != 0)?;
        let inv = f.inv(lead)?;
        for c in coords.iter_mut() {
            *c = f.mul(*c, inv);
        }
        Some(PluckerPoint { coords })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> Elem {
        self.coords[index]
    }
}

/// A Schubert condition `α = (α_1 < … < α_ℓ)` in `[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchubertIndex {
    alpha: Vec<usize>,
    m: usize,
}

impl SchubertIndex {
    pub fn new(alpha: Vec<usize>, ell: usize, m: usize) -> Result<Self> {
        if alpha.len() != ell {
            return Err(invalid(format!("alpha has {} entries, expected {ell}", alpha.len())));
        }
        if alpha.first().is_some_and(|&a| a == 0) || alpha.last().is_some_and(|&a| a > m) {
            return Err(invalid(format!("alpha entries must lie in 1..={m}")));
        }
        if alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("alpha must be strictly increasing"));
        }
        Ok(SchubertIndex { alpha, m })
    }

    /// `(m−ℓ+1, …, m)`: no condition at all.
    pub fn maximal(ell: usize, m: usize) -> Result<Self> {
        SchubertIndex::new((m - ell + 1..=m).collect(), ell, m)
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn ell(&self) -> usize {
        self.alpha.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_maximal(&self) -> bool {
        let ell = self.ell();
        self.alpha.iter().enumerate().all(|(i, &a)| a == self.m - ell + 1 + i)
    }

    /// Codimension one in the Grassmannian: `(m−ℓ, m−ℓ+2, …, m)`.
    pub fn is_submaximal(&self) -> bool {
        let ell = self.ell();
        let dist: usize = self.alpha.iter().enumerate().map(|(i, &a)| self.m - ell + 1 + i - a).sum();
        dist == 1
    }

    /// `β ≤ α` componentwise, comparing sorted elements.
    pub fn admits(&self, beta: Subset) -> bool {
        beta.len() == self.ell() && beta.iter().zip(&self.alpha).all(|(b, &a)| b <= a)
    }

    /// `I_α(ℓ,m)` in colex order.
    pub fn index_set(&self) -> Result<Vec<Subset>> {
        Ok(SubsetIndexer::new(self.m, self.ell())?.iter().filter(|&b| self.admits(b)).collect())
    }

    /// `k_α = |I_α(ℓ,m)|`.
    pub fn k_alpha(&self) -> Result<usize> {
        Ok(self.index_set()?.len())
    }
}

fn check_budget(ell: usize, m: usize, f: &FieldTable, budget: u128) -> Result<u128> {
    if ell == 0 || ell > m {
        return Err(invalid(format!("need 1 <= ell <= m, got ell = {ell}, m = {m}")));
    }
    let n = gaussian_binom(m as u64, ell as u64, f.q() as u64)?;
    if n > budget {
        return Err(Error::BudgetExceeded { what: "Grassmannian point enumeration", count: n, budget });
    }
    Ok(n)
}

/// All points of `G_{ℓ,m}(F_q)`, one per ℓ-dimensional subspace of `F_q^m`,
/// each the minor vector of the subspace's reduced row echelon basis.
///
/// Ordered by pivot set (colex), then by free entries (lexicographic).
pub fn enumerate_grassmannian(ell: usize, m: usize, f: &FieldTable, budget: u128, exec: Exec) -> Result<Vec<PluckerPoint>> {
    let n = check_budget(ell, m, f, budget)?;
    let space = RrefSpace::new(ell, m, f.q())?;
    let column_sets = SubsetIndexer::new(m, ell)?.all();
    let cells = exec::map_collect(exec, space.pivot_sets().len(), |i| {
        let mut pts = Vec::new();
        space.for_each_in_cell(space.pivot_sets()[i], |mat| {
            let minors = maximal_minors(f, mat, &column_sets);
            pts.push(PluckerPoint::new(f, minors).expect("full-rank matrix has a nonzero minor"));
        });
        pts
    });
    let points: Vec<PluckerPoint> = cells.into_iter().flatten().collect();
    debug_assert_eq!(points.len() as u128, n);
    Ok(points)
}

/// Points of the Schubert variety `Ω_α`: the Grassmannian points whose
/// coordinates vanish outside `I_α(ℓ,m)`.
pub fn enumerate_schubert(alpha: &SchubertIndex, f: &FieldTable, budget: u128, exec: Exec) -> Result<Vec<PluckerPoint>> {
    let (ell, m) = (alpha.ell(), alpha.m());
    let outside: Vec<usize> = SubsetIndexer::new(m, ell)?
        .iter()
        .enumerate()
        .filter(|(_, b)| !alpha.admits(*b))
        .map(|(i, _)| i)
        .collect();
    Ok(enumerate_grassmannian(ell, m, f, budget, exec)?
        .into_iter()
        .filter(|p| outside.iter().all(|&i| p.coord(i) == 0))
        .collect())
}

/// `|X ∩ Π_Λ|`: points whose coordinates indexed by `Λ` all vanish.
pub fn section_count(points: &[PluckerPoint], lambda: &SubsetFamily) -> Result<usize> {
    let ix = SubsetIndexer::new(lambda.m(), lambda.ell())?;
    let idx: Vec<usize> = lambda.members().iter().map(|&b| ix.index(b)).collect::<Result<_>>()?;
    if let Some(p) = points.first() {
        if p.coords().len() != ix.count() {
            return Err(invalid("points and family live in different Plücker spaces"));
        }
    }
    Ok(points.iter().filter(|p| idx.iter().all(|&i| p.coord(i) == 0)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::linalg::rank;
    use std::collections::HashSet;

    fn points(ell: usize, m: usize, q: u64) -> (FieldTable, Vec<PluckerPoint>) {
        let f = FieldTable::with_order(q).unwrap();
        let pts = enumerate_grassmannian(ell, m, &f, DEFAULT_POINT_BUDGET, Exec::Parallel).unwrap();
        (f, pts)
    }

    #[test]
    fn projective_line_over_gf2() {
        let (_, pts) = points(1, 2, 2);
        assert_eq!(pts.len(), 3);
        let coords: Vec<&[u8]> = pts.iter().map(|p| p.coords()).collect();
        assert_eq!(coords, vec![&[1u8, 0][..], &[1, 1], &[0, 1]]);
    }

    /// `p_{12}p_{34} − p_{13}p_{24} + p_{14}p_{23}` for every 4-subset.
    fn plucker_relations_hold(f: &FieldTable, m: usize, pts: &[PluckerPoint]) -> bool {
        let ix = SubsetIndexer::new(m, 2).unwrap();
        let c = |p: &PluckerPoint, a: usize, b: usize| p.coord(ix.index(Subset::from_elements(&[a, b]).unwrap()).unwrap());
        pts.iter().all(|p| {
            SubsetIndexer::new(m, 4).unwrap().iter().all(|quad| {
                let v = quad.elements();
                let (i, j, k, l) = (v[0], v[1], v[2], v[3]);
                let t1 = f.mul(c(p, i, j), c(p, k, l));
                let t2 = f.mul(c(p, i, k), c(p, j, l));
                let t3 = f.mul(c(p, i, l), c(p, j, k));
                f.add(f.sub(t1, t2), t3) == 0
            })
        })
    }

    #[test]
    fn g24_and_g25_counts_and_relations() {
        let (f, pts) = points(2, 4, 2);
        assert_eq!(pts.len(), 35);
        assert_eq!(pts.iter().collect::<HashSet<_>>().len(), 35);
        assert!(plucker_relations_hold(&f, 4, &pts));
        let (f, pts) = points(2, 5, 2);
        assert_eq!(pts.len(), 155);
        assert!(plucker_relations_hold(&f, 5, &pts));
        let (f, pts) = points(2, 4, 3);
        assert_eq!(pts.len(), 130);
        assert!(plucker_relations_hold(&f, 4, &pts));
    }

    #[test]
    fn relation_check_rejects_non_grassmannian_points() {
        let f = FieldTable::with_order(2).unwrap();
        // p12 = p34 = 1, others 0: violates the quadric
        let bad = PluckerPoint::new(&f, vec![1, 0, 0, 0, 0, 1]).unwrap();
        assert!(!plucker_relations_hold(&f, 4, &[bad]));
    }

    #[test]
    fn normalization_is_canonical() {
        let f = FieldTable::with_order(5).unwrap();
        let a = PluckerPoint::new(&f, vec![0, 2, 4, 1]).unwrap();
        let b = PluckerPoint::new(&f, vec![0, 3, 1, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coords()[1], 1);
        assert!(PluckerPoint::new(&f, vec![0, 0]).is_none());
    }

    #[test]
    fn schubert_index_validation() {
        assert!(SchubertIndex::new(vec![2, 4], 2, 4).is_ok());
        assert!(SchubertIndex::new(vec![4, 2], 2, 4).is_err());
        assert!(SchubertIndex::new(vec![0, 2], 2, 4).is_err());
        assert!(SchubertIndex::new(vec![2, 5], 2, 4).is_err());
        assert!(SchubertIndex::new(vec![2], 2, 4).is_err());
        assert!(SchubertIndex::new(vec![3, 4], 2, 4).unwrap().is_maximal());
        assert!(SchubertIndex::new(vec![2, 4], 2, 4).unwrap().is_submaximal());
        assert!(!SchubertIndex::new(vec![1, 4], 2, 4).unwrap().is_submaximal());
    }

    #[test]
    fn k_alpha_by_defining_condition() {
        // pairs (b1,b2) with b1 <= 2, b2 <= 4: (1,2),(1,3),(1,4),(2,3),(2,4)
        assert_eq!(SchubertIndex::new(vec![2, 4], 2, 4).unwrap().k_alpha().unwrap(), 5);
        assert_eq!(SchubertIndex::new(vec![3, 4], 2, 4).unwrap().k_alpha().unwrap(), 6);
        assert_eq!(SchubertIndex::new(vec![1, 2], 2, 4).unwrap().k_alpha().unwrap(), 1);
    }

    /// Subspace-level oracle: `W ∈ Ω_α` iff `dim(W ∩ ⟨e_1..e_{α_i}⟩) ≥ i` for
    /// all i, with `dim(W ∩ V_j) = ℓ − rank(W restricted to columns > j)`.
    fn schubert_count_by_flags(ell: usize, m: usize, alpha: &[usize], f: &FieldTable) -> usize {
        let space = RrefSpace::new(ell, m, f.q()).unwrap();
        let mut count = 0;
        for &p in space.pivot_sets() {
            space.for_each_in_cell(p, |mat| {
                let ok = alpha.iter().enumerate().all(|(i, &a)| {
                    let tail: Vec<Vec<u8>> = mat.iter().map(|row| row[a..].to_vec()).collect();
                    let r = if a == m { 0 } else { rank(f, &tail) };
                    ell - r > i
                });
                if ok {
                    count += 1;
                }
            });
        }
        count
    }

    #[test]
    fn schubert_counts_match_flag_oracle() {
        for q in [2u64, 3] {
            let f = FieldTable::with_order(q).unwrap();
            for (ell, m) in [(2, 4), (2, 5), (3, 5)] {
                for alpha in SubsetIndexer::new(m, ell).unwrap().iter() {
                    let a = SchubertIndex::new(alpha.elements(), ell, m).unwrap();
                    let pts = enumerate_schubert(&a, &f, DEFAULT_POINT_BUDGET, Exec::Parallel).unwrap();
                    assert_eq!(pts.len(), schubert_count_by_flags(ell, m, a.alpha(), &f), "alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn schubert_extremes_and_nesting() {
        let f = FieldTable::with_order(2).unwrap();
        let all = enumerate_grassmannian(2, 5, &f, DEFAULT_POINT_BUDGET, Exec::Sequential).unwrap();
        let max = SchubertIndex::maximal(2, 5).unwrap();
        assert_eq!(enumerate_schubert(&max, &f, DEFAULT_POINT_BUDGET, Exec::Sequential).unwrap(), all);
        let min = SchubertIndex::new(vec![1, 2], 2, 5).unwrap();
        assert_eq!(enumerate_schubert(&min, &f, DEFAULT_POINT_BUDGET, Exec::Sequential).unwrap().len(), 1);
        let small: HashSet<_> = enumerate_schubert(&SchubertIndex::new(vec![2, 4], 2, 5).unwrap(), &f, 1 << 20, Exec::Sequential)
            .unwrap()
            .into_iter()
            .collect();
        let big: HashSet<_> = enumerate_schubert(&SchubertIndex::new(vec![3, 5], 2, 5).unwrap(), &f, 1 << 20, Exec::Sequential)
            .unwrap()
            .into_iter()
            .collect();
        assert!(small.is_subset(&big));
    }

    #[test]
    fn section_count_extremes() {
        let (_, pts) = points(2, 4, 2);
        assert_eq!(section_count(&pts, &SubsetFamily::empty(4, 2).unwrap()).unwrap(), 35);
        assert_eq!(section_count(&pts, &SubsetFamily::all(4, 2).unwrap()).unwrap(), 0);
        let single = SubsetFamily::from_lists(4, 2, &[&[1, 2]]).unwrap();
        assert_eq!(section_count(&pts, &single).unwrap(), 19);
    }

    #[test]
    fn budget_guard() {
        let f = FieldTable::with_order(2).unwrap();
        assert!(matches!(
            enumerate_grassmannian(2, 5, &f, 100, Exec::Parallel),
            Err(Error::BudgetExceeded { count: 155, .. })
        ));
    }
}
