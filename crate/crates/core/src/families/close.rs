use serde::Serialize;

use super::SubsetFamily;
use crate::combinat::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CloseKind {
    TypeI,
    TypeII,
    /// Small families fit both patterns; the stored witness is the Type I one.
    Both,
    NotClose,
}

/// Structure of a close family.
///
/// * Type I: `Λ = { S ∪ {t} : t ∈ T }` with `|S| = ℓ−1`.
/// * Type II: `Λ = { (S ∪ T) ∖ {t} : t ∈ T }` with `|S| = ℓ−r+1`.
///
/// In both cases `T ∩ S = ∅` and `|T| = r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CloseFamilyWitness {
    pub kind: CloseKind,
    pub core: Option<Subset>,
    pub tail: Option<Subset>,
}

impl CloseFamilyWitness {
    fn not_close() -> Self {
        CloseFamilyWitness { kind: CloseKind::NotClose, core: None, tail: None }
    }

    pub fn is_close(&self) -> bool {
        self.kind != CloseKind::NotClose
    }
}

/// Every two members meet in exactly `ℓ−1` elements.
pub fn is_close_pairwise(fam: &SubsetFamily) -> bool {
    let target = fam.ell().saturating_sub(1) as u32;
    if fam.ell() == 0 && fam.len() > 1 {
        return false;
    }
    let ms = fam.members();
    ms.iter()
        .enumerate()
        .all(|(i, a)| ms[i + 1..].iter().all(|b| a.meet(*b) == target))
}

fn first_elements(n: usize) -> Subset {
    Subset::full(n)
}

fn smallest_outside(s: Subset, m: usize) -> Option<usize> {
    (1..=m).find(|&e| !s.contains(e))
}

fn type_one(fam: &SubsetFamily) -> Option<(Subset, Subset)> {
    let (ell, m, ms) = (fam.ell(), fam.m(), fam.members());
    if ell == 0 {
        return None;
    }
    match ms.len() {
        0 => Some((first_elements(ell - 1), Subset::EMPTY)),
        1 => {
            let a = ms[0];
            let top = a.max_element()?;
            let t = Subset::singleton(top);
            Some((a.difference(t), t))
        }
        r => {
            let core = ms.iter().fold(Subset::full(m), |acc, s| acc.intersection(*s));
            let span = ms.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s));
            let tail = span.difference(core);
            if core.len() != ell - 1 || tail.len() != r {
                return None;
            }
            let ok = tail.iter().all(|t| fam.contains(core.union(Subset::singleton(t))));
            ok.then_some((core, tail))
        }
    }
}

fn type_two(fam: &SubsetFamily) -> Option<(Subset, Subset)> {
    let (ell, m, ms) = (fam.ell(), fam.m(), fam.members());
    match ms.len() {
        0 => (ell < m).then(|| (first_elements(ell + 1), Subset::EMPTY)),
        1 => {
            let a = ms[0];
            let t = smallest_outside(a, m)?;
            Some((a, Subset::singleton(t)))
        }
        r => {
            if r > ell + 1 {
                return None;
            }
            let core = ms.iter().fold(Subset::full(m), |acc, s| acc.intersection(*s));
            let span = ms.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s));
            let tail = span.difference(core);
            if core.len() != ell + 1 - r || tail.len() != r {
                return None;
            }
            let ok = tail.iter().all(|t| fam.contains(span.difference(Subset::singleton(t))));
            ok.then_some((core, tail))
        }
    }
}

/// Classifies `fam` as a close family of Type I, Type II, both, or neither.
pub fn classify_close(fam: &SubsetFamily) -> CloseFamilyWitness {
    if !is_close_pairwise(fam) {
        return CloseFamilyWitness::not_close();
    }
    let one = type_one(fam);
    let two = type_two(fam);
    let (kind, witness) = match (one, two) {
        (Some(w), Some(_)) => (CloseKind::Both, w),
        (Some(w), None) => (CloseKind::TypeI, w),
        (None, Some(w)) => (CloseKind::TypeII, w),
        (None, None) => {
            debug_assert!(false, "pairwise-close family of neither type: {fam:?}");
            return CloseFamilyWitness::not_close();
        }
    };
    CloseFamilyWitness { kind, core: Some(witness.0), tail: Some(witness.1) }
}

/// A close family of size `r` in `I_ℓ[m]`, if one exists (`r ≤ μ`).
///
/// Type I is used while `r ≤ m−ℓ+1`, Type II otherwise.
pub fn close_family(ell: usize, m: usize, r: usize) -> Option<SubsetFamily> {
    if ell == 0 || ell > m {
        return None;
    }
    let members: Vec<Subset> = if r <= m - ell + 1 {
        let core = first_elements(ell - 1);
        (ell..ell + r).map(|t| core.union(Subset::singleton(t))).collect()
    } else if r <= ell + 1 {
        let span = first_elements(ell + 1);
        // T is the top r elements of [ℓ+1]
        (ell + 2 - r..=ell + 1).map(|t| span.difference(Subset::singleton(t))).collect()
    } else {
        return None;
    };
    SubsetFamily::new(m, ell, members).ok()
}
