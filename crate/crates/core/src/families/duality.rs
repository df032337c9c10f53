use serde::Serialize;

use super::search::{k_r, SearchOptions};
use super::{check_params, nu};
use crate::combinat::binom;
use crate::error::Result;

/// Outcome of a duality check at one `(ℓ, m, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub ell: usize,
    pub m: usize,
    pub r: usize,
    /// Left side of the identity.
    pub lhs: i128,
    /// Right side of the identity.
    pub rhs: i128,
    /// The maximizers map to maximizers of the dual problem.
    pub maximizers_map: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.maximizers_map
    }
}

/// `K_r(ℓ,m) = C(r,2)(2ℓ−m) + K_r(m−ℓ,m)`, with `Λ ↦ Λ*` carrying maximizers
/// to maximizers in both directions.
pub fn first_duality_check(ell: usize, m: usize, r: usize, opts: &SearchOptions) -> Result<DualityReport> {
    check_params(ell, m)?;
    let here = k_r(ell, m, r, opts)?;
    let lhs = here.value as i128;
    let (rhs, maximizers_map) = if ell == m {
        // the dual lives in I_0[m], which holds only the empty set
        let rhs = (r * r.saturating_sub(1) / 2) as i128 * (2 * ell as i128 - m as i128);
        (rhs, r <= 1)
    } else {
        let there = k_r(m - ell, m, r, opts)?;
        let pairs = (r * r.saturating_sub(1) / 2) as i128;
        let rhs = pairs * (2 * ell as i128 - m as i128) + there.value as i128;
        let forward = here.maximizer.dual_star().k_lambda() as u128 == there.value;
        let backward = there.maximizer.dual_star().k_lambda() as u128 == here.value;
        (rhs, forward && backward)
    };
    Ok(DualityReport { ell, m, r, lhs, rhs, maximizers_map })
}

/// `K_{k−r}(ℓ,m) = m·C(ν,2) − rℓ(ν−1) + K_r(ℓ,m)`, with `Λ ↦ Λ^c` carrying
/// maximizers to maximizers.
pub fn second_duality_check(ell: usize, m: usize, r: usize, opts: &SearchOptions) -> Result<DualityReport> {
    check_params(ell, m)?;
    let k = binom(m as u64, ell as u64)? as usize;
    let low = k_r(ell, m, r, opts)?;
    let high = k_r(ell, m, k - r, opts)?;
    let nu = nu(ell, m)? as i128;
    let lhs = high.value as i128;
    let rhs = m as i128 * nu * (nu - 1) / 2 - (r * ell) as i128 * (nu - 1) + low.value as i128;
    let forward = low.maximizer.complement_in_universe()?.k_lambda() as u128 == high.value;
    let backward = high.maximizer.complement_in_universe()?.k_lambda() as u128 == low.value;
    Ok(DualityReport { ell, m, r, lhs, rhs, maximizers_map: forward && backward })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_duality_three_five() {
        for r in 0..=10 {
            let rep = first_duality_check(3, 5, r, &SearchOptions::default()).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn first_duality_self_dual() {
        for r in 0..=6 {
            let rep = first_duality_check(2, 4, r, &SearchOptions::default()).unwrap();
            assert!(rep.holds());
        }
    }

    #[test]
    fn first_duality_four_six_r3() {
        let rep = first_duality_check(4, 6, 3, &SearchOptions::default()).unwrap();
        assert_eq!(rep.lhs, 9);
        assert!(rep.holds());
    }

    #[test]
    fn second_duality_examples() {
        let rep = second_duality_check(2, 5, 2, &SearchOptions::default()).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (19, 19));
        let rep = second_duality_check(2, 6, 3, &SearchOptions::default()).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (39, 39));
        let rep = second_duality_check(2, 6, 0, &SearchOptions::default()).unwrap();
        assert_eq!(rep.lhs, 60);
        assert!(rep.holds());
    }

    #[test]
    fn degenerate_ell_equals_m() {
        assert!(first_duality_check(3, 3, 1, &SearchOptions::default()).unwrap().holds());
        assert!(second_duality_check(3, 3, 1, &SearchOptions::default()).unwrap().holds());
    }
}
