//! Exhaustive scans over edge subsets, encoded as bitmasks over the colex
//! list of pairs of `[m]`.

use serde::Serialize;

use crate::combinat::{binom, SubsetIndexer, MAX_GROUND};
use crate::error::{invalid, Error, Result};
use crate::exec::{self, Exec};

/// Endpoints of every edge slot, 0-based, in colex order.
pub(crate) struct EdgeTable {
    m: usize,
    ends: Vec<(u8, u8)>,
}

impl EdgeTable {
    pub(crate) fn new(m: usize) -> Result<Self> {
        let pairs = SubsetIndexer::new(m, 2)?;
        if pairs.count() > MAX_GROUND {
            return Err(invalid(format!("C({m},2) edge slots do not fit a bitmask")));
        }
        let ends = pairs
            .iter()
            .map(|p| {
                let v = p.elements();
                ((v[0] - 1) as u8, (v[1] - 1) as u8)
            })
            .collect();
        Ok(EdgeTable { m, ends })
    }

    pub(crate) fn slots(&self) -> usize {
        self.ends.len()
    }

    #[inline]
    pub(crate) fn degrees(&self, mut mask: u64) -> [u32; MAX_GROUND] {
        let mut deg = [0u32; MAX_GROUND];
        while mask != 0 {
            let e = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            let (u, v) = self.ends[e];
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    #[inline]
    pub(crate) fn sigma(&self, mask: u64) -> u64 {
        self.degrees(mask)[..self.m].iter().map(|&d| (d * d) as u64).sum()
    }

    /// Every two edges of `mask` share a vertex.
    pub(crate) fn pairwise_incident(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (a, b) = self.ends[e];
            let mut others = rest;
            while others != 0 {
                let f = others.trailing_zeros() as usize;
                others &= others - 1;
                let (c, d) = self.ends[f];
                if a != c && a != d && b != c && b != d {
                    return false;
                }
            }
        }
        true
    }
}

const CHUNKS: usize = 256;

/// Folds over every edge mask with exactly `r` edges, in colex chunks.
pub(crate) fn scan_fixed_size<T, F, R>(table: &EdgeTable, r: usize, exec: Exec, budget: u128, identity: T, fold: F, merge: R) -> Result<T>
where
    T: Send + Sync + Clone,
    F: Fn(T, u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let k = table.slots();
    let total = binom(k as u64, r as u64)?;
    if total > budget {
        return Err(Error::BudgetExceeded { what: "graph enumeration", count: total, budget });
    }
    let ix = SubsetIndexer::new(k, r)?;
    let total = ix.count();
    let chunk = total.div_ceil(CHUNKS).max(1);
    let pieces = total.div_ceil(chunk);
    Ok(exec::map_reduce(
        exec,
        pieces,
        identity.clone(),
        |p| {
            let start = p * chunk;
            let len = chunk.min(total - start);
            ix.iter_from(start).take(len).fold(identity.clone(), |acc, s| fold(acc, s.bits()))
        },
        merge,
    ))
}

/// Folds over every edge mask in `0..2^k`.
fn scan_all<T, F, R>(table: &EdgeTable, exec: Exec, budget: u128, identity: T, fold: F, merge: R) -> Result<T>
where
    T: Send + Sync + Clone,
    F: Fn(T, u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let k = table.slots();
    let total = 1u128 << k;
    if total > budget {
        return Err(Error::BudgetExceeded { what: "graph census", count: total, budget });
    }
    let total = total as u64;
    let chunk = total.div_ceil(CHUNKS as u64).max(1);
    let pieces = total.div_ceil(chunk) as usize;
    Ok(exec::map_reduce(
        exec,
        pieces,
        identity.clone(),
        |p| {
            let start = p as u64 * chunk;
            let end = (start + chunk).min(total);
            (start..end).fold(identity.clone(), &fold)
        },
        merge,
    ))
}

/// Per-size summary of every graph on `[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub r: usize,
    pub graphs: u64,
    pub sigma_max: u64,
    /// Edge masks of every `(m,r)`-optimal graph, ascending.
    pub maximizers: Vec<u64>,
    /// Graphs exceeding de Caen's bound (expected zero).
    pub de_caen_violations: u64,
    /// Graphs meeting de Caen's bound with equality.
    pub de_caen_tight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphCensus {
    pub m: usize,
    pub rows: Vec<CensusRow>,
}

fn empty_rows(k: usize) -> Vec<CensusRow> {
    (0..=k)
        .map(|r| CensusRow { r, graphs: 0, sigma_max: 0, maximizers: Vec::new(), de_caen_violations: 0, de_caen_tight: 0 })
        .collect()
}

fn merge_rows(mut a: Vec<CensusRow>, b: Vec<CensusRow>) -> Vec<CensusRow> {
    for (x, y) in a.iter_mut().zip(b) {
        if y.graphs == 0 {
            continue;
        }
        if x.graphs == 0 || y.sigma_max > x.sigma_max {
            x.sigma_max = y.sigma_max;
            x.maximizers = y.maximizers;
        } else if y.sigma_max == x.sigma_max {
            x.maximizers.extend(y.maximizers);
        }
        x.graphs += y.graphs;
        x.de_caen_violations += y.de_caen_violations;
        x.de_caen_tight += y.de_caen_tight;
    }
    a
}

/// Scans all `2^C(m,2)` graphs on `[m]`, recording for each edge count the
/// maximum `Σ`, every optimal graph, and the de Caen comparison
/// `Σ·(m−1)` vs `r(2r + (m−1)(m−2))`, done in integers.
pub fn graph_census(m: usize, exec: Exec, budget: u128) -> Result<GraphCensus> {
    if m < 2 {
        return Err(invalid("graph census needs m >= 2"));
    }
    let table = EdgeTable::new(m)?;
    let k = table.slots();
    let m1 = (m - 1) as u64;
    let mut rows = scan_all(
        &table,
        exec,
        budget,
        empty_rows(k),
        |mut rows, mask| {
            let r = mask.count_ones() as usize;
            let s = table.sigma(mask);
            let row = &mut rows[r];
            if row.graphs == 0 || s > row.sigma_max {
                row.sigma_max = s;
                row.maximizers.clear();
                row.maximizers.push(mask);
            } else if s == row.sigma_max {
                row.maximizers.push(mask);
            }
            row.graphs += 1;
            let lhs = s * m1;
            let r = r as u64;
            let rhs = r * (2 * r + m1 * (m1 - 1));
            if lhs > rhs {
                row.de_caen_violations += 1;
            } else if lhs == rhs {
                row.de_caen_tight += 1;
            }
            rows
        },
        merge_rows,
    )?;
    for row in &mut rows {
        row.maximizers.sort_unstable();
    }
    Ok(GraphCensus { m, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarTriangleReport {
    pub m: usize,
    /// Graphs in which every two edges are incident.
    pub intersecting: u64,
    /// Of those, the ones that are neither a star nor a triangle.
    pub exceptions: Vec<u64>,
}

/// Checks over every graph on `[m]` that pairwise-incident edge sets are
/// stars or triangles.
pub fn star_or_triangle_scan(m: usize, exec: Exec, budget: u128) -> Result<StarTriangleReport> {
    let table = EdgeTable::new(m)?;
    let (intersecting, mut exceptions) = scan_all(
        &table,
        exec,
        budget,
        (0u64, Vec::new()),
        |(mut n, mut bad), mask| {
            if table.pairwise_incident(mask) {
                n += 1;
                let r = mask.count_ones();
                let deg = table.degrees(mask);
                let deg = &deg[..m];
                let star = r == 0 || deg.contains(&r);
                let triangle = r == 3 && deg.iter().filter(|&&d| d == 2).count() == 3;
                if !star && !triangle {
                    bad.push(mask);
                }
            }
            (n, bad)
        },
        |(a, mut x), (b, y)| {
            x.extend(y);
            (a + b, x)
        },
    )?;
    exceptions.sort_unstable();
    Ok(StarTriangleReport { m, intersecting, exceptions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn edge_table_sigma_matches_graph() {
        let t = EdgeTable::new(6).unwrap();
        for mask in (0u64..(1 << 15)).step_by(37) {
            assert_eq!(t.sigma(mask), Graph::from_edge_mask(6, mask).unwrap().sigma());
        }
    }

    #[test]
    fn census_small() {
        let c = graph_census(4, Exec::Sequential, 1 << 20).unwrap();
        assert_eq!(c.rows.len(), 7);
        assert_eq!(c.rows.iter().map(|r| r.graphs).sum::<u64>(), 64);
        assert_eq!(c.rows[3].sigma_max, 12);
        assert!(c.rows.iter().all(|r| r.de_caen_violations == 0));
        let p = graph_census(4, Exec::Parallel, 1 << 20).unwrap();
        assert_eq!(c, p);
    }

    #[test]
    fn fixed_size_scan_counts() {
        let t = EdgeTable::new(5).unwrap();
        let n = scan_fixed_size(&t, 4, Exec::Parallel, u128::MAX, 0u64, |a, _| a + 1, |a, b| a + b).unwrap();
        assert_eq!(n, 210);
        assert!(scan_fixed_size(&t, 4, Exec::Parallel, 10, 0u64, |a, _| a + 1, |a, b| a + b).is_err());
    }

    #[test]
    fn intersecting_graphs_are_stars_or_triangles() {
        let rep = star_or_triangle_scan(5, Exec::Parallel, 1 << 20).unwrap();
        assert!(rep.exceptions.is_empty());
        assert!(rep.intersecting > 0);
    }
}
