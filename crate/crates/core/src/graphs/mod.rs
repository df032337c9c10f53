//! Simple graphs on `[m]` viewed as families of 2-subsets.
//!
//! For `Λ ⊆ I_2[m]` the graph `G_Λ` has edge set `Λ`, and the sum of squared
//! degrees satisfies `Σ(G_Λ) = 2K_Λ + 2|Λ|`, so optimal graphs are exactly the
//! subclose families of 2-subsets.

mod bounds;
mod census;
mod threshold;

use serde::{Deserialize, Serialize};

use crate::combinat::{Subset, SubsetIndexer, MAX_GROUND};
use crate::error::{invalid, Result};
use crate::families::SubsetFamily;

pub use bounds::{
    complement_sigma_check, de_caen_bound, dual_bound, dual_bound_check, optimal_graphs, trivial_bound_check,
    DualBoundReport, SigmaRecord, TrivialBoundReport,
};
pub use census::{graph_census, star_or_triangle_scan, CensusRow, GraphCensus, StarTriangleReport};
pub use threshold::{is_threshold, ThresholdStep, ThresholdTrace};

/// A simple graph on the vertex set `[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    edges: SubsetFamily,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    m: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { m: self.m(), edges: self.edge_list().into_iter().map(|(u, v)| [u, v]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(g.m, &pairs).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a graph from 1-based vertex pairs. Loops and repeated edges are
    /// rejected.
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let members = edges
            .iter()
            .map(|&(u, v)| {
                if u == v {
                    return Err(invalid(format!("loop at vertex {u}")));
                }
                Subset::from_elements(&[u, v])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Graph { edges: SubsetFamily::new(m, 2, members)? })
    }

    pub fn from_family(fam: SubsetFamily) -> Result<Self> {
        if fam.ell() != 2 {
            return Err(invalid(format!("graph edges must be 2-subsets, got ell = {}", fam.ell())));
        }
        Ok(Graph { edges: fam })
    }

    /// Graph whose edges are the set bits of `mask`, edge `i` being the `i`-th
    /// pair of `[m]` in colex order.
    pub fn from_edge_mask(m: usize, mask: u64) -> Result<Self> {
        let pairs = SubsetIndexer::new(m, 2)?;
        if pairs.count() < 64 && mask >> pairs.count() != 0 {
            return Err(invalid("edge mask has bits beyond C(m,2)"));
        }
        let members = Subset::from_bits(mask).iter().map(|i| pairs.subset(i - 1)).collect::<Result<Vec<_>>>()?;
        Ok(Graph { edges: SubsetFamily::from_sorted_unchecked(m, 2, members) })
    }

    pub fn empty(m: usize) -> Result<Self> {
        Ok(Graph { edges: SubsetFamily::empty(m, 2)? })
    }

    pub fn complete(m: usize) -> Result<Self> {
        Ok(Graph { edges: SubsetFamily::all(m, 2)? })
    }

    /// `K_{1,leaves}` centred at vertex 1, padded with isolated vertices.
    pub fn star(m: usize, leaves: usize) -> Result<Self> {
        if leaves + 1 > m.max(1) {
            return Err(invalid(format!("a star with {leaves} leaves needs more than {m} vertices")));
        }
        let edges: Vec<(usize, usize)> = (2..leaves + 2).map(|v| (1, v)).collect();
        Graph::new(m, &edges)
    }

    pub fn m(&self) -> usize {
        self.edges.m()
    }

    /// Number of edges `r`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.edges
    }

    /// Sorted 1-based edge list.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges
            .members()
            .iter()
            .map(|e| {
                let v = e.elements();
                (v[0], v[1])
            })
            .collect()
    }

    /// Degree of vertex `i + 1` at position `i`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.m()];
        for e in self.edges.members() {
            for v in e.iter() {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    /// `Σ(G)`, the sum of squared degrees.
    pub fn sigma(&self) -> u64 {
        self.degrees().iter().map(|&d| (d * d) as u64).sum()
    }

    /// `Ḡ`: same vertices, the non-edges as edges.
    pub fn complement(&self) -> Graph {
        Graph { edges: self.edges.complement_in_universe().expect("valid family") }
    }

    /// Neighbourhood bitmasks, vertex `i + 1` at position `i`.
    pub(crate) fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.m()];
        for e in self.edges.members() {
            let v = e.elements();
            adj[v[0] - 1] |= 1 << (v[1] - 1);
            adj[v[1] - 1] |= 1 << (v[0] - 1);
        }
        adj
    }

    /// One vertex of degree `r`, `r` vertices of degree 1, the rest isolated.
    pub fn is_star(&self) -> bool {
        let r = self.size();
        let mut deg = self.degrees();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        if r == 0 {
            return true;
        }
        deg[0] == r && deg[1..=r].iter().all(|&d| d == 1) && deg[r + 1..].iter().all(|&d| d == 0)
    }

    /// Three edges forming a triangle, nothing else.
    pub fn is_triangle(&self) -> bool {
        self.size() == 3 && self.degrees().iter().filter(|&&d| d == 2).count() == 3
    }
}

/// `Σ(G_Λ)` computed as `2K_Λ + 2|Λ|`.
pub fn sigma_from_k(fam: &SubsetFamily) -> Result<u64> {
    if fam.ell() != 2 {
        return Err(invalid(format!("sigma_from_k needs 2-subsets, got ell = {}", fam.ell())));
    }
    Ok(2 * fam.k_lambda() + 2 * fam.len() as u64)
}

pub(crate) fn check_vertices(m: usize) -> Result<()> {
    if m > MAX_GROUND {
        return Err(invalid(format!("m = {m} exceeds {MAX_GROUND}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(Graph::empty(5).unwrap().sigma(), 0);
        let star = Graph::star(5, 4).unwrap();
        assert_eq!(star.degrees(), vec![4, 1, 1, 1, 1]);
        assert_eq!(star.sigma(), 20);
        assert_eq!(Graph::complete(3).unwrap().sigma(), 12);
    }

    #[test]
    fn sigma_from_k_examples() {
        assert_eq!(sigma_from_k(&SubsetFamily::all(5, 2).unwrap()).unwrap(), 80);
        assert_eq!(sigma_from_k(&SubsetFamily::empty(5, 2).unwrap()).unwrap(), 0);
        let star = Graph::star(5, 4).unwrap();
        assert_eq!(sigma_from_k(star.family()).unwrap(), 20);
        assert!(sigma_from_k(&SubsetFamily::all(5, 3).unwrap()).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(4, &[(1, 1)]).is_err());
        assert!(Graph::new(4, &[(1, 2), (2, 1)]).is_err());
        assert!(Graph::new(4, &[(1, 5)]).is_err());
        assert!(Graph::from_edge_mask(4, 1 << 6).is_err());
    }

    #[test]
    fn edge_mask_follows_colex() {
        let g = Graph::from_edge_mask(4, 0b100001).unwrap();
        assert_eq!(g.edge_list(), vec![(1, 2), (3, 4)]);
    }

    #[test]
    fn star_and_triangle_detection() {
        assert!(Graph::star(6, 3).unwrap().is_star());
        assert!(Graph::star(6, 0).unwrap().is_star());
        assert!(Graph::new(6, &[(2, 5)]).unwrap().is_star());
        assert!(!Graph::new(6, &[(1, 2), (3, 4)]).unwrap().is_star());
        assert!(Graph::new(6, &[(1, 2), (2, 3), (1, 3)]).unwrap().is_triangle());
        assert!(!Graph::new(6, &[(1, 2), (2, 3), (3, 4)]).unwrap().is_triangle());
    }

    #[test]
    fn json_edge_lists() {
        let g = Graph::new(4, &[(3, 4), (1, 2)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"m":4,"edges":[[1,2],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Graph>(r#"{"m":4,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn complement_is_involution() {
        let g = Graph::new(6, &[(1, 2), (2, 3), (4, 6)]).unwrap();
        assert_eq!(g.complement().size(), 12);
        assert_eq!(g.complement().complement(), g);
    }
}
