use serde::Serialize;

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdStep {
    /// The starting single vertex.
    Initial,
    Isolated,
    Universal,
}

/// Result of threshold recognition.
///
/// When the graph is threshold, `build` lists `(vertex, step)` in construction
/// order: starting from `build[0]`, each later vertex is added isolated or
/// universal with respect to the vertices before it. Otherwise `stuck` holds
/// the vertices left when peeling found neither kind of vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdTrace {
    pub is_threshold: bool,
    pub build: Vec<(usize, ThresholdStep)>,
    pub stuck: Vec<usize>,
}

/// Recognizes threshold graphs by repeatedly removing a vertex that is
/// isolated or dominating in what remains. The lowest-numbered eligible vertex
/// goes first, isolated before universal.
pub fn is_threshold(g: &Graph) -> ThresholdTrace {
    let m = g.m();
    let adj = g.adjacency();
    let mut remaining: u64 = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
    let mut peeled: Vec<(usize, ThresholdStep)> = Vec::with_capacity(m);

    while remaining.count_ones() > 1 {
        let mut found = None;
        for (v, &row) in adj.iter().enumerate().take(m) {
            let bit = 1u64 << v;
            if remaining & bit == 0 {
                continue;
            }
            let nbrs = row & remaining;
            if nbrs == 0 {
                found = Some((v, ThresholdStep::Isolated));
                break;
            }
            if nbrs == remaining & !bit {
                found = Some((v, ThresholdStep::Universal));
                break;
            }
        }
        match found {
            Some((v, step)) => {
                remaining &= !(1 << v);
                peeled.push((v + 1, step));
            }
            None => {
                let stuck = (0..m).filter(|v| remaining >> v & 1 == 1).map(|v| v + 1).collect();
                return ThresholdTrace { is_threshold: false, build: Vec::new(), stuck };
            }
        }
    }
    if remaining != 0 {
        peeled.push((remaining.trailing_zeros() as usize + 1, ThresholdStep::Initial));
    }
    peeled.reverse();
    ThresholdTrace { is_threshold: true, build: peeled, stuck: Vec::new() }
}
