use serde::Serialize;

use super::field::{Elem, FieldTable};
use super::grassmann::PluckerPoint;
use super::linalg::rank;
use crate::combinat::{Subset, SubsetIndexer};
use crate::error::{invalid, Error, Result};

/// A linear `[n, k]_q` code given by the generator matrix of a projective
/// system: row `i` is the coordinate `β_i`, column `j` is point `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearCode {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    /// `k × n`, entries are field-element indices.
    pub generator: Vec<Vec<Elem>>,
    pub row_labels: Vec<Subset>,
    pub columns: Vec<PluckerPoint>,
}

/// Builds the code of `points` with rows `row_index_set` (all of `I(ℓ,m)` for
/// a Grassmann code, `I_α(ℓ,m)` for a Schubert code).
///
/// Fails if the generator matrix is not of full row rank or some point
/// restricts to zero.
pub fn build_code(f: &FieldTable, ell: usize, m: usize, points: &[PluckerPoint], row_index_set: &[Subset]) -> Result<LinearCode> {
    if points.is_empty() {
        return Err(invalid("no points"));
    }
    let ix = SubsetIndexer::new(m, ell)?;
    let rows: Vec<usize> = row_index_set.iter().map(|&b| ix.index(b)).collect::<Result<_>>()?;
    if points.iter().any(|p| p.coords().len() != ix.count()) {
        return Err(invalid("points do not live in the Plücker space of I(ell,m)"));
    }
    let generator: Vec<Vec<Elem>> = rows.iter().map(|&r| points.iter().map(|p| p.coord(r)).collect()).collect();
    if let Some(j) = (0..points.len()).find(|&j| generator.iter().all(|row| row[j] == 0)) {
        return Err(Error::Degenerate(j));
    }
    let rk = rank(f, &generator);
    if rk != rows.len() {
        return Err(Error::RankDeficient { rank: rk, expected: rows.len() });
    }
    Ok(LinearCode {
        q: f.q(),
        n: points.len(),
        k: rows.len(),
        generator,
        row_labels: row_index_set.to_vec(),
        columns: points.to_vec(),
    })
}

impl LinearCode {
    /// One matrix row per line, entries separated by single spaces.
    pub fn to_matrix_text(&self) -> String {
        let mut out = String::new();
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Column `j` as a vector of length `k`.
    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.generator.iter().map(|row| row[j]).collect()
    }
}
