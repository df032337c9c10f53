use std::ops::RangeInclusive;

use anyhow::{bail, Context};
use serde::Serialize;
use subclose::codes::{
    build_code, enumerate_grassmannian, enumerate_schubert, ConjectureHarness, ConjectureReport, FieldTable,
    HarnessOptions, SchubertIndex, DEFAULT_POINT_BUDGET,
};
use subclose::combinat::{binom, Subset, SubsetIndexer};
use subclose::families::{k_r, k_r_closed, k_r_oracle, kr_text_table, KrRecord, SearchOptions};
use subclose::graphs::{optimal_graphs, SigmaRecord};
use subclose::Exec;

use crate::args::{Format, GlobalOpts, KrMode};
use crate::output;

/// Rendered output plus whether every check inside it passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn exec(g: &GlobalOpts) -> Exec {
    if g.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn search_options(g: &GlobalOpts) -> SearchOptions {
    SearchOptions { budget: g.budget_families, ..SearchOptions::default() }.with_exec(exec(g))
}

fn check_ell_m(ell: usize, m: usize) -> anyhow::Result<usize> {
    if ell == 0 || ell > m || m > subclose::combinat::MAX_GROUND {
        bail!("need 1 <= ell <= m <= {}, got ell = {ell}, m = {m}", subclose::combinat::MAX_GROUND);
    }
    let k = binom(m as u64, ell as u64)?;
    usize::try_from(k).context("C(m, ell) does not fit in usize")
}

fn check_r(r: &RangeInclusive<usize>, k: usize) -> anyhow::Result<()> {
    if *r.end() > k {
        bail!("r = {} exceeds C(m, ell) = {k}", r.end());
    }
    Ok(())
}

fn family_text(members: &[Subset]) -> String {
    members.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct KrRow {
    #[serde(flatten)]
    record: KrRecord,
    /// Closed-form value, when one applies and the mode computes it.
    closed_value: Option<u128>,
}

#[derive(Serialize)]
struct KrCsvRow {
    ell: usize,
    m: usize,
    r: usize,
    value: u128,
    method: String,
    closed_value: Option<u128>,
    maximizer: String,
}

#[derive(Serialize)]
struct KrDocument {
    ell: usize,
    m: usize,
    mode: &'static str,
    disagreements: Vec<usize>,
    records: Vec<KrRow>,
}

pub fn kr_table(g: &GlobalOpts, ell: usize, m: usize, r: RangeInclusive<usize>, mode: KrMode) -> anyhow::Result<Outcome> {
    let k = check_ell_m(ell, m)?;
    check_r(&r, k)?;
    let opts = search_options(g);
    let mut rows = Vec::new();
    for r in r {
        let row = match mode {
            KrMode::Closed => {
                let record = k_r(ell, m, r, &opts)?;
                let closed_value = k_r_closed(ell, m, r)?;
                KrRow { record, closed_value }
            }
            KrMode::Oracle => KrRow { record: k_r_oracle(ell, m, r, &opts)?, closed_value: None },
            KrMode::Both => KrRow { record: k_r_oracle(ell, m, r, &opts)?, closed_value: k_r_closed(ell, m, r)? },
        };
        rows.push(row);
    }
    let disagreements: Vec<usize> = rows
        .iter()
        .filter(|row| row.closed_value.is_some_and(|c| c != row.record.value))
        .map(|row| row.record.r)
        .collect();
    let ok = disagreements.is_empty();
    let text = match g.format {
        Format::Table => {
            let recs: Vec<KrRecord> = rows.iter().map(|row| row.record.clone()).collect();
            let mut t = kr_text_table(&recs);
            if mode == KrMode::Both {
                let checked = rows.iter().filter(|row| row.closed_value.is_some()).count();
                t.push_str(&format!("closed forms checked: {checked}, disagreements: {}\n", disagreements.len()));
            }
            t
        }
        Format::Json => {
            let mode = match mode {
                KrMode::Closed => "closed",
                KrMode::Oracle => "oracle",
                KrMode::Both => "both",
            };
            output::json("kr-table", &KrDocument { ell, m, mode, disagreements: disagreements.clone(), records: rows })?
        }
        Format::Csv => {
            let flat: Vec<KrCsvRow> = rows
                .iter()
                .map(|row| KrCsvRow {
                    ell,
                    m,
                    r: row.record.r,
                    value: row.record.value,
                    method: serde_json::to_value(row.record.method).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
                    closed_value: row.closed_value,
                    maximizer: family_text(row.record.maximizer.members()),
                })
                .collect();
            output::csv(&flat)?
        }
    };
    if !ok {
        eprintln!("closed form and oracle disagree at r in {disagreements:?}");
    }
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct OptimalDocument {
    records: Vec<SigmaRecord>,
}

#[derive(Serialize)]
struct OptimalCsvRow {
    m: usize,
    r: usize,
    sigma_max: u64,
    sigma_via_k: u64,
    threshold: bool,
    de_caen_bound: String,
    de_caen_tight: bool,
    trivial_bound: Option<u64>,
    trivial_tight: Option<bool>,
    dual_bound: Option<i128>,
    dual_tight: Option<bool>,
    maximizer: String,
}

fn edges_text(rec: &SigmaRecord) -> String {
    rec.maximizer.edge_list().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

fn opt_text<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn optimal(g: &GlobalOpts, m: usize, r: RangeInclusive<usize>) -> anyhow::Result<Outcome> {
    let k = check_ell_m(2, m)?;
    check_r(&r, k)?;
    let opts = search_options(g);
    let records = r.map(|r| optimal_graphs(m, r, &opts)).collect::<Result<Vec<_>, _>>()?;
    let ok = records.iter().all(|rec| rec.maximizer_is_threshold && rec.sigma_max == rec.sigma_via_k);
    let text = match g.format {
        Format::Table => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|rec| {
                    vec![
                        rec.m.to_string(),
                        rec.r.to_string(),
                        rec.sigma_max.to_string(),
                        rec.maximizer_is_threshold.to_string(),
                        rec.de_caen_bound.to_string(),
                        rec.de_caen_tight.to_string(),
                        opt_text(rec.trivial_bound),
                        opt_text(rec.dual_bound),
                        edges_text(rec),
                    ]
                })
                .collect();
            output::table(&["m", "r", "sigma", "threshold", "de_caen", "tight", "trivial", "dual", "maximizer"], &rows)
        }
        Format::Json => output::json("optimal", &OptimalDocument { records })?,
        Format::Csv => {
            let flat: Vec<OptimalCsvRow> = records
                .iter()
                .map(|rec| OptimalCsvRow {
                    m: rec.m,
                    r: rec.r,
                    sigma_max: rec.sigma_max,
                    sigma_via_k: rec.sigma_via_k,
                    threshold: rec.maximizer_is_threshold,
                    de_caen_bound: rec.de_caen_bound.to_string(),
                    de_caen_tight: rec.de_caen_tight,
                    trivial_bound: rec.trivial_bound,
                    trivial_tight: rec.trivial_tight,
                    dual_bound: rec.dual_bound,
                    dual_tight: rec.dual_tight,
                    maximizer: edges_text(rec),
                })
                .collect();
            output::csv(&flat)?
        }
    };
    Ok(Outcome { text, ok })
}

fn harness_options(g: &GlobalOpts) -> HarnessOptions {
    HarnessOptions {
        point_budget: DEFAULT_POINT_BUDGET,
        subspace_budget: g.budget_subspaces,
        family_budget: g.budget_families,
        exec: exec(g),
    }
}

#[derive(Serialize)]
struct VerifyDocument {
    proven_regimes_verified: bool,
    reports: Vec<ConjectureReport>,
}

#[derive(Serialize)]
struct VerifyCsvRow {
    r: usize,
    n: usize,
    k: usize,
    d_r: usize,
    rhs_subclose: usize,
    rhs_all_coordinate: usize,
    verdict: String,
    proven_regime: String,
    witness_lambda: String,
}

fn enum_text<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => "-".to_string(),
    }
}

pub fn verify(
    g: &GlobalOpts,
    ell: usize,
    m: usize,
    q: u64,
    r: RangeInclusive<usize>,
    alpha: Option<Vec<usize>>,
) -> anyhow::Result<Outcome> {
    check_ell_m(ell, m)?;
    if *r.start() == 0 {
        bail!("r must be at least 1");
    }
    let h = ConjectureHarness::new(ell, m, q, alpha, harness_options(g))?;
    check_r(&r, h.code().k).context("r exceeds the code dimension")?;
    let reports = r.map(|r| h.report(r)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(ConjectureReport::consistent);
    let text = match g.format {
        Format::Table => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|rep| {
                    vec![
                        rep.params.r.to_string(),
                        rep.d_r.to_string(),
                        rep.rhs_subclose.to_string(),
                        rep.rhs_all_coordinate.to_string(),
                        enum_text(&rep.verdict),
                        rep.proven_regime.as_ref().map_or_else(|| "open".to_string(), enum_text),
                        family_text(&rep.witness_lambda),
                    ]
                })
                .collect();
            let c = h.code();
            let mut t = format!("[{}, {}]_{} code\n", c.n, c.k, c.q);
            t.push_str(&output::table(&["r", "d_r", "subclose", "all_coord", "verdict", "regime", "witness"], &rows));
            t
        }
        Format::Json => output::json("verify", &VerifyDocument { proven_regimes_verified: ok, reports })?,
        Format::Csv => {
            let flat: Vec<VerifyCsvRow> = reports
                .iter()
                .map(|rep| VerifyCsvRow {
                    r: rep.params.r,
                    n: rep.params.n,
                    k: rep.params.k,
                    d_r: rep.d_r,
                    rhs_subclose: rep.rhs_subclose,
                    rhs_all_coordinate: rep.rhs_all_coordinate,
                    verdict: enum_text(&rep.verdict),
                    proven_regime: rep.proven_regime.as_ref().map_or_else(|| "open".to_string(), enum_text),
                    witness_lambda: family_text(&rep.witness_lambda),
                })
                .collect();
            output::csv(&flat)?
        }
    };
    if !ok {
        eprintln!("a proven-regime instance failed to verify");
    }
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct CodeDocument {
    ell: usize,
    m: usize,
    q: usize,
    alpha: Option<Vec<usize>>,
    n: usize,
    k: usize,
    row_labels: Vec<Subset>,
    generator: Vec<Vec<u8>>,
}

pub fn code(g: &GlobalOpts, ell: usize, m: usize, q: u64, alpha: Option<Vec<usize>>) -> anyhow::Result<Outcome> {
    check_ell_m(ell, m)?;
    let f = FieldTable::with_order(q)?;
    let (points, rows) = match &alpha {
        None => (
            enumerate_grassmannian(ell, m, &f, DEFAULT_POINT_BUDGET, exec(g))?,
            SubsetIndexer::new(m, ell)?.all(),
        ),
        Some(a) => {
            let s = SchubertIndex::new(a.clone(), ell, m)?;
            (enumerate_schubert(&s, &f, DEFAULT_POINT_BUDGET, exec(g))?, s.index_set()?)
        }
    };
    let c = build_code(&f, ell, m, &points, &rows)?;
    let text = match g.format {
        Format::Table => c.to_matrix_text(),
        Format::Json => output::json(
            "code",
            &CodeDocument {
                ell,
                m,
                q: c.q,
                alpha,
                n: c.n,
                k: c.k,
                row_labels: c.row_labels.clone(),
                generator: c.generator.clone(),
            },
        )?,
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            for (label, row) in c.row_labels.iter().zip(&c.generator) {
                let mut rec = vec![label.to_string()];
                rec.extend(row.iter().map(|e| e.to_string()));
                w.write_record(&rec)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    Ok(Outcome { text, ok: true })
}
