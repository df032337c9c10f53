use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use subclose::codes::{prime_power, ConjectureHarness, FieldTable, HarnessOptions, Verdict, MAX_FIELD_ORDER};
use subclose::combinat::{binom, check_binomial_identities, IdentityRanges, Subset, SubsetIndexer};
use subclose::families::{
    first_duality_check, k_r_closed, k_r_oracle, second_duality_check, SearchOptions, SubsetFamily,
};
use subclose::graphs::{graph_census, is_threshold, Graph};
use subclose::Exec;

use crate::args::{Format, GlobalOpts};
use crate::commands::Outcome;
use crate::output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestDocument {
    level: Level,
    seed: u64,
    passed: bool,
    checks: Vec<Check>,
}

const K25: [u128; 10] = [0, 1, 3, 6, 8, 12, 15, 19, 24, 30];
const K26: [u128; 15] = [0, 1, 3, 6, 10, 12, 15, 19, 24, 30, 34, 39, 45, 52, 60];

type CheckResult = Result<String, String>;

fn golden_rows(opts: &SearchOptions, fault: bool) -> CheckResult {
    let mut k25 = K25;
    if fault {
        k25[4] += 1;
    }
    for (m, expected) in [(5, &k25[..]), (6, &K26[..])] {
        let got = (1..=expected.len())
            .map(|r| k_r_oracle(2, m, r, opts).map(|rec| rec.value))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        if got != expected {
            return Err(format!("K_r(2,{m}) = {got:?}, expected {expected:?}"));
        }
    }
    Ok("K_r(2,5) and K_r(2,6) match".into())
}

fn identities(level: Level) -> CheckResult {
    let span = if level == Level::Full { -6..=7 } else { -4..=5 };
    let rep = check_binomial_identities(&IdentityRanges::uniform(span));
    if rep.passed() {
        Ok(format!("{} instances", rep.checked))
    } else {
        Err(format!("{} violations, first {:?}", rep.violations.len(), rep.violations[0]))
    }
}

fn closed_forms(opts: &SearchOptions, max_k: u128) -> CheckResult {
    let mut n = 0;
    for m in 1..=16usize {
        for ell in 1..=m {
            let k = binom(m as u64, ell as u64).map_err(|e| e.to_string())?;
            if k > max_k {
                continue;
            }
            for r in 0..=k as usize {
                if let Some(c) = k_r_closed(ell, m, r).map_err(|e| e.to_string())? {
                    let o = k_r_oracle(ell, m, r, opts).map_err(|e| e.to_string())?.value;
                    if c != o {
                        return Err(format!("K_{r}({ell},{m}): closed {c}, oracle {o}"));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} values"))
}

fn dualities(opts: &SearchOptions) -> CheckResult {
    let mut n = 0;
    for (ell, m) in [(2, 5), (3, 5), (2, 6), (4, 6)] {
        let k = binom(m as u64, ell as u64).unwrap() as usize;
        for r in 0..=k {
            let a = first_duality_check(ell, m, r, opts).map_err(|e| e.to_string())?;
            let b = second_duality_check(ell, m, r, opts).map_err(|e| e.to_string())?;
            if !a.holds() || !b.holds() {
                return Err(format!("{a:?} / {b:?}"));
            }
            n += 2;
        }
    }
    Ok(format!("{n} instances"))
}

fn random_graph(rng: &mut ChaCha8Rng, max_m: usize) -> Graph {
    let m = rng.random_range(2..=max_m);
    let edges: Vec<Subset> = SubsetIndexer::new(m, 2).unwrap().iter().filter(|_| rng.random_bool(0.5)).collect();
    Graph::from_family(SubsetFamily::new(m, 2, edges).unwrap()).unwrap()
}

fn sigma_identities(seed: u64, samples: usize) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = random_graph(&mut rng, 12);
        let (m, r) = (g.m() as i128, g.size() as i128);
        let s = g.sigma() as i128;
        if s != 2 * g.family().k_lambda() as i128 + 2 * r {
            return Err(format!("sum of squared degrees on {:?}", g.edge_list()));
        }
        if g.complement().sigma() as i128 != m * (m - 1) * (m - 1) - 4 * r * (m - 1) + s {
            return Err(format!("complement relation on {:?}", g.edge_list()));
        }
    }
    Ok(format!("{samples} random graphs"))
}

fn fields() -> CheckResult {
    let mut orders = Vec::new();
    for q in 2..=MAX_FIELD_ORDER {
        if prime_power(q).is_none() {
            continue;
        }
        let f = FieldTable::with_order(q).map_err(|e| e.to_string())?;
        f.verify_axioms().map_err(|e| format!("GF({q}): {e}"))?;
        orders.push(q);
    }
    Ok(format!("q in {orders:?}"))
}

fn graphs(max_m: usize, exec: Exec, budget: u128) -> CheckResult {
    let mut optimal = 0;
    for m in 2..=max_m {
        let census = graph_census(m, exec, budget).map_err(|e| e.to_string())?;
        for row in &census.rows {
            if row.de_caen_violations > 0 {
                return Err(format!("de Caen bound exceeded at m = {m}, r = {}", row.r));
            }
            for &mask in &row.maximizers {
                let g = Graph::from_edge_mask(m, mask).map_err(|e| e.to_string())?;
                if !is_threshold(&g).is_threshold {
                    return Err(format!("optimal graph {:?} is not threshold", g.edge_list()));
                }
                optimal += 1;
            }
        }
    }
    Ok(format!("all graphs on m <= {max_m} vertices, {optimal} optimal"))
}

fn codes(opts: HarnessOptions) -> CheckResult {
    let h = ConjectureHarness::new(2, 4, 2, None, opts).map_err(|e| e.to_string())?;
    let d: Vec<usize> = (1..=6).map(|r| h.report(r).map(|rep| rep.d_r)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if d != [16, 24, 28, 32, 34, 35] {
        return Err(format!("C(2,4)/F2 hierarchy {d:?}"));
    }
    for r in 1..=3 {
        let rep = h.report(r).map_err(|e| e.to_string())?;
        if rep.verdict != Verdict::Equal {
            return Err(format!("C(2,4)/F2 at r = {r}: {:?}", rep.verdict));
        }
    }
    for alpha in [vec![3, 4], vec![2, 4]] {
        let rep = ConjectureHarness::new(2, 4, 2, Some(alpha.clone()), opts)
            .and_then(|h| h.report(1))
            .map_err(|e| e.to_string())?;
        if rep.verdict != Verdict::Equal {
            return Err(format!("alpha {alpha:?} at r = 1: {:?}", rep.verdict));
        }
    }
    Ok(format!("C(2,4)/F2 d_r = {d:?}, Schubert r = 1 verified"))
}

pub fn run(g: &GlobalOpts, level: Level, fault: bool) -> anyhow::Result<Outcome> {
    let exec = if g.sequential { Exec::Sequential } else { Exec::Parallel };
    let opts = SearchOptions { budget: g.budget_families, ..SearchOptions::default() }.with_exec(exec);
    let full = level == Level::Full;
    let harness = HarnessOptions {
        subspace_budget: g.budget_subspaces,
        family_budget: g.budget_families,
        exec,
        ..HarnessOptions::default()
    };
    let suites: Vec<(&'static str, CheckResult)> = vec![
        ("binomial identities", identities(level)),
        ("golden K_r rows", golden_rows(&opts, fault)),
        ("closed forms against oracle", closed_forms(&opts, if full { 15 } else { 10 })),
        ("first and second duality", dualities(&opts)),
        ("squared degrees and complement", sigma_identities(g.seed, if full { 10_000 } else { 1_000 })),
        ("finite field axioms", fields()),
        ("bounds and threshold optima", graphs(if full { 7 } else { 6 }, exec, g.budget_families.max(1 << 21))),
        ("Grassmann and Schubert codes", codes(harness)),
    ];
    let checks: Vec<Check> = suites
        .into_iter()
        .map(|(name, res)| match res {
            Ok(detail) => Check { name, passed: true, detail },
            Err(detail) => Check { name, passed: false, detail },
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    let text = match g.format {
        Format::Table => {
            let mut t = String::new();
            for c in &checks {
                t.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            t.push_str(if passed { "all checks passed\n" } else { "some checks FAILED\n" });
            t
        }
        Format::Json => output::json("selftest", &SelftestDocument { level, seed: g.seed, passed, checks })?,
        Format::Csv => output::csv(&checks)?,
    };
    Ok(Outcome { text, ok: passed })
}
