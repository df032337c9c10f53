use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subclose")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn assert_valid(schema_name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema_name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn kr_table_golden_rows() {
    let out = run(&["kr-table", "--ell", "2", "--m", "5", "--r", "1..10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("K_r(2,5) |  0  1  3  6  8 12 15 19 24 30\n"));

    let doc = json(&["kr-table", "--ell", "2", "--m", "6", "--r", "1..15", "--mode", "oracle"]);
    let values: Vec<u64> = doc["records"].as_array().unwrap().iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, [0, 1, 3, 6, 10, 12, 15, 19, 24, 30, 34, 39, 45, 52, 60]);

    let doc = json(&["kr-table", "--ell", "2", "--m", "4", "--r", "0"]);
    assert_eq!(doc["records"][0]["value"], 0);
}

#[test]
fn optimal_examples() {
    let doc = json(&["optimal", "--m", "5", "--r", "4"]);
    let rec = &doc["records"][0];
    assert_eq!(rec["sigma_max"], 20);
    assert_eq!(rec["maximizer_is_threshold"], true);
    assert_eq!(rec["de_caen_bound"], "20");
    assert_eq!(rec["de_caen_tight"], true);
    assert_eq!(rec["maximizer"]["edges"], serde_json::json!([[1, 2], [1, 3], [1, 4], [1, 5]]));
    assert_eq!(json(&["optimal", "--m", "6", "--r", "5"])["records"][0]["sigma_max"], 30);
    assert_eq!(json(&["optimal", "--m", "4", "--r", "0"])["records"][0]["sigma_max"], 0);
}

#[test]
fn verify_examples() {
    let doc = json(&["verify", "--ell", "1", "--m", "3", "--q", "2", "--r", "1..3"]);
    let d: Vec<u64> = doc["reports"].as_array().unwrap().iter().map(|r| r["d_r"].as_u64().unwrap()).collect();
    assert_eq!(d, [4, 6, 7]);

    let doc = json(&["verify", "--ell", "2", "--m", "4", "--q", "2", "--r", "1..6"]);
    assert_eq!(doc["proven_regimes_verified"], true);
    for rep in doc["reports"].as_array().unwrap().iter().take(3) {
        assert_eq!(rep["verdict"], "equal");
    }

    let doc = json(&["verify", "--ell", "2", "--m", "4", "--q", "2", "--alpha", "2,4", "--r", "1"]);
    let rep = &doc["reports"][0];
    assert_eq!((rep["params"]["n"].as_u64(), rep["params"]["k"].as_u64()), (Some(19), Some(5)));
    assert_eq!(rep["verdict"], "equal");
    assert_eq!(rep["proven_regime"], "schubert_minimum_distance");
}

#[test]
fn outputs_match_schemas() {
    assert_valid("kr-table", &json(&["kr-table", "--ell", "2", "--m", "5", "--r", "0..10"]));
    assert_valid("kr-table", &json(&["kr-table", "--ell", "3", "--m", "6", "--r", "1..20", "--mode", "closed"]));
    assert_valid("optimal", &json(&["optimal", "--m", "5", "--r", "0..10"]));
    assert_valid("verify", &json(&["verify", "--ell", "2", "--m", "4", "--q", "2", "--r", "1..6"]));
    assert_valid("verify", &json(&["verify", "--ell", "2", "--m", "4", "--q", "3", "--alpha", "2,4", "--r", "1..2"]));
    assert_valid("code", &json(&["code", "--ell", "2", "--m", "4", "--q", "2"]));
    assert_valid("code", &json(&["code", "--ell", "2", "--m", "4", "--q", "4", "--alpha", "1,4"]));
    assert_valid("selftest", &json(&["selftest", "--fast"]));
}

#[test]
fn schema_rejects_wrong_version() {
    let mut doc = json(&["code", "--ell", "1", "--m", "2", "--q", "2"]);
    doc["schema_version"] = 2.into();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/code.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(!jsonschema::is_valid(&schema, &doc));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["kr-table", "--ell", "3", "--m", "6", "--r", "1..20", "--format", "json"],
        vec!["optimal", "--m", "6", "--r", "0..15", "--format", "csv"],
        vec!["verify", "--ell", "2", "--m", "4", "--q", "2", "--r", "1..6", "--format", "json"],
        vec!["selftest", "--fast", "--seed", "7", "--format", "json"],
        vec!["code", "--ell", "2", "--m", "4", "--q", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        let mut seq = args.clone();
        seq.push("--sequential");
        let c = run(&seq);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?} sequential");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["selftest", "--fast"]).status.code(), Some(0));
    let faulty = run(&["selftest", "--fast", "--inject-fault"]);
    assert_eq!(faulty.status.code(), Some(1));
    assert!(stdout(&faulty).contains("FAIL golden K_r rows"));
    // invalid parameters and exhausted budgets
    assert_eq!(run(&["kr-table", "--ell", "3", "--m", "2", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["kr-table", "--ell", "2", "--m", "3", "--r", "1..9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--ell", "2", "--m", "4", "--q", "6", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--ell", "2", "--m", "4", "--q", "2", "--r", "1..7"]).status.code(), Some(2));
    assert_eq!(
        run(&["kr-table", "--ell", "2", "--m", "8", "--r", "14", "--mode", "oracle", "--budget-families", "100"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["kr-table", "--ell", "2", "--m", "5", "--r", "x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--ell", "2", "--m", "4", "--q", "2", "--r", "1", "--alpha", "4,3"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let out = run(&["code", "--ell", "1", "--m", "3", "--q", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "1 1 1 1 0 0 0\n0 0 1 1 1 1 0\n0 1 0 1 0 1 1\n");
}

#[test]
fn csv_has_headers() {
    let out = run(&["kr-table", "--ell", "2", "--m", "4", "--r", "1..2", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("ell,m,r,value,method,closed_value,maximizer\n"));
    assert_eq!(text.lines().count(), 3);
}
