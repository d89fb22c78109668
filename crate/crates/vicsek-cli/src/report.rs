//! JSON serialization of suite reports.
//!
//! Schema (v1):
//!
//! ```json
//! {
//!   "schema": "vicsek-report-v1",
//!   "suite": "...",
//!   "config": { ... },
//!   "seed": 1448297266,
//!   "pass": true,
//!   "results": [
//!     {"name": "...", "pass": true, "details": "...",
//!      "witnesses": [{"word": "125", "corner": 1, "value": 0.5}],
//!      "extremes": {"max": 1.0}}
//!   ]
//! }
//! ```

use serde_json::{json, Map, Value};
use vicsek_core::report::{CheckReport, SuiteReport};

fn word_string(word: &[u8]) -> String {
    word.iter().map(|l| (b'0' + l) as char).collect()
}

fn check_to_json(check: &CheckReport) -> Value {
    let witnesses: Vec<Value> = check
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "word": word_string(&w.word),
                "corner": w.corner,
                "value": w.value,
            })
        })
        .collect();
    let mut extremes = Map::new();
    for (k, v) in &check.extremes {
        extremes.insert(k.clone(), json!(v));
    }
    json!({
        "name": check.name,
        "pass": check.pass,
        "details": check.details,
        "witnesses": witnesses,
        "extremes": Value::Object(extremes),
    })
}

/// Full report document for one or more suites sharing a config and seed.
pub fn suites_to_json(suites: &[SuiteReport], config: Value, seed: u64) -> Value {
    let all_pass = suites.iter().all(|s| s.pass());
    let suite_name = suites
        .iter()
        .map(|s| s.suite.as_str())
        .collect::<Vec<_>>()
        .join("+");
    let results: Vec<Value> = suites
        .iter()
        .flat_map(|s| s.cases.iter().map(check_to_json))
        .collect();
    json!({
        "schema": "vicsek-report-v1",
        "suite": suite_name,
        "config": config,
        "seed": seed,
        "pass": all_pass,
        "results": results,
    })
}
