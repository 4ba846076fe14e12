//! Verification suites: each suite expands into independent items, every
//! item is checked on its own, and failures carry a replayable payload.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

mod finite;
mod metric;

pub const SUITES: [&str; 10] = [
    "saturation",
    "sound4",
    "cts-equiv",
    "interpolation",
    "hms",
    "birkhoff",
    "umod-metric",
    "stack",
    "urysohn",
    "gelfand-roundtrip",
];

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const MAX_SIZE_ENV: &str = "ORDKIT_MAX_SIZE";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteParams {
    /// Overrides every corpus bound of the suite when set.
    pub max_size: Option<usize>,
    pub seed: u64,
    /// Random inputs per law or sampled family.
    pub samples: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { max_size: None, seed: DEFAULT_SEED, samples: None }
    }
}

impl SuiteParams {
    /// Reads `ORDKIT_MAX_SIZE` when no explicit bound is given.
    pub fn with_env(mut self) -> Result<Self> {
        if self.max_size.is_none() {
            if let Ok(v) = std::env::var(MAX_SIZE_ENV) {
                let n = v.trim().parse().map_err(|_| Error::Precondition(format!("{MAX_SIZE_ENV}={v} is not a size")))?;
                self.max_size = Some(n);
            }
        }
        Ok(self)
    }

    pub fn size(&self, default: usize) -> usize {
        self.max_size.unwrap_or(default)
    }

    pub fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

/// One unit of work: a named check applied to a JSON input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub check: &'static str,
    pub input: Value,
}

impl Item {
    pub fn new(check: &'static str, input: Value) -> Self {
        Item { check, input }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub status: Status,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub counterexamples: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: BTreeMap<String, CheckSummary>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.status != Status::Fail)
    }

    /// Deterministic JSON; wall time is added only on request.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if timing {
            v["wall_ms"] = json!(self.wall_ms as u64);
        }
        v
    }
}

pub const MAX_COUNTEREXAMPLES: usize = 5;

pub fn items(suite: &str, p: &SuiteParams) -> Result<Vec<Item>> {
    match suite {
        "saturation" => finite::saturation_items(p),
        "sound4" => finite::sound4_items(p),
        "cts-equiv" => finite::cts_items(p),
        "interpolation" => finite::interpolation_items(p),
        "hms" => finite::hms_items(p),
        "birkhoff" => finite::birkhoff_items(p),
        "umod-metric" => metric::metric_items(p),
        "stack" => metric::stack_items(p),
        "urysohn" => metric::urysohn_items(p),
        "gelfand-roundtrip" => metric::gelfand_items(p),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

pub fn check_item(suite: &str, check: &str, input: &Value) -> Result<Outcome> {
    match suite {
        "saturation" | "sound4" | "cts-equiv" | "interpolation" | "hms" | "birkhoff" => finite::check(check, input),
        "umod-metric" | "stack" | "urysohn" | "gelfand-roundtrip" => metric::check(check, input),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

pub fn run_suite(suite: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let start = Instant::now();
    let list = items(suite, params)?;
    let outcomes: Vec<(Item, Outcome)> = list
        .into_par_iter()
        .map(|it| {
            let o = check_item(suite, it.check, &it.input).unwrap_or_else(|e| Outcome::Fail(e.to_string()));
            (it, o)
        })
        .collect();
    let mut checks: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for (it, o) in outcomes {
        let c = checks.entry(it.check.to_string()).or_insert_with(|| CheckSummary {
            status: Status::Pass,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexamples: Vec::new(),
        });
        match o {
            Outcome::Pass => c.passed += 1,
            Outcome::Skipped(_) => c.skipped += 1,
            Outcome::Fail(msg) => {
                c.failed += 1;
                c.status = Status::Fail;
                if c.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    c.counterexamples.push(json!({
                        "suite": suite,
                        "check": it.check,
                        "input": it.input,
                        "message": msg,
                    }));
                }
            }
        }
    }
    for c in checks.values_mut() {
        if c.status == Status::Pass && c.passed == 0 && c.skipped > 0 {
            c.status = Status::Skipped;
        }
    }
    Ok(SuiteReport { suite: suite.to_string(), params: params.clone(), checks, wall_ms: start.elapsed().as_millis() })
}

/// Re-runs a single counterexample payload.
pub fn replay(payload: &Value) -> Result<Outcome> {
    let field = |k: &str| {
        payload.get(k).and_then(Value::as_str).ok_or_else(|| Error::Schema {
            pointer: format!("/{k}"),
            message: "expected a string".into(),
        })
    };
    let suite = field("suite")?;
    let check = field("check")?;
    let input = payload.get("input").ok_or_else(|| Error::Schema { pointer: "/input".into(), message: "missing".into() })?;
    check_item(suite, check, input)
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub(crate) fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| Error::Schema { pointer: format!("/{k}"), message: "missing".into() })
}

pub(crate) fn str_field<'a>(v: &'a Value, k: &str) -> Result<&'a str> {
    field(v, k)?.as_str().ok_or_else(|| Error::Schema { pointer: format!("/{k}"), message: "expected a string".into() })
}

pub(crate) fn u64_field(v: &Value, k: &str) -> Result<u64> {
    field(v, k)?.as_u64().ok_or_else(|| Error::Schema { pointer: format!("/{k}"), message: "expected an integer".into() })
}

pub(crate) fn outcome(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg())
    }
}
