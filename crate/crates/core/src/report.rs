//! JSON report envelope shared by every command.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NamedRecord {
    pub name: String,
    pub record: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub version: String,
    pub cache_hits: u64,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepTiming {
    pub step: String,
    pub ms: f64,
}

/// Results never carry wall times, so equal inputs and seed give equal
/// `results`; timings live in `timing` only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: Vec<NamedRecord>,
    pub provenance: Provenance,
    pub timing: Vec<StepTiming>,
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(format!("serializing report: {e}")))
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            command: command.to_string(),
            params: BTreeMap::new(),
            results: Vec::new(),
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION").to_string(),
                cache_hits: 0,
                seed: None,
            },
            timing: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> Result<&mut Self> {
        self.params.insert(key.to_string(), to_value(value)?);
        Ok(self)
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.provenance.seed = Some(seed);
        self
    }

    pub fn cache_hit(&mut self) -> &mut Self {
        self.provenance.cache_hits += 1;
        self
    }

    pub fn push(&mut self, name: &str, record: impl Serialize) -> Result<&mut Self> {
        self.results.push(NamedRecord {
            name: name.to_string(),
            record: to_value(record)?,
        });
        Ok(self)
    }

    /// Runs `work` and records its wall time under `step`.
    pub fn timed<T>(&mut self, step: &str, work: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = work();
        self.time(step, start);
        out
    }

    pub fn time(&mut self, step: &str, since: Instant) {
        self.timing.push(StepTiming {
            step: step.to_string(),
            ms: since.elapsed().as_secs_f64() * 1e3,
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}
