//! Run reports: every command can emit one JSON document with its inputs,
//! results, and the assertions it checked. Exit status is 0 iff every
//! assertion passed; reports are byte-stable across runs except for the
//! wall_time field.

use serde::Serialize;
use serde_json::Value;
use std::time::Instant;

#[derive(Serialize)]
pub struct Assertion {
    pub claim: String,
    pub paper_anchor: String,
    pub status: String,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub wall_time: f64,
}

pub struct ReportBuilder {
    command: String,
    inputs: Value,
    results: Value,
    assertions: Vec<Assertion>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str, inputs: Value) -> Self {
        ReportBuilder {
            command: command.to_string(),
            inputs,
            results: Value::Null,
            assertions: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn assert(&mut self, claim: &str, anchor: &str, ok: bool) -> bool {
        self.assertions.push(Assertion {
            claim: claim.to_string(),
            paper_anchor: anchor.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
        ok
    }

    pub fn results(&mut self, results: Value) {
        self.results = results;
    }

    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.status == "pass")
    }

    pub fn finish(self) -> RunReport {
        RunReport {
            command: self.command,
            inputs: self.inputs,
            results: self.results,
            assertions: self.assertions,
            wall_time: self.started.elapsed().as_secs_f64(),
        }
    }
}
