use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    /// Wall-clock time; null unless timings were requested, so reports stay reproducible.
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub version: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<Artifact>,
}

/// A document produced alongside the checks (graph exports, certificates).
#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub name: String,
    pub format: String,
    pub content: String,
}

/// Collects checks, optionally timing each one.
pub struct Recorder {
    timings: bool,
    pub checks: Vec<Check>,
    pub artifacts: Vec<Artifact>,
}

impl Recorder {
    pub fn new(timings: bool) -> Self {
        Recorder { timings, checks: Vec::new(), artifacts: Vec::new() }
    }

    /// Runs `f`, which returns (status, expected, actual), and records the result.
    pub fn check<F, E>(&mut self, name: impl Into<String>, f: F) -> Result<(), E>
    where
        F: FnOnce() -> Result<(Status, Value, Value), E>,
    {
        let start = Instant::now();
        let (status, expected, actual) = f()?;
        let elapsed = start.elapsed().as_millis() as u64;
        self.checks.push(Check {
            name: name.into(),
            status,
            expected,
            actual,
            elapsed_ms: self.timings.then_some(elapsed),
        });
        Ok(())
    }

    pub fn artifact(&mut self, name: impl Into<String>, format: &str, content: String) {
        self.artifacts.push(Artifact { name: name.into(), format: format.into(), content });
    }

    pub fn finish(mut self, command: Vec<String>, seed: u64) -> RunReport {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.artifacts.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary { total: self.checks.len(), ..Summary::default() };
        for c in &self.checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Indeterminate => summary.indeterminate += 1,
            }
        }
        RunReport {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            checks: self.checks,
            summary,
            artifacts: self.artifacts,
        }
    }
}

impl RunReport {
    pub fn exit_code(&self) -> u8 {
        if self.summary.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn human(&self) -> String {
        let mut out = format!("gdual {} (seed {}): {}\n", self.version, self.seed, self.command.join(" "));
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Indeterminate => "INDT",
            };
            let time = c.elapsed_ms.map(|t| format!(" [{t} ms]")).unwrap_or_default();
            out.push_str(&format!("{tag} {}{time}\n     expected {}\n     actual   {}\n", c.name, c.expected, c.actual));
        }
        for a in &self.artifacts {
            out.push_str(&format!("--- {} ({})\n{}\n", a.name, a.format, a.content.trim_end()));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} indeterminate\n",
            s.total, s.pass, s.fail, s.indeterminate
        ));
        out
    }
}
