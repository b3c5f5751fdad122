//! Run reports: JSON emission, schema-checked loading and text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use g2real::reality::{RealityReport, Verdict};
use serde::{Deserialize, Serialize};

use crate::config::{Scenario, ScenarioConfig};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unknown => 3,
        }
    }
}

/// Outcome counts of one property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), passed: 0, failed: 0, note: None }
    }

    pub fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// The decision for one input matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementReport {
    pub label: String,
    /// The 3×3 input, row-major with rows separated by `;`.
    pub matrix: String,
    pub report: RealityReport,
}

/// Criterion verdict against the brute-force oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleAgreement {
    pub label: String,
    pub criterion: Verdict,
    /// `None` when the sweep was not run.
    pub oracle: Option<Verdict>,
    /// Span sizes walked for the cosets ε = 0 and ε = 1.
    pub candidates: [u64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OracleAgreement {
    /// `None` when the sweep was skipped or ran out of budget.
    pub fn agrees(&self) -> Option<bool> {
        self.oracle.filter(|o| *o != Verdict::Unknown).map(|o| o == self.criterion)
    }
}

/// Wall-clock data; the only part of a report that may differ between
/// runs with the same inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub total_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub scenario: String,
    pub inputs: ScenarioConfig,
    pub status: Status,
    pub checks: Vec<Check>,
    pub elements: Vec<ElementReport>,
    pub oracle: Vec<OracleAgreement>,
    pub tallies: BTreeMap<String, u64>,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(inputs: ScenarioConfig) -> Self {
        RunReport {
            scenario: inputs.scenario.name().to_string(),
            inputs,
            status: Status::Pass,
            checks: Vec::new(),
            elements: Vec::new(),
            oracle: Vec::new(),
            tallies: BTreeMap::new(),
            timings: Timings::default(),
        }
    }

    /// Fail if any check failed or the oracle disagreed; otherwise unknown
    /// if any verdict is unknown.
    pub fn derived_status(&self) -> Status {
        let failed = self.checks.iter().any(|c| !c.ok()) || self.oracle.iter().any(|o| o.agrees() == Some(false));
        if failed {
            return Status::Fail;
        }
        let unknown = self.elements.iter().any(|e| e.report.verdict == Verdict::Unknown)
            || self.oracle.iter().any(|o| o.criterion == Verdict::Unknown || o.oracle == Some(Verdict::Unknown));
        if unknown {
            Status::Unknown
        } else {
            Status::Pass
        }
    }

    pub fn finish(mut self, total_ms: u64) -> Self {
        self.status = self.derived_status();
        self.timings.total_ms = total_ms;
        self
    }

    pub fn tally(&mut self, key: impl Into<String>) {
        *self.tallies.entry(key.into()).or_insert(0) += 1;
    }

    /// JSON without the timing field, for run-to-run comparison.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings = Timings::default();
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Parses a report, naming the JSON path of the first violation.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let report: RunReport = serde_path_to_error::deserialize(de).map_err(|e| CliError::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        if report.status != report.derived_status() {
            return Err(CliError::Schema {
                path: "status".into(),
                message: format!("status {:?} contradicts the checks", report.status),
            });
        }
        Ok(report)
    }

    /// Validates by round trip and writes through a temporary file.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = self.to_json();
        if Self::from_json(&text)? != *self {
            return Err(CliError::Schema { path: String::new(), message: "report does not round-trip".into() });
        }
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, text + "\n")?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let i = &self.inputs;
        let _ = writeln!(out, "scenario  {}", self.scenario);
        let mut inputs = match i.scenario {
            Scenario::Axioms => format!("field={} samples={}", i.field, i.samples),
            Scenario::Counterexample | Scenario::Norms => format!("q={}", i.q),
            Scenario::Cdk | Scenario::Companion => format!("q={} trials={}", i.q, i.trials),
        };
        let _ = write!(inputs, " seed={} budget={}", i.seed, i.budget);
        if let Some(k) = i.kind {
            let _ = write!(inputs, " kind={k}");
        }
        if i.exhaustive {
            inputs.push_str(" exhaustive");
        }
        let _ = writeln!(out, "inputs    {inputs}");
        let _ = writeln!(out, "status    {:?}", self.status);
        let _ = writeln!(out, "time      {} ms", self.timings.total_ms);
        if !self.checks.is_empty() {
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
            let _ = writeln!(out, "\n{:<width$}  {:>8}  {:>8}", "check", "passed", "failed");
            for c in &self.checks {
                let _ = write!(out, "{:<width$}  {:>8}  {:>8}", c.name, c.passed, c.failed);
                if let Some(n) = &c.note {
                    let _ = write!(out, "  {n}");
                }
                out.push('\n');
            }
        }
        if !self.oracle.is_empty() {
            let _ = writeln!(out, "\noracle");
            for o in &self.oracle {
                let oracle = o.oracle.map_or("skipped".to_string(), |v| format!("{v:?}"));
                let _ = write!(out, "  {}: criterion {:?}, oracle {oracle}, spans {:?}", o.label, o.criterion, o.candidates);
                if let Some(n) = &o.note {
                    let _ = write!(out, " ({n})");
                }
                out.push('\n');
            }
        }
        if !self.elements.is_empty() {
            let _ = writeln!(out, "\nelements  {}", self.elements.len());
            let mut verdicts: BTreeMap<String, u64> = BTreeMap::new();
            for e in &self.elements {
                *verdicts.entry(format!("{:?}", e.report.verdict)).or_insert(0) += 1;
            }
            for (v, n) in &verdicts {
                let _ = writeln!(out, "  {v}: {n}");
            }
            for e in self.elements.iter().filter(|e| e.report.verdict != Verdict::Real).take(5) {
                let _ = writeln!(out, "  {} [{}] {:?} chi = {}", e.label, e.matrix, e.report.verdict, e.report.char_poly);
                if let Some(ob) = &e.report.obstruction {
                    let _ = writeln!(
                        out,
                        "    obstruction: {} not in {} (index {})",
                        ob.value, ob.excluded_class, ob.class_group_order
                    );
                }
            }
        }
        if !self.tallies.is_empty() {
            let _ = writeln!(out, "\ntallies");
            for (k, n) in &self.tallies {
                let _ = writeln!(out, "  {k}: {n}");
            }
        }
        if self.status == Status::Unknown {
            let _ = writeln!(
                out,
                "\nnote: the search budget of {} candidates was exhausted before some verdicts were reached; rerun with a larger --budget",
                i.budget
            );
        }
        out
    }
}
