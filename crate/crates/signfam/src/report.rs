//! Verification reports and their JSON / CSV forms.

use std::io::Write;

use serde::{Deserialize, Serialize};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperFormula,
    Oracle,
    Construction,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::PaperFormula => "paper-formula",
            Provenance::Oracle => "oracle",
            Provenance::Construction => "construction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    /// `expected == actual`.
    pub pass: bool,
    /// Informational cases never fail a suite.
    pub required: bool,
    pub provenance: Provenance,
}

impl Case {
    pub fn new(
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        provenance: Provenance,
    ) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            id: id.into(),
            inputs: inputs.into(),
            pass: expected == actual,
            expected,
            actual,
            required: true,
            provenance,
        }
    }

    /// A predicate case: expected `true`, actual is the predicate's value.
    pub fn holds(id: impl Into<String>, inputs: impl Into<String>, value: bool, provenance: Provenance) -> Self {
        Self::new(id, inputs, true, value, provenance)
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub required_failed: usize,
    pub informational: usize,
    /// Solver runs that hit their budget.
    pub incomplete: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, case: Case) {
        self.summary.total += 1;
        if case.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
            if case.required {
                self.summary.required_failed += 1;
            }
        }
        if !case.required {
            self.summary.informational += 1;
        }
        self.cases.push(case);
    }

    pub fn mark_incomplete(&mut self) {
        self.summary.incomplete += 1;
    }

    pub fn all_required_pass(&self) -> bool {
        self.summary.required_failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.required && !c.pass)
    }

    /// Appends another report's cases, prefixing their ids with its suite.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.cases {
            c.id = format!("{}/{}", other.suite, c.id);
            self.push(c);
        }
        self.summary.incomplete += other.summary.incomplete;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn emit_json<W: Write>(reports: &[VerificationReport], out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(out, reports)?;
    Ok(())
}

/// Columns: suite, case, expected, actual, pass, provenance.
pub fn emit_csv<W: Write>(reports: &[VerificationReport], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["suite", "case", "expected", "actual", "pass", "provenance"])?;
    for r in reports {
        for c in &r.cases {
            let pass = if c.pass { "true" } else { "false" };
            w.write_record([
                r.suite.as_str(),
                &c.id,
                &c.expected,
                &c.actual,
                pass,
                c.provenance.as_str(),
            ])?;
        }
    }
    w.flush()
}

pub fn emit<W: Write>(reports: &[VerificationReport], format: Format, out: W) -> std::io::Result<()> {
    match format {
        Format::Json => emit_json(reports, out),
        Format::Csv => emit_csv(reports, out),
    }
}
