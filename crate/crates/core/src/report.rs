//! Check results shared by all verification suites.

use std::fmt;

use crate::tensor::MultiMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported without being asserted.
    Info,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn pass(id: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckEntry {
            id: id.into(),
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(id: impl Into<String>, detail: impl Into<String>, witness: Option<String>) -> Self {
        CheckEntry {
            id: id.into(),
            status: Status::Fail,
            detail: detail.into(),
            witness,
        }
    }

    pub fn info(id: impl Into<String>, detail: impl Into<String>, witness: Option<String>) -> Self {
        CheckEntry {
            id: id.into(),
            status: Status::Info,
            detail: detail.into(),
            witness,
        }
    }

    /// Passes iff `residual` is the zero map; otherwise carries its smallest witness.
    pub fn vanishing(id: impl Into<String>, residual: &MultiMap) -> Self {
        match witness_of(residual) {
            None => CheckEntry::pass(id, "vanishes identically"),
            Some(w) => CheckEntry::fail(id, "does not vanish", Some(w)),
        }
    }

    /// Downgrades a failure to an unasserted observation.
    pub fn as_info(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Info;
        }
        self
    }
}

/// Renders the smallest nonvanishing input of a map as `input ↦ value`.
pub fn witness_of(m: &MultiMap) -> Option<String> {
    let (w, v) = m.witness()?;
    let c = m.carrier();
    let input: Vec<String> = w.iter().map(|b| c.render_basis(b)).collect();
    Some(format!("{} ↦ {}", input.join("⊗"), v.render(c)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&format!("== {} ==\n", self.title));
        }
        for e in &self.entries {
            out.push_str(&format!("[{}] {}: {}\n", e.status, e.id, e.detail));
            if let Some(w) = &e.witness {
                out.push_str(&format!("       witness: {w}\n"));
            }
        }
        out
    }
}
