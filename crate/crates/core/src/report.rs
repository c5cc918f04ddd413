use std::fmt;

use serde::{Deserialize, Serialize};

/// Why a single assignment failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    /// Both sides evaluated, to different elements.
    Mismatch { lhs: usize, rhs: usize },
    /// The two-sided inverse `'` was applied where `x^λ != x^ρ`.
    InverseUndefined { element: usize },
    /// Free-form failure from a procedural check.
    Note { message: String },
}

/// A failing assignment of variables to elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub failure: Failure,
    /// Label of the failing identity when a check bundles several.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<String>,
}

impl Counterexample {
    pub fn new(assignment: Vec<(String, usize)>, failure: Failure) -> Self {
        Counterexample { assignment, failure, source: None }
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn value_of(&self, var: &str) -> Option<usize> {
        self.assignment.iter().find(|(v, _)| v == var).map(|&(_, x)| x)
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(src) = &self.source {
            write!(f, "[{src}] ")?;
        }
        let parts: Vec<String> = self.assignment.iter().map(|(v, x)| format!("{v}={x}")).collect();
        write!(f, "{}", parts.join(", "))?;
        match &self.failure {
            Failure::Mismatch { lhs, rhs } => write!(f, " (lhs={lhs}, rhs={rhs})"),
            Failure::InverseUndefined { element } => {
                write!(f, " (inverse-undefined at {element})")
            }
            Failure::Note { message } => write!(f, " ({message})"),
        }
    }
}

/// Outcome of checking an identity or property on one table.
///
/// When `skipped` is `None`, `holds` is true exactly when `counterexample`
/// is absent. A skipped check (failed precondition) has `holds == false`
/// and no counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub checked_assignments: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
}

impl CheckReport {
    pub fn pass(checked_assignments: u64) -> Self {
        CheckReport { holds: true, counterexample: None, checked_assignments, skipped: None }
    }

    pub fn fail(cx: Counterexample, checked_assignments: u64) -> Self {
        CheckReport { holds: false, counterexample: Some(cx), checked_assignments, skipped: None }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        CheckReport {
            holds: false,
            counterexample: None,
            checked_assignments: 0,
            skipped: Some(reason.into()),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(reason) = &self.skipped {
            return write!(f, "skipped: {reason}");
        }
        match &self.counterexample {
            None => write!(f, "holds ({} assignments)", self.checked_assignments),
            Some(cx) => write!(f, "fails: {cx}"),
        }
    }
}
