use serde::{Deserialize, Serialize};

/// The offending datum attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// An integer value (a sum, an entry, a set element).
    Value(i64),
    /// A 1-based multiindex or matrix position.
    Index(Vec<usize>),
    /// A 1-based position in a sequence (JOF step, component part).
    Position(usize),
}

/// Outcome of a verifier. `passed` holds exactly when no invariant is named.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violated_invariant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Reading of an ambiguous clause that was applied, e.g. toroidal 2x2 blocks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl VerificationReport {
    pub fn pass() -> Self {
        VerificationReport {
            passed: true,
            violated_invariant: None,
            witness: None,
            detail: None,
            convention: None,
        }
    }

    pub fn fail(invariant: impl Into<String>) -> Self {
        VerificationReport {
            passed: false,
            violated_invariant: Some(invariant.into()),
            witness: None,
            detail: None,
            convention: None,
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_convention(mut self, convention: impl Into<String>) -> Self {
        self.convention = Some(convention.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.passed
    }

    /// Name of the violated invariant, if any.
    pub fn invariant(&self) -> Option<&str> {
        self.violated_invariant.as_deref()
    }

    /// Converts a failed report into an error so `?` can short-circuit on
    /// precondition checks.
    pub fn into_result(self) -> crate::Result<()> {
        if self.passed {
            Ok(())
        } else {
            Err(self.into())
        }
    }
}
