//! Machine-readable verification reports.
//!
//! Serialization is deterministic: struct field order is fixed and check
//! lists are assembled in a stable order, so two runs with identical flags
//! produce byte-identical JSON.

use serde::Serialize;

use crate::model::ModelConfig;
use crate::poly::Poly;

/// Outcome of one check. `ReportedDiscrepancy` is reserved for comparisons
/// against quoted closed forms that the independent derivation overrules;
/// such entries never fail a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "reported-discrepancy")]
    ReportedDiscrepancy,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckEntry {
    pub fn pass(
        id: impl Into<String>,
        description: impl Into<String>,
        reference: impl Into<String>,
    ) -> Self {
        CheckEntry {
            id: id.into(),
            description: description.into(),
            paper_ref: reference.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(
        id: impl Into<String>,
        description: impl Into<String>,
        reference: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckEntry {
            id: id.into(),
            description: description.into(),
            paper_ref: reference.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Pass/fail from an exact residual; the residual is the witness on failure.
    pub fn from_residual(
        id: impl Into<String>,
        description: impl Into<String>,
        reference: impl Into<String>,
        residual: &Poly,
    ) -> Self {
        if residual.is_zero() {
            CheckEntry::pass(id, description, reference)
        } else {
            CheckEntry::fail(id, description, reference, residual.to_string())
        }
    }

    pub fn discrepancy(
        id: impl Into<String>,
        description: impl Into<String>,
        reference: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        CheckEntry {
            id: id.into(),
            description: description.into(),
            paper_ref: reference.into(),
            status: CheckStatus::ReportedDiscrepancy,
            witness: Some(witness.into()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelDesc {
    #[serde(rename = "N")]
    pub n: u32,
    pub dim: u8,
    pub branch: String,
    pub m: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub discrepancies: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub model: ModelDesc,
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(cfg: &ModelConfig, checks: Vec<CheckEntry>) -> Self {
        let summary = Summary {
            passed: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            failed: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .count(),
            discrepancies: checks
                .iter()
                .filter(|c| c.status == CheckStatus::ReportedDiscrepancy)
                .count(),
        };
        Report {
            model: ModelDesc {
                n: cfg.n(),
                dim: cfg.dim(),
                branch: cfg.branch().as_str().to_string(),
                m: cfg.mass_string(),
            },
            checks,
            summary,
        }
    }

    /// A suite succeeds iff nothing failed; discrepancy notes are expected.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
