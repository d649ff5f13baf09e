//! Verification reports and their flat JSON records.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::trace::ProofTrace;
use crate::sheaf::DObject;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Ktheory,
    Sheaf,
}

impl Representation {
    pub const ALL: [Representation; 2] = [Representation::Ktheory, Representation::Sheaf];
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Ktheory => "ktheory",
            Representation::Sheaf => "sheaf",
        })
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ktheory" | "k" => Ok(Representation::Ktheory),
            "sheaf" => Ok(Representation::Sheaf),
            _ => Err(format!("unknown representation {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    VerifiedUpToCentral,
    VerifiedUpToInvolution,
    /// Inconclusive: the search ran out of budget.
    Exhausted,
    /// A genuine counterexample: both words used up, objects differ.
    Mismatch,
}

impl Status {
    pub fn is_verified(self) -> bool {
        matches!(
            self,
            Status::Verified | Status::VerifiedUpToCentral | Status::VerifiedUpToInvolution
        )
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::VerifiedUpToCentral => "verified-up-to-central",
            Status::VerifiedUpToInvolution => "verified-up-to-involution",
            Status::Exhausted => "exhausted",
            Status::Mismatch => "mismatch",
        })
    }
}

/// The outcome on one generating object (or, for K-theory, on the lattice).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectOutcome {
    pub generator_object: Option<DObject>,
    /// Name of the relator actually searched, when it was replaced by an
    /// equivalent one based at the object's point.
    pub searched_relator: Option<String>,
    pub status: Status,
    pub central_defect_m: Option<i64>,
    pub involution: Option<String>,
    pub final_objects: Option<(DObject, DObject)>,
    pub trace: ProofTrace,
    pub states_expanded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relator: String,
    pub n: usize,
    pub representation: Representation,
    pub outcomes: Vec<ObjectOutcome>,
}

impl VerificationReport {
    pub fn all_verified(&self) -> bool {
        self.outcomes.iter().all(|o| o.status.is_verified())
    }

    pub fn has_mismatch(&self) -> bool {
        self.outcomes.iter().any(|o| o.status == Status::Mismatch)
    }

    pub fn has_exhaustion(&self) -> bool {
        self.outcomes.iter().any(|o| o.status == Status::Exhausted)
    }

    pub fn records(&self) -> Vec<ReportRecord> {
        self.outcomes
            .iter()
            .map(|o| ReportRecord {
                relator: self.relator.clone(),
                n: self.n,
                representation: self.representation,
                generator_object: o.generator_object.clone(),
                status: o.status,
                central_defect_m: o.central_defect_m,
                involution: o.involution.clone(),
                trace: o.trace.clone(),
                states_expanded: o.states_expanded,
            })
            .collect()
    }
}

/// One line of the external report format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub relator: String,
    pub n: usize,
    pub representation: Representation,
    pub generator_object: Option<DObject>,
    pub status: Status,
    pub central_defect_m: Option<i64>,
    pub involution: Option<String>,
    pub trace: ProofTrace,
    pub states_expanded: usize,
}

/// How a whole suite went, for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteVerdict {
    Verified,
    Mismatch,
    Exhausted,
}

pub fn suite_verdict(reports: &[VerificationReport]) -> SuiteVerdict {
    if reports.iter().any(VerificationReport::has_mismatch) {
        SuiteVerdict::Mismatch
    } else if reports.iter().any(VerificationReport::has_exhaustion) {
        SuiteVerdict::Exhausted
    } else {
        SuiteVerdict::Verified
    }
}
