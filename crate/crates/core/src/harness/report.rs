use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ClaimId {
    #[serde(rename = "gir1")]
    Gir1,
    #[serde(rename = "evencyc")]
    EvenCyc,
    #[serde(rename = "prop1p1")]
    Prop1p1,
    #[serde(rename = "lemma9")]
    Lemma9,
    #[serde(rename = "join-identity")]
    JoinIdentity,
    #[serde(rename = "level")]
    Level,
    #[serde(rename = "lemma2p1")]
    Lemma2p1,
    #[serde(rename = "lemma2p2")]
    Lemma2p2,
    #[serde(rename = "th2p1")]
    Th2p1,
    #[serde(rename = "co2p1")]
    Co2p1,
    #[serde(rename = "ans3")]
    Ans3,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::Gir1,
        ClaimId::EvenCyc,
        ClaimId::Prop1p1,
        ClaimId::Lemma9,
        ClaimId::JoinIdentity,
        ClaimId::Level,
        ClaimId::Lemma2p1,
        ClaimId::Lemma2p2,
        ClaimId::Th2p1,
        ClaimId::Co2p1,
        ClaimId::Ans3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Gir1 => "gir1",
            ClaimId::EvenCyc => "evencyc",
            ClaimId::Prop1p1 => "prop1p1",
            ClaimId::Lemma9 => "lemma9",
            ClaimId::JoinIdentity => "join-identity",
            ClaimId::Level => "level",
            ClaimId::Lemma2p1 => "lemma2p1",
            ClaimId::Lemma2p2 => "lemma2p2",
            ClaimId::Th2p1 => "th2p1",
            ClaimId::Co2p1 => "co2p1",
            ClaimId::Ans3 => "ans3",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown claim {s:?}")))
    }
}

/// Ordered by severity, so the maximum over reports is the audit outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    HypothesisUnmet,
    Inconclusive,
    Violated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::HypothesisUnmet => "hypothesis-unmet",
            Status::Inconclusive => "inconclusive",
            Status::Violated => "violated",
        }
    }

    /// Process exit code for a run whose worst status is `self`.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified | Status::HypothesisUnmet => 0,
            Status::Violated => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One exact sub-check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: ClaimId,
    pub instance: String,
    #[serde(rename = "kRange")]
    pub k_range: Vec<i64>,
    pub status: Status,
    pub checks: Vec<Check>,
    pub payload: BTreeMap<String, Value>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Collects checks and payload; the status follows from what was recorded.
#[derive(Debug)]
pub struct ReportBuilder {
    claim: ClaimId,
    instance: String,
    k_range: Vec<i64>,
    checks: Vec<Check>,
    payload: BTreeMap<String, Value>,
    notes: Vec<String>,
    unmet: bool,
    inconclusive: bool,
}

impl ReportBuilder {
    pub fn new(claim: ClaimId, instance: impl Into<String>) -> Self {
        ReportBuilder {
            claim,
            instance: instance.into(),
            k_range: Vec::new(),
            checks: Vec::new(),
            payload: BTreeMap::new(),
            notes: Vec::new(),
            unmet: false,
            inconclusive: false,
        }
    }

    pub fn k(&mut self, k: i64) -> &mut Self {
        if !self.k_range.contains(&k) {
            self.k_range.push(k);
            self.k_range.sort_unstable();
        }
        self
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        k: Option<i64>,
        passed: bool,
        detail: impl Into<String>,
    ) -> bool {
        if let Some(k) = k {
            self.k(k);
        }
        self.checks.push(Check {
            name: name.into(),
            k,
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("payload serializes");
        self.payload.insert(key.into(), v);
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Records an unmet hypothesis; the report can no longer be verified.
    pub fn hypothesis_unmet(&mut self, why: impl Into<String>) -> &mut Self {
        self.unmet = true;
        self.note(format!("hypothesis not met: {}", why.into()))
    }

    /// Records budget exhaustion or an undecided bracket.
    pub fn inconclusive(&mut self, why: impl Into<String>) -> &mut Self {
        self.inconclusive = true;
        self.note(format!("inconclusive: {}", why.into()))
    }

    pub fn is_unmet(&self) -> bool {
        self.unmet
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.checks.iter().any(|c| !c.passed) {
            Status::Violated
        } else if self.inconclusive {
            Status::Inconclusive
        } else if self.unmet {
            Status::HypothesisUnmet
        } else {
            Status::Verified
        };
        VerificationReport {
            claim: self.claim,
            instance: self.instance,
            k_range: self.k_range,
            status,
            checks: self.checks,
            payload: self.payload,
            notes: self.notes,
        }
    }
}

/// The worst status; `Verified` for no reports.
pub fn overall_status(reports: &[VerificationReport]) -> Status {
    reports
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Verified)
}
