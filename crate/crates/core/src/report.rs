//! Machine-readable verdicts.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Supporting data. Orders are decimal strings so that arbitrarily large
/// orders survive any JSON reader.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    #[serde(default)]
    pub orders: BTreeMap<String, String>,
    #[serde(default)]
    pub class_counts: BTreeMap<String, u64>,
    #[serde(default)]
    pub factor_ids: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Evidence {
    pub fn order(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.orders.insert(key.into(), value.to_string());
        self
    }

    pub fn count(&mut self, key: impl Into<String>, value: u64) -> &mut Self {
        self.class_counts.insert(key.into(), value);
        self
    }

    pub fn ids<I, T>(&mut self, key: impl Into<String>, ids: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: fmt::Display,
    {
        self.factor_ids
            .insert(key.into(), ids.into_iter().map(|x| x.to_string()).collect());
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub subject: String,
    pub check: String,
    pub status: Status,
    pub evidence: Evidence,
    /// False when any enumeration behind the verdict was not exhaustive.
    pub completeness: bool,
    pub version: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sub_checks: Vec<VerdictReport>,
}

impl VerdictReport {
    /// A pass from an incomplete enumeration is downgraded to inconclusive.
    pub fn new(
        subject: impl Into<String>,
        check: impl Into<String>,
        status: Status,
        evidence: Evidence,
        completeness: bool,
    ) -> Self {
        let status = if status == Status::Pass && !completeness {
            Status::Inconclusive
        } else {
            status
        };
        VerdictReport {
            subject: subject.into(),
            check: check.into(),
            status,
            evidence,
            completeness,
            version: VERSION.to_string(),
            sub_checks: Vec::new(),
        }
    }

    pub fn with_sub_checks(mut self, subs: Vec<VerdictReport>) -> Self {
        self.sub_checks = subs;
        self
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Pass only if every part passes; any fail wins over inconclusive.
pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Inconclusive => out = Status::Inconclusive,
            Status::Pass => {}
        }
    }
    out
}
