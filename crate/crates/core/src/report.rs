//! Structured pass/fail records. A failure always carries a witness; all
//! numeric values are exact integers serialized as decimal strings.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::group::{abelian_invariants, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Boundary,
    Empirical,
    SkippedCap,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub order: String,
    pub abelian_invariants: Vec<u64>,
    pub provenance: String,
}

impl GroupFingerprint {
    pub fn of(g: &Group) -> Self {
        GroupFingerprint {
            order: g.order().to_string(),
            abelian_invariants: abelian_invariants(g),
            provenance: g.provenance().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupFingerprint>,
    pub status: Status,
    pub witnesses: Vec<Vec<usize>>,
    pub values: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(check: &str, subject: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            subject: subject.to_string(),
            group: None,
            status: Status::Pass,
            witnesses: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn for_group(check: &str, g: &Group) -> Self {
        let mut r = Self::new(check, g.provenance());
        r.group = Some(GroupFingerprint::of(g));
        r
    }

    pub fn put<T: ToString>(&mut self, key: &str, value: T) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn put_big(&mut self, key: &str, value: &BigInt) {
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn witness(&mut self, s: &ElemSet) {
        self.witnesses.push(s.iter().collect());
    }

    pub fn fail_with(&mut self, witness: &ElemSet) {
        self.status = Status::Fail;
        self.witness(witness);
    }

    pub fn is_pass(&self) -> bool {
        matches!(
            self.status,
            Status::Pass | Status::Boundary | Status::Empirical
        )
    }
}
