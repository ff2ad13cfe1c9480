//! JSON experiment reports with a content hash that ignores the `meta` block.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::field::FieldSpec;
use crate::gen::CertificateRecord;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Meta {
    pub timestamp: u64,
    pub host: String,
    pub version: String,
}

impl Meta {
    pub fn now() -> Meta {
        Meta {
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            host: std::env::var("HOSTNAME").unwrap_or_default(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub algebra: String,
    pub field: Option<FieldSpec>,
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub certificates: Vec<CertificateRecord>,
    pub histograms: BTreeMap<String, BTreeMap<String, u64>>,
    pub assertions: Vec<Assertion>,
    /// Experiment-specific records.
    pub data: BTreeMap<String, Value>,
    pub meta: Meta,
}

#[derive(Serialize)]
struct Hashed<'a> {
    schema_version: u32,
    algebra: &'a str,
    field: &'a Option<FieldSpec>,
    experiment: &'a str,
    parameters: &'a BTreeMap<String, Value>,
    certificates: &'a [CertificateRecord],
    histograms: &'a BTreeMap<String, BTreeMap<String, u64>>,
    assertions: &'a [Assertion],
    data: &'a BTreeMap<String, Value>,
}

impl Report {
    pub fn new(algebra: impl Into<String>, field: Option<FieldSpec>, experiment: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            algebra: algebra.into(),
            field,
            experiment: experiment.into(),
            parameters: BTreeMap::new(),
            certificates: vec![],
            histograms: BTreeMap::new(),
            assertions: vec![],
            data: BTreeMap::new(),
            meta: Meta::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn datum(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn assert(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
    }

    pub fn histogram<K: ToString>(&mut self, name: &str, counts: impl IntoIterator<Item = (K, u64)>) {
        let h = self.histograms.entry(name.to_string()).or_default();
        for (k, c) in counts {
            *h.entry(k.to_string()).or_default() += c;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.pass).collect()
    }

    /// SHA-256 over the canonical JSON of everything except `meta`.
    pub fn hash(&self) -> String {
        let body = Hashed {
            schema_version: self.schema_version,
            algebra: &self.algebra,
            field: &self.field,
            experiment: &self.experiment,
            parameters: &self.parameters,
            certificates: &self.certificates,
            histograms: &self.histograms,
            assertions: &self.assertions,
            data: &self.data,
        };
        let bytes = serde_json::to_vec(&body).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }

    /// Pretty JSON with the hash inserted next to `meta`.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").insert("hash".into(), Value::String(self.hash()));
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}
