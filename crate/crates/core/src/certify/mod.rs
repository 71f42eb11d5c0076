//! Pipelines that chain the library computations into JSON certificates.
//!
//! A certificate lists every check that was run, the computed quantities,
//! and the theorems used without recomputation. The conclusion is re-derived
//! from the serialized document by [`audit`], so a certificate can be
//! checked without rerunning the pipeline.

pub mod goodred;
pub mod indec;
pub mod input;
pub mod noncyclic;
pub mod setup;
pub mod ssverify;
pub mod tate;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::brauer::RESIDUE_CONVENTION;
use crate::error::Error;

pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pipeline {
    Noncyclic,
    Goodred,
    Indec,
    Tate,
    SsVerify,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] = [Pipeline::Noncyclic, Pipeline::Goodred, Pipeline::Indec, Pipeline::Tate, Pipeline::SsVerify];

    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::Noncyclic => "noncyclic",
            Pipeline::Goodred => "goodred",
            Pipeline::Indec => "indec",
            Pipeline::Tate => "tate",
            Pipeline::SsVerify => "ss-verify",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Recorded checks do not gate the conclusion.
    pub required: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Citation {
    pub id: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub code: String,
    pub check: String,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub pipeline: Pipeline,
    pub input_fingerprint: String,
    pub checks: Vec<Check>,
    pub computed: BTreeMap<String, Value>,
    pub citations: Vec<Citation>,
    pub conclusion: Option<String>,
    pub failure: Option<Failure>,
}

/// Why a pipeline stopped early.
#[derive(Debug)]
pub enum Halt {
    /// A hypothesis of the construction does not hold for this input.
    Violation { code: &'static str, check: String, detail: Value },
    Internal(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        match hypothesis_code(&e) {
            Some(code) => Halt::Violation { code, check: "input".into(), detail: json!(e.to_string()) },
            None => Halt::Internal(e),
        }
    }
}

pub type Step<T> = std::result::Result<T, Halt>;

/// Error kinds that mean "the input is outside the construction", not a bug.
pub fn hypothesis_code(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::TameOnly { .. } => "TAME_ONLY",
        Error::Unsupported(_) => "UNSUPPORTED",
        Error::SearchExhausted(_) => "SEARCH_EXHAUSTED",
        Error::NoRootsOfUnity { .. } => "NO_PRIMITIVE_ROOT",
        Error::InvalidPrime(_) | Error::InvalidInput(_) | Error::NotOnCurve => "INVALID_INPUT",
        Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
        _ => return None,
    })
}

impl Certificate {
    pub fn new(pipeline: Pipeline, input: &impl Serialize) -> Self {
        let v = serde_json::to_value(input).expect("inputs serialize");
        Self {
            pipeline,
            input_fingerprint: sha256_hex(&canonical_string(&v)),
            checks: Vec::new(),
            computed: BTreeMap::new(),
            citations: Vec::new(),
            conclusion: None,
            failure: None,
        }
    }

    /// Record a check that must pass for the conclusion to be drawn.
    pub fn check(&mut self, name: &str, passed: bool, witness: Value) -> bool {
        self.checks.push(Check { name: name.into(), passed, required: true, witness });
        passed
    }

    /// Record a check that is reported but does not gate the conclusion.
    pub fn record(&mut self, name: &str, passed: bool, witness: Value) {
        self.checks.push(Check { name: name.into(), passed, required: false, witness });
    }

    /// A required check whose failure stops the pipeline with `code`.
    pub fn require(&mut self, name: &str, passed: bool, witness: Value, code: &'static str) -> Step<()> {
        if self.check(name, passed, witness.clone()) {
            Ok(())
        } else {
            Err(Halt::Violation { code, check: name.into(), detail: witness })
        }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.computed.insert(key.into(), v);
    }

    pub fn cite(&mut self, id: &str, statement: &str) {
        self.citations.push(Citation { id: id.into(), statement: statement.into() });
    }

    pub fn required_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let failure = self.failure.as_ref().map(|f| json!({ "code": f.code, "check": f.check, "detail": f.detail }));
        json!({
            "pipeline": self.pipeline.name(),
            "input_fingerprint": self.input_fingerprint,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": if c.passed { "PASS" } else { "FAIL" },
                "required": c.required,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "computed": self.computed,
            "theorem_citations": self.citations.iter().map(|c| json!({ "id": c.id, "statement": c.statement })).collect::<Vec<_>>(),
            "residue_convention": RESIDUE_CONVENTION,
            "conclusion": self.conclusion,
            "failure": failure,
        })
    }

    pub fn canonical(&self) -> String {
        canonical_string(&self.to_json())
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.conclusion, &self.failure) {
            (Some(_), _) => 0,
            (None, Some(f)) if f.code == "INTERNAL_ERROR" => 2,
            _ => 1,
        }
    }
}

/// Compact JSON with sorted object keys. Integers that may exceed 64 bits
/// are stored as decimal strings by the producers.
pub fn canonical_string(v: &Value) -> String {
    // serde_json's map is ordered by key unless `preserve_order` is enabled,
    // which this crate does not do.
    serde_json::to_string(v).expect("values serialize")
}

pub fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub budget: u128,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, seed: 0 }
    }
}

/// Finish a certificate after its pipeline body returned.
pub fn finalize(mut cert: Certificate, outcome: Step<()>) -> Certificate {
    match outcome {
        Ok(()) => {
            if cert.required_passed() {
                cert.conclusion = derive_conclusion(&cert.to_json());
            }
            if cert.conclusion.is_none() {
                let failed = cert.checks.iter().find(|c| c.required && !c.passed).map(|c| c.name.clone()).unwrap_or_default();
                cert.failure = Some(Failure { code: "CHECK_FAILED".into(), check: failed, detail: Value::Null });
            }
        }
        Err(Halt::Violation { code, check, detail }) => {
            cert.failure = Some(Failure { code: code.into(), check, detail });
        }
        Err(Halt::Internal(e)) => {
            log::error!("internal error: {e}");
            cert.failure = Some(Failure { code: "INTERNAL_ERROR".into(), check: String::new(), detail: json!(e.to_string()) });
        }
    }
    cert
}

/// Parse the TOML input for `pipeline` and run it.
pub fn run(pipeline: Pipeline, input_toml: &str, opts: &RunOptions) -> std::result::Result<Certificate, Error> {
    Ok(match pipeline {
        Pipeline::Noncyclic => noncyclic::certify(&input::parse(input_toml)?, opts),
        Pipeline::Goodred => goodred::certify(&input::parse(input_toml)?, opts),
        Pipeline::Indec => indec::certify(&input::parse(input_toml)?, opts),
        Pipeline::Tate => tate::certify(&input::parse(input_toml)?, opts),
        Pipeline::SsVerify => ssverify::certify(&input::parse(input_toml)?, opts),
    })
}

fn get_u128(v: &Value, key: &str) -> Option<u128> {
    match &v["computed"][key] {
        Value::String(s) => s.parse().ok(),
        Value::Number(n) => n.as_u64().map(u128::from),
        _ => None,
    }
}

fn check_passed(v: &Value, name: &str) -> bool {
    v["checks"].as_array().is_some_and(|cs| cs.iter().any(|c| c["name"] == name && c["status"] == "PASS"))
}

fn required_all_pass(v: &Value) -> bool {
    v["checks"].as_array().is_some_and(|cs| cs.iter().filter(|c| c["required"] == true).all(|c| c["status"] == "PASS"))
}

fn cited(v: &Value, id: &str) -> bool {
    v["theorem_citations"].as_array().is_some_and(|cs| cs.iter().any(|c| c["id"] == id))
}

/// The conclusion implied by a certificate's checks, computed quantities and
/// citations, or `None` if they do not support one.
pub fn derive_conclusion(v: &Value) -> Option<String> {
    if !required_all_pass(v) || v["failure"].is_object() {
        return None;
    }
    let pipeline = Pipeline::parse(v["pipeline"].as_str()?)?;
    match pipeline {
        Pipeline::Noncyclic => noncyclic::conclude(v),
        Pipeline::Goodred => goodred::conclude(v),
        Pipeline::Indec => indec::conclude(v),
        Pipeline::Tate => tate::conclude(v),
        Pipeline::SsVerify => ssverify::conclude(v),
    }
}

/// Re-derive the conclusion of a serialized certificate and compare it with
/// the stated one.
pub fn audit(v: &Value) -> std::result::Result<(), String> {
    let stated = v["conclusion"].as_str().map(str::to_string);
    let derived = derive_conclusion(v);
    if stated != derived {
        return Err(format!("stated conclusion {stated:?} but the checks support {derived:?}"));
    }
    if stated.is_some() && v["failure"].is_object() {
        return Err("certificate has both a conclusion and a failure".into());
    }
    if v["residue_convention"] != RESIDUE_CONVENTION {
        return Err("residue convention stamp is missing or different".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_sorts_keys() {
        let v = json!({ "b": 1, "a": { "d": [1, 2], "c": "x" } });
        assert_eq!(canonical_string(&v), r#"{"a":{"c":"x","d":[1,2]},"b":1}"#);
        assert_eq!(sha256_hex("").len(), 64);
    }

    #[test]
    fn exit_codes_follow_outcome() {
        let base = Certificate::new(Pipeline::Tate, &json!({}));
        let ok = finalize(base.clone(), Err(Halt::Violation { code: "TAME_ONLY", check: "x".into(), detail: Value::Null }));
        assert_eq!(ok.exit_code(), 1);
        let bad = finalize(base.clone(), Err(Halt::Internal(Error::Undefined)));
        assert_eq!(bad.exit_code(), 2);
        assert!(audit(&bad.to_json()).is_ok());
        assert_eq!(hypothesis_code(&Error::SearchExhausted(3)), Some("SEARCH_EXHAUSTED"));
        assert_eq!(hypothesis_code(&Error::NotPrincipal), None);
    }
}
