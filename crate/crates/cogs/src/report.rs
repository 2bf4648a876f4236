//! Violation records and deterministic command reports.
//!
//! Validators in this crate never throw on a broken mathematical identity;
//! they collect one [`Violation`] per offending witness so the whole failure
//! surface is visible at once. The CLI wraps results in a [`Report`] whose
//! JSON form is key-sorted and, apart from the timing field, byte-identical
//! across runs on identical inputs.

use crate::error::Result;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// One violated identity together with the minimal witness exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// The rule that failed, e.g. `"psi not injective"`.
    pub rule: String,
    /// The offending arrow / pair / triple / cell, in display form.
    pub witness: String,
}

impl Violation {
    pub fn new(rule: impl Into<String>, witness: impl Into<String>) -> Violation {
        Violation {
            rule: rule.into(),
            witness: witness.into(),
        }
    }
}

/// Overall outcome of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Machine-readable result of one CLI command.
///
/// `summary` holds computed artifacts (counts, homology, witnesses) keyed by
/// name; a [`BTreeMap`] keeps the keys sorted. Two runs on the same inputs
/// differ at most in `timing_ms`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub summary: BTreeMap<String, serde_json::Value>,
    pub timing_ms: u64,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
}

impl Report {
    /// A fresh passing report; violations added later flip the verdict.
    pub fn new(command: impl Into<String>, inputs_digest: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            inputs_digest: inputs_digest.into(),
            summary: BTreeMap::new(),
            timing_ms: 0,
            verdict: Verdict::Pass,
            violations: Vec::new(),
        }
    }

    /// Records violations and sets the verdict accordingly.
    pub fn add_violations(&mut self, violations: Vec<Violation>) {
        self.violations.extend(violations);
        if !self.violations.is_empty() {
            self.verdict = Verdict::Fail;
        }
    }

    /// Forces a failing verdict (for failures that have no violation list,
    /// e.g. a mismatched oracle comparison).
    pub fn fail(&mut self) {
        self.verdict = Verdict::Fail;
    }

    /// Adds one summary entry; panics only if the value cannot be
    /// represented in JSON, which the types used here always can.
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("summary values are JSON-representable");
        self.summary.insert(key.to_string(), value);
    }

    /// Pretty JSON with keys sorted at every level.
    ///
    /// Serialization goes through [`serde_json::Value`], whose object type is
    /// an ordered map, so nested keys are sorted as well.
    pub fn to_json_string(&self) -> Result<String> {
        let value = serde_json::to_value(self)?;
        Ok(serde_json::to_string_pretty(&value)?)
    }
}

/// Hex SHA-256 of raw input bytes, used as a report's `inputs_digest`.
pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_matches_published_sha256_vector() {
        // FIPS 180-2 test vector for "abc".
        assert_eq!(
            digest_bytes(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        assert_eq!(
            digest_bytes(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn report_serialization_is_key_sorted() {
        let mut r = Report::new("validate", digest_bytes(b"input"));
        r.put("objects", 7usize);
        r.put("arrows", 12usize);
        let json = r.to_json_string().unwrap();
        let keys: Vec<usize> = [
            "\"command\"",
            "\"inputs_digest\"",
            "\"summary\"",
            "\"timing_ms\"",
            "\"verdict\"",
            "\"violations\"",
        ]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted, "top-level keys appear in sorted order");
        // Summary keys sorted too: "arrows" before "objects".
        assert!(json.find("\"arrows\"").unwrap() < json.find("\"objects\"").unwrap());
    }

    #[test]
    fn identical_inputs_identical_bytes_modulo_timing() {
        let build = |timing: u64| {
            let mut r = Report::new("homology", digest_bytes(b"same"));
            r.put("betti", vec![1usize, 2usize]);
            r.add_violations(vec![Violation::new("cocycle condition", "triple (c, b, a)")]);
            r.timing_ms = timing;
            r.to_json_string().unwrap()
        };
        let strip = |s: &str| -> String {
            s.lines()
                .filter(|l| !l.contains("\"timing_ms\""))
                .collect::<Vec<_>>()
                .join("\n")
        };
        let a = build(3);
        let b = build(99);
        assert_ne!(a, b);
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn violations_flip_the_verdict() {
        let mut r = Report::new("validate", "");
        assert_eq!(r.verdict, Verdict::Pass);
        r.add_violations(Vec::new());
        assert_eq!(r.verdict, Verdict::Pass);
        r.add_violations(vec![Violation::new("psi not injective", "arrow u<u,w")]);
        assert_eq!(r.verdict, Verdict::Fail);
        let json = r.to_json_string().unwrap();
        assert!(json.contains("\"verdict\": \"fail\""));
    }
}
