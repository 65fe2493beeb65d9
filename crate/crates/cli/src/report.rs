//! Deterministic check reports. Every float is printed as `{:.16e}`
//! (17 significant digits) in both the text and the JSON form.

use std::fmt::Write as _;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;
use sha2::{Digest, Sha256};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw(x: f64) -> Box<RawValue> {
    if x.is_finite() {
        RawValue::from_string(fmt_f64(x)).expect("exponent notation is valid JSON")
    } else {
        // JSON has no NaN/inf; keep the value readable and the document valid.
        RawValue::from_string(format!("\"{x}\"")).expect("quoted string is valid JSON")
    }
}

fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

fn ser_named<S: Serializer>(items: &[(String, f64)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(items.len()))?;
    for (k, v) in items {
        map.serialize_entry(k, &raw(*v))?;
    }
    map.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one named check. `residuals` decide the verdict; `diagnostics`
/// are reported alongside but do not.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub inputs_digest: String,
    #[serde(serialize_with = "ser_named")]
    pub residuals: Vec<(String, f64)>,
    #[serde(serialize_with = "ser_named", skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<(String, f64)>,
    pub verdict: Verdict,
    pub seed: u64,
    #[serde(serialize_with = "ser_f64")]
    pub tolerance: f64,
}

impl CheckReport {
    pub fn new(
        check_name: &str,
        inputs_digest: String,
        residuals: Vec<(String, f64)>,
        diagnostics: Vec<(String, f64)>,
        seed: u64,
        tolerance: f64,
    ) -> Self {
        // NaN never passes
        let pass = residuals.iter().all(|(_, r)| *r <= tolerance);
        Self {
            check_name: check_name.to_string(),
            inputs_digest,
            residuals,
            diagnostics,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            seed,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# check {}", self.check_name);
        let _ = writeln!(out, "# inputs_digest {}", self.inputs_digest);
        let _ = writeln!(out, "# seed {}", self.seed);
        let _ = writeln!(out, "# tolerance {}", fmt_f64(self.tolerance));
        for (name, value) in &self.diagnostics {
            let _ = writeln!(out, "# {name} {}", fmt_f64(*value));
        }
        for (name, value) in &self.residuals {
            let _ = writeln!(out, "{name} {}", fmt_f64(*value));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// SHA-256 over length-prefixed parts, hex encoded.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CheckReport {
        CheckReport::new("ybe", "ab".into(), vec![("qybe".into(), 1e-17), ("braid".into(), 0.0)], vec![], 0, 1e-9)
    }

    #[test]
    fn verdict_rule() {
        assert!(sample().passed());
        let r = CheckReport::new("x", String::new(), vec![("a".into(), 2e-9)], vec![], 0, 1e-9);
        assert!(!r.passed());
        let r = CheckReport::new("x", String::new(), vec![("a".into(), f64::NAN)], vec![], 0, 1e-9);
        assert!(!r.passed());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn json_keeps_order_and_digits() {
        let json = sample().to_json();
        let q = json.find("\"qybe\"").unwrap();
        let b = json.find("\"braid\"").unwrap();
        assert!(q < b);
        assert!(json.contains("1.0000000000000001e-17") || json.contains("9.9999999999999998e-18"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["verdict"], "pass");
    }

    #[test]
    fn text_ends_with_verdict() {
        assert!(sample().to_text().ends_with("PASS\n"));
    }

    #[test]
    fn digest_is_framed() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]).len(), 64);
    }
}
