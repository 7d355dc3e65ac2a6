//! Report assembly, content digests and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use hechain::json::ElementJson;
use hechain::rmatrep::RepMatrix;
use hechain::scalar::Scalar;
use hechain::{AffineElement, BlobElement, HeckeElement};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::Format;

pub fn digest(value: &Value) -> String {
    let bytes = serde_json::to_vec(value).expect("json values serialize");
    Sha256::digest(&bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Something that can be compared exactly and summarized in a report.
pub trait Witness: PartialEq {
    fn to_value(&self) -> Value;
    /// `0` when equal, otherwise the first offending term of `self - other`.
    fn residual(&self, other: &Self) -> Value;
}

fn first_term(diff: ElementJson) -> Value {
    if diff.is_empty() {
        return json!(0);
    }
    let v = serde_json::to_value(diff).expect("element json");
    v["terms"][0].clone()
}

impl Witness for HeckeElement {
    fn to_value(&self) -> Value {
        serde_json::to_value(ElementJson::from(self)).expect("element json")
    }

    fn residual(&self, other: &Self) -> Value {
        first_term(ElementJson::from(&(self - other)))
    }
}

impl Witness for AffineElement {
    fn to_value(&self) -> Value {
        serde_json::to_value(ElementJson::from(self)).expect("element json")
    }

    fn residual(&self, other: &Self) -> Value {
        first_term(ElementJson::from(&(self - other)))
    }
}

impl Witness for BlobElement {
    fn to_value(&self) -> Value {
        serde_json::to_value(ElementJson::from(self)).expect("element json")
    }

    fn residual(&self, other: &Self) -> Value {
        first_term(ElementJson::from(&(self - other)))
    }
}

impl Witness for RepMatrix {
    fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("matrix json")
    }

    fn residual(&self, other: &Self) -> Value {
        let Ok(diff) = self.try_sub(other) else {
            return json!({"dimension": [self.dim(), other.dim()]});
        };
        let n = diff.dim();
        for i in 0..n {
            for j in 0..n {
                if !diff.get(i, j).is_zero() {
                    return json!({"row": i, "col": j, "value": diff.get(i, j)});
                }
            }
        }
        json!(0)
    }
}

impl Witness for Scalar {
    fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("scalar json")
    }

    fn residual(&self, other: &Self) -> Value {
        let d = self - other;
        if d.is_zero() {
            json!(0)
        } else {
            json!(d.to_string())
        }
    }
}

impl<T: Witness> Witness for Vec<T> {
    fn to_value(&self) -> Value {
        Value::Array(self.iter().map(Witness::to_value).collect())
    }

    fn residual(&self, other: &Self) -> Value {
        if self.len() != other.len() {
            return json!({"length": [self.len(), other.len()]});
        }
        self.iter()
            .zip(other)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map_or(json!(0), |(i, (a, b))| json!({"index": i, "residual": a.residual(b)}))
    }
}

/// The result of one case before it is labelled.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub lhs_digest: String,
    pub rhs_digest: String,
    pub residual: Value,
    pub values: BTreeMap<String, String>,
}

impl Outcome {
    pub fn equal<T: Witness>(lhs: &T, rhs: &T) -> Outcome {
        let pass = lhs == rhs;
        Outcome {
            pass,
            lhs_digest: digest(&lhs.to_value()),
            rhs_digest: digest(&rhs.to_value()),
            residual: if pass { json!(0) } else { lhs.residual(rhs) },
            values: BTreeMap::new(),
        }
    }

    /// Numeric comparison; the residual is the largest absolute deviation.
    pub fn close(lhs: &[f64], rhs: &[f64], tol: f64) -> Outcome {
        let worst = if lhs.len() == rhs.len() {
            lhs.iter().zip(rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        let as_value = |v: &[f64]| json!(v.iter().map(|x| format!("{x:.15e}")).collect::<Vec<_>>());
        Outcome {
            pass: worst <= tol,
            lhs_digest: digest(&as_value(lhs)),
            rhs_digest: digest(&as_value(rhs)),
            residual: if worst.is_finite() { json!(format!("{worst:.3e}")) } else { json!("length mismatch") },
            values: BTreeMap::new(),
        }
    }

    /// A boolean property with the witness that decided it.
    pub fn holds(pass: bool, witness: Value) -> Outcome {
        let d = digest(&witness);
        Outcome {
            pass,
            lhs_digest: d.clone(),
            rhs_digest: d,
            residual: if pass { json!(0) } else { witness },
            values: BTreeMap::new(),
        }
    }

    /// Conjunction; digests chain the parts in order.
    pub fn all(parts: Vec<Outcome>) -> Outcome {
        let chain = |f: fn(&Outcome) -> &String| digest(&json!(parts.iter().map(|p| f(p).clone()).collect::<Vec<_>>()));
        let mut values = BTreeMap::new();
        for p in &parts {
            values.extend(p.values.clone());
        }
        let failing = parts.iter().position(|p| !p.pass);
        Outcome {
            pass: failing.is_none(),
            lhs_digest: chain(|p| &p.lhs_digest),
            rhs_digest: chain(|p| &p.rhs_digest),
            residual: failing.map_or(json!(0), |i| json!({"part": i, "residual": parts[i].residual})),
            values,
        }
    }

    pub fn with_value(mut self, key: &str, value: impl ToString) -> Outcome {
        self.values.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: BTreeMap<String, String>,
    pub pass: bool,
    pub lhs_digest: String,
    pub rhs_digest: String,
    pub residual: Value,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub versions: BTreeMap<String, String>,
}

pub fn versions() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("hechain".to_string(), hechain::VERSION.to_string()),
        ("hechain-cli".to_string(), env!("CARGO_PKG_VERSION").to_string()),
    ])
}

impl Report {
    /// Sorts the cases by id and derives the summary.
    pub fn new(suite: &str, mut cases: Vec<Case>) -> Report {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.pass).count();
        let summary = Summary { cases: cases.len(), passed, failed: cases.len() - passed, pass: passed == cases.len() };
        Report { suite: suite.to_string(), cases, summary, versions: versions() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for c in &self.cases {
                    let _ = write!(s, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.id);
                    for (k, v) in &c.values {
                        let _ = write!(s, " {k}={v}");
                    }
                    if !c.pass {
                        let _ = write!(s, " residual={}", c.residual);
                    }
                    s.push('\n');
                }
                let _ = writeln!(
                    s,
                    "suite {}: {} ({}/{} passed)",
                    self.suite,
                    if self.summary.pass { "PASS" } else { "FAIL" },
                    self.summary.passed,
                    self.summary.cases
                );
                s
            }
        }
    }
}
