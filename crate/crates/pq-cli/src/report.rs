//! Serializable run reports and their JSON/CSV renderings.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use pq_eisenstein::boundary::CuspDivisor;
use pq_eisenstein::eisenstein::{Coefficient, FSource};
use pq_eisenstein::{CuspClass, Level, Rational};
use serde::Serialize;
use serde_json::Value;

/// Version of the report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Normalization of constant terms used in every report.
pub const NORMALIZATION: &str = "E_N has constant term N-1 at infinity (24 times the eta-normalized constants)";

#[derive(Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub entries: Vec<Entry>,
    pub boundary: Vec<BoundaryTerm>,
    pub certificates: BTreeMap<String, Value>,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema: u32,
    pub command: &'static str,
    pub p: u64,
    pub q: u64,
    pub pq: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub sigma: i64,
    pub representative_rule: &'static str,
    pub normalization: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

impl Meta {
    pub fn new(command: &'static str, level: &Level) -> Self {
        Meta {
            tool: "pqeis",
            version: env!("CARGO_PKG_VERSION"),
            schema: SCHEMA_VERSION,
            command,
            p: level.p(),
            q: level.q(),
            pq: level.n(),
            series: None,
            modulus: None,
            sigma: pq_eisenstein::boundary::SIGMA,
            representative_rule: pq_eisenstein::eisenstein::RepresentativeRule::default().label(),
            normalization: NORMALIZATION,
            seed: None,
            tol: None,
            nu: None,
            n: None,
        }
    }
}

/// One table row.
#[derive(Debug, Serialize)]
pub struct Entry {
    pub c: u64,
    pub d: u64,
    pub coefficient: Value,
    pub source: &'static str,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl From<&Coefficient> for Entry {
    fn from(c: &Coefficient) -> Self {
        let (estimate, bound) = match c.source {
            FSource::Formula => (None, None),
            FSource::Oracle { estimate, bound } => (Some(estimate), Some(bound)),
        };
        Entry {
            c: c.point.c,
            d: c.point.d,
            coefficient: rational_value(&c.value),
            source: c.source.label(),
            case: c.tag.to_string(),
            estimate,
            bound,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundaryTerm {
    pub cusp: String,
    pub coefficient: Value,
}

/// The divisor as a list in the order `∞, 1/p, 1/q, 0`, zero terms included.
pub fn boundary_terms(d: &CuspDivisor<Rational>, level: &Level) -> Vec<BoundaryTerm> {
    CuspClass::ALL
        .iter()
        .map(|&x| BoundaryTerm { cusp: x.label(level), coefficient: rational_value(&d.coefficient(x)) })
        .collect()
}

/// Integers as JSON numbers, other rationals as `"a/b"` strings.
pub fn rational_value(r: &Rational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return Value::from(i);
        }
    }
    Value::from(r.to_string())
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// CSV with header `c,d,coefficient,source`.
pub fn render_csv(entries: &[Entry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["c", "d", "coefficient", "source"]).expect("in-memory write");
    for e in entries {
        let coeff = match &e.coefficient {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        w.write_record([e.c.to_string(), e.d.to_string(), coeff, e.source.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
