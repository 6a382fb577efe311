//! Checks of the structural identities, each producing a [`Report`] with
//! the exact values on both sides.

pub mod context;
pub mod cyclo;
pub mod free;
pub mod kernel;
pub mod suite;



use std::collections::BTreeMap;
use std::time::Instant;

use cartan_core::LaurentPoly;
use serde::{Serialize, Serializer};

pub use context::{Case, Store};
pub use suite::{desk_matrix, desk_matrix_with, jobs, matrix_jobs, run_jobs, Job, JobKind, Scope, Settings, CHECKS};


#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Poly(#[serde(serialize_with = "poly_map")] LaurentPoly),
    Int(i64),
    Text(String),
}

/// Laurent polynomials go out as exponent → coefficient maps.
fn poly_map<S: Serializer>(p: &LaurentPoly, s: S) -> Result<S::Ok, S::Error> {
    let m: BTreeMap<i64, i64> = p.terms().collect();
    m.serialize(s)
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Int(k) => write!(f, "{k}"),
            Value::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub what: String,
    /// Lowest degree where the sides differ, or the degree compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub lhs: Value,
    pub rhs: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Input {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    pub caps: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub input: Input,
    pub status: Status,
    /// Set when the check could not be carried out, e.g. a degree window
    /// too small for the data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Witness>,
    pub witnesses: Vec<Witness>,
    pub timing_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Sort key: check name, then inputs.
    pub fn key(&self) -> (String, String, Option<Vec<i64>>, Option<Vec<i64>>, Option<String>, Option<String>) {
        let i = &self.input;
        (self.check.clone(), i.case.clone(), i.lambda.clone(), i.beta.clone(), i.i.clone(), i.j.clone())
    }
}

/// Accumulates witnesses for one check.
pub struct Builder {
    check: String,
    input: Input,
    witnesses: Vec<Witness>,
    error: Option<String>,
    start: Instant,
}

impl Builder {
    pub fn new(check: &str, input: Input) -> Builder {
        Builder { check: check.into(), input, witnesses: vec![], error: None, start: Instant::now() }
    }

    pub fn cap(&mut self, name: &str, v: i64) {
        self.input.caps.insert(name.into(), v);
    }

    pub fn push(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn poly(&mut self, what: impl Into<String>, lhs: LaurentPoly, rhs: LaurentPoly) -> bool {
        let diff = &lhs - &rhs;
        let ok = diff.is_zero();
        self.push(Witness { what: what.into(), degree: diff.min_exp(), lhs: Value::Poly(lhs), rhs: Value::Poly(rhs), ok });
        ok
    }

    pub fn int(&mut self, what: impl Into<String>, degree: Option<i64>, lhs: i64, rhs: i64) -> bool {
        let ok = lhs == rhs;
        self.push(Witness { what: what.into(), degree, lhs: Value::Int(lhs), rhs: Value::Int(rhs), ok });
        ok
    }

    pub fn text(&mut self, what: impl Into<String>, degree: Option<i64>, lhs: String, rhs: String) -> bool {
        let ok = lhs == rhs;
        self.push(Witness { what: what.into(), degree, lhs: Value::Text(lhs), rhs: Value::Text(rhs), ok });
        ok
    }

    pub fn fail(&mut self, error: impl std::fmt::Display) {
        self.error = Some(error.to_string());
    }

    pub fn finish(self) -> Report {
        let first_failure = self.witnesses.iter().find(|w| !w.ok).cloned();
        let status = if self.error.is_none() && first_failure.is_none() { Status::Pass } else { Status::Fail };
        Report {
            check: self.check,
            input: self.input,
            status,
            error: self.error,
            first_failure,
            witnesses: self.witnesses,
            timing_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Graded dimension of a table of basis pieces.
pub fn dims_poly<T>(m: &BTreeMap<i64, Vec<T>>) -> LaurentPoly {
    LaurentPoly::from_terms(m.iter().map(|(d, v)| (*d, v.len() as i64)))
}

pub fn counts_poly(m: &BTreeMap<i64, usize>) -> LaurentPoly {
    LaurentPoly::from_terms(m.iter().map(|(d, k)| (*d, *k as i64)))
}
