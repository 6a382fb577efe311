//! The JSON job configuration and its validation.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::{CartanDatum, CartanError, DominantWeight, RootCombo};
use catcheck::Scope;
use klr_engine::{Klr, QSpec, QTerms, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("config error in `{field}`: {msg}")]
pub struct ConfigError {
    pub field: String,
    pub msg: String,
}

fn err(field: impl Into<String>, msg: impl ToString) -> ConfigError {
    ConfigError { field: field.into(), msg: msg.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanSection {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

/// `"standard"` or, per pair `"i,j"`, terms `[p, q, numerator, denominator]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QCoeffs {
    Preset(String),
    Explicit(BTreeMap<String, Vec<[i64; 4]>>),
}

impl Default for QCoeffs {
    fn default() -> Self {
        QCoeffs::Preset("standard".into())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    #[default]
    Tsv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub cartan: CartanSection,
    #[serde(default)]
    pub q_coeffs: QCoeffs,
    #[serde(default)]
    pub lambda: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<i64>,
    #[serde(default)]
    pub output: Output,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<String>,
}

/// A validated configuration.
#[derive(Clone)]
pub struct JobConfig {
    pub file: ConfigFile,
    pub klr: Arc<Klr>,
    pub lambda: DominantWeight,
    pub scope: Scope,
}

impl JobConfig {
    /// Short name of the datum, used as the case name in reports.
    pub fn name(&self) -> String {
        format!("custom[{}]", self.file.cartan.labels.join(","))
    }
}

pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ConfigFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "<document>".to_string() } else { path };
        err(field, e.into_inner())
    })?;
    de.end().map_err(|e| err("<document>", e))?;
    validate(file)
}

pub fn emit_config(c: &ConfigFile) -> String {
    serde_json::to_string_pretty(c).expect("config serializes")
}

fn cartan_field(e: &CartanError) -> &'static str {
    match e {
        CartanError::LabelCount { .. } | CartanError::DuplicateLabel(_) => "cartan.labels",
        _ => "cartan.matrix",
    }
}

fn by_label(datum: &CartanDatum, field: &str, map: &BTreeMap<String, i64>) -> Result<Vec<i64>, ConfigError> {
    let mut v = vec![0; datum.rank()];
    for (label, &x) in map {
        let i = datum.index_of(label).ok_or_else(|| err(format!("{field}.{label}"), "unknown label"))?;
        v[i] = x;
    }
    Ok(v)
}

fn qspec(datum: &CartanDatum, q: &QCoeffs) -> Result<QSpec, ConfigError> {
    match q {
        QCoeffs::Preset(s) if s == "standard" => Ok(QSpec::standard(datum)),
        QCoeffs::Preset(s) => Err(err("q_coeffs", format!("unknown preset {s:?}, expected \"standard\" or a map"))),
        QCoeffs::Explicit(map) => {
            let mut over: BTreeMap<(usize, usize), QTerms> = BTreeMap::new();
            for (key, terms) in map {
                let field = format!("q_coeffs.{key}");
                let parts: Vec<&str> = key.split(',').collect();
                let [a, b] = parts[..] else { return Err(err(field, "key must be \"i,j\"")) };
                let i = datum.index_of(a.trim()).ok_or_else(|| err(&field, format!("unknown label {a:?}")))?;
                let j = datum.index_of(b.trim()).ok_or_else(|| err(&field, format!("unknown label {b:?}")))?;
                let mut ts = vec![];
                for &[p, q, num, den] in terms {
                    if den == 0 {
                        return Err(err(&field, format!("zero denominator in term (p,q) = ({p},{q})")));
                    }
                    let c: Scalar = format!("{num}/{den}").parse().map_err(|_| err(&field, "bad coefficient"))?;
                    ts.push((p, q, c));
                }
                over.insert((i, j), ts);
            }
            QSpec::with_overrides(datum, &over).map_err(|e| err("q_coeffs", e))
        }
    }
}

pub fn validate(file: ConfigFile) -> Result<JobConfig, ConfigError> {
    let c = &file.cartan;
    let datum = CartanDatum::with_labels(c.labels.clone(), c.matrix.clone()).map_err(|e| err(cartan_field(&e), e))?;
    let q = qspec(&datum, &file.q_coeffs)?;
    let klr = Klr::new(datum.clone(), q).map_err(|e| err("q_coeffs", e))?;
    let levels = by_label(&datum, "lambda", &file.lambda)?;
    for (k, &l) in levels.iter().enumerate() {
        if l < 0 {
            return Err(err(format!("lambda.{}", datum.label(k)), format!("level {l} is negative; the weight must be dominant")));
        }
    }
    let lambda = DominantWeight::new(levels).map_err(|e| err("lambda", e))?;
    let scope = match (&file.beta, file.nmax) {
        (Some(_), Some(_)) => return Err(err("beta", "give either beta or nmax, not both")),
        (None, None) => return Err(err("nmax", "one of beta or nmax is required")),
        (None, Some(n)) => {
            if n + 1 > klr_engine::MAX_N {
                return Err(err("nmax", format!("at most {} strands are supported", klr_engine::MAX_N - 1)));
            }
            Scope::UpTo(n)
        }
        (Some(b), None) => {
            let counts = by_label(&datum, "beta", b)?;
            let beta = RootCombo::new(counts).map_err(|e| err("beta", e))?;
            if beta.height() + 1 > klr_engine::MAX_N {
                return Err(err("beta", format!("height {} exceeds the supported {}", beta.height(), klr_engine::MAX_N - 1)));
            }
            Scope::Exactly(beta)
        }
    };
    if let Some(d) = file.degree_cap {
        if d < 0 {
            return Err(err("degree_cap", "must be nonnegative"));
        }
    }
    Ok(JobConfig { file, klr: Arc::new(klr), lambda, scope })
}
