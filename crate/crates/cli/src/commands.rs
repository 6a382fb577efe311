//! The table-producing subcommands and `check`.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::{CartanDatum, LaurentPoly, RootCombo};
use catcheck::{Case, Report, Scope, Settings, Store};
use cyclotomic::bounds::min_crossing_degree;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::JobConfig;

/// Default top degree for `basis` when nothing else is given.
pub const BASIS_CAP: i64 = 6;

pub const SCHEMA_VERSION: u32 = 1;

/// `"1:2,2:1"`, or `"0"` for the zero weight.
pub fn beta_name(datum: &CartanDatum, beta: &RootCombo) -> String {
    let parts: Vec<String> =
        beta.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, c)| format!("{}:{c}", datum.label(i))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(",")
    }
}

pub fn seq_name(datum: &CartanDatum, s: &[u8]) -> String {
    s.iter().map(|&r| datum.label(r as usize)).collect::<Vec<_>>().join(",")
}

fn poly_json(p: &LaurentPoly) -> Value {
    let m: BTreeMap<String, i64> = p.terms().map(|(e, c)| (e.to_string(), c)).collect();
    json!(m)
}

fn weights(cfg: &JobConfig) -> Vec<RootCombo> {
    let r = cfg.klr.datum().rank();
    match &cfg.scope {
        Scope::UpTo(n) => RootCombo::all_up_to(r, *n),
        Scope::Exactly(b) => vec![b.clone()],
    }
}

pub fn case_for(cfg: &JobConfig, store: Option<Arc<dyn Store>>) -> Arc<Case> {
    let c = Case::new(cfg.name(), cfg.klr.clone(), cfg.lambda.clone());
    Arc::new(match store {
        Some(s) => c.with_store(s),
        None => c,
    })
}

/// A command's result: TSV lines or one JSON document, and an exit code.
pub struct Outcome {
    pub tsv: Vec<String>,
    pub json: Value,
    pub code: i32,
}

pub fn basis(cfg: &JobConfig, cap: i64) -> Outcome {
    let klr = &cfg.klr;
    let datum = klr.datum();
    let labels = datum.labels();
    let (mut tsv, mut rows) = (vec![], vec![]);
    for beta in weights(cfg) {
        let b = beta_name(datum, &beta);
        for d in min_crossing_degree(klr, &beta)..=cap {
            let ms = klr.basis_monomials(&beta, d);
            if ms.is_empty() {
                continue;
            }
            let names: Vec<String> = ms.iter().map(|m| m.render(labels)).collect();
            tsv.push(format!("{b}\t{d}\t{}\t{}", ms.len(), names.join(" ")));
            rows.push(json!({"beta": b, "degree": d, "count": ms.len(), "monomials": names}));
        }
    }
    Outcome { tsv, json: json!({"schema_version": SCHEMA_VERSION, "degree_cap": cap, "basis": rows}), code: 0 }
}

pub fn cyclotomic(cfg: &JobConfig, case: &Case) -> Result<Outcome, String> {
    let datum = cfg.klr.datum();
    let (mut tsv, mut rows) = (vec![], vec![]);
    for beta in weights(cfg) {
        let b = beta_name(datum, &beta);
        let alg = case.cyc(&beta).map_err(|e| format!("beta {b}: {e}"))?;
        let dim = alg.graded_dim();
        tsv.push(format!("{b}\tdim_q = {dim}"));
        let mut truncs = vec![];
        let seqs = beta.sequences();
        for mu in &seqs {
            for nu in &seqs {
                let t = alg.truncation_dim(mu, nu).map_err(|e| e.to_string())?;
                let (m, n) = (seq_name(datum, mu), seq_name(datum, nu));
                tsv.push(format!("{b}\te({m}) R e({n})\t{t}"));
                truncs.push(json!({"left": m, "right": n, "dim_q": poly_json(&t)}));
            }
        }
        rows.push(json!({"beta": b, "dim": alg.dim(), "dim_q": poly_json(&dim), "truncations": truncs}));
    }
    Ok(Outcome { tsv, json: json!({"schema_version": SCHEMA_VERSION, "cyclotomic": rows}), code: 0 })
}

pub fn gram(cfg: &JobConfig) -> Result<Outcome, String> {
    let datum = cfg.klr.datum();
    let (mut tsv, mut rows) = (vec![], vec![]);
    for beta in weights(cfg) {
        let b = beta_name(datum, &beta);
        let g = uqmod::gram(datum, &cfg.lambda, &beta).map_err(|e| e.to_string())?;
        let rank = uqmod::weight_dim(datum, &cfg.lambda, &beta).map_err(|e| e.to_string())?;
        let mut entries = vec![];
        for (r, mu) in g.seqs.iter().enumerate() {
            for (c, nu) in g.seqs.iter().enumerate() {
                let (m, n) = (seq_name(datum, mu), seq_name(datum, nu));
                tsv.push(format!("{b}\tf({m})\tf({n})\t{}", g.entries[r][c]));
                entries.push(json!({"left": m, "right": n, "value": poly_json(&g.entries[r][c])}));
            }
        }
        tsv.push(format!("{b}\trank\t{rank}"));
        rows.push(json!({"beta": b, "rank": rank, "entries": entries}));
    }
    Ok(Outcome { tsv, json: json!({"schema_version": SCHEMA_VERSION, "gram": rows}), code: 0 })
}

/// Truncation dimensions against the form values they should equal. The
/// idempotent `e(ν)` pairs with `f` applied in reverse residue order.
pub fn compare(cfg: &JobConfig, case: &Case) -> Result<Outcome, String> {
    let datum = cfg.klr.datum();
    let (mut tsv, mut rows) = (vec![], vec![]);
    let mut mismatches = 0;
    for beta in weights(cfg) {
        let b = beta_name(datum, &beta);
        let alg = case.cyc(&beta).map_err(|e| format!("beta {b}: {e}"))?;
        let seqs = beta.sequences();
        for mu in &seqs {
            for nu in &seqs {
                let t = alg.truncation_dim(mu, nu).map_err(|e| e.to_string())?;
                let rm: Vec<u8> = mu.iter().rev().copied().collect();
                let rn: Vec<u8> = nu.iter().rev().copied().collect();
                let p = uqmod::predicted_dim(datum, &cfg.lambda, &beta, &rm, &rn).map_err(|e| e.to_string())?;
                let ok = t == p;
                mismatches += usize::from(!ok);
                let (m, n) = (seq_name(datum, mu), seq_name(datum, nu));
                let verdict = if ok { "match" } else { "MISMATCH" };
                tsv.push(format!("{b}\te({m})\te({n})\t{t}\t{p}\t{verdict}"));
                rows.push(json!({"beta": b, "left": m, "right": n, "truncation": poly_json(&t), "prediction": poly_json(&p), "match": ok}));
            }
        }
    }
    let code = i32::from(mismatches > 0);
    Ok(Outcome { tsv, json: json!({"schema_version": SCHEMA_VERSION, "mismatches": mismatches, "rows": rows}), code })
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_check: BTreeMap<String, [usize; 2]>,
}

pub fn summarize(reports: &[Report]) -> Summary {
    let mut by_check: BTreeMap<String, [usize; 2]> = BTreeMap::new();
    for r in reports {
        by_check.entry(r.check.clone()).or_default()[usize::from(!r.passed())] += 1;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    Summary { total: reports.len(), passed: reports.len() - failed, failed, by_check }
}

pub fn report_line(r: &Report) -> String {
    let i = &r.input;
    let opt = |v: &Option<Vec<i64>>| v.as_ref().map(|v| format!("{v:?}")).unwrap_or_else(|| "-".into());
    let detail = r
        .first_failure
        .as_ref()
        .map(|w| match w.degree {
            Some(d) => format!("{} (degree {d}): {} vs {}", w.what, w.lhs, w.rhs),
            None => format!("{}: {} vs {}", w.what, w.lhs, w.rhs),
        })
        .or_else(|| r.error.clone())
        .unwrap_or_default();
    let status = if r.passed() { "pass" } else { "fail" };
    format!(
        "{status}\t{}\t{}\tlambda={}\tbeta={}\ti={}\tj={}\t{}ms\t{detail}",
        r.check,
        i.case,
        opt(&i.lambda),
        opt(&i.beta),
        i.i.as_deref().unwrap_or("-"),
        i.j.as_deref().unwrap_or("-"),
        r.timing_ms
    )
}

/// Run `only` (or every check) on the configured case, or on the desk
/// matrix without a configuration.
pub fn check(cfg: Option<&JobConfig>, settings: Settings, only: Option<&str>, threads: usize, store: Option<Arc<dyn Store>>) -> Outcome {
    let settings = Arc::new(settings);
    let jobs = match cfg {
        Some(cfg) => catcheck::jobs(&case_for(cfg, store), &cfg.scope, &settings, only, true),
        None => catcheck::matrix_jobs(&catcheck::desk_matrix_with(store), &settings, only),
    };
    let reports = catcheck::run_jobs(&jobs, threads);
    let summary = summarize(&reports);
    let code = i32::from(summary.failed > 0);
    let mut tsv: Vec<String> = reports.iter().map(report_line).collect();
    tsv.push(format!("# {} reports, {} passed, {} failed", summary.total, summary.passed, summary.failed));
    let json = json!({"schema_version": SCHEMA_VERSION, "reports": reports, "summary": summary});
    Outcome { tsv, json, code }
}
