//! Plain serializable snapshots of the quotient structures. Restoring a
//! snapshot re-inserts the stored echelon rows, which reproduces every
//! reduction exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::{DominantWeight, RootCombo};
use klr_engine::{Echelon, Klr, Mono, Scalar};
use serde::{Deserialize, Serialize};

use crate::algebra::CycAlgebra;
use crate::bimodule::Kernels;
use crate::module::{Column, QuotientModule};
use crate::CycError;

/// Bumped whenever the layout or any basis convention changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoRecord {
    pub seq: Vec<u8>,
    pub word: Vec<u8>,
    pub exps: Vec<u16>,
}

impl From<&Mono> for MonoRecord {
    fn from(m: &Mono) -> Self {
        MonoRecord { seq: m.seq().to_vec(), word: m.word().to_vec(), exps: m.exps().to_vec() }
    }
}

impl MonoRecord {
    pub fn to_mono(&self) -> Result<Mono, CycError> {
        let n = self.seq.len();
        if n > klr_engine::MAX_N || self.exps.len() != n || self.word.iter().any(|&k| k as usize + 1 >= n.max(1)) {
            return Err(CycError::Record("malformed monomial".into()));
        }
        let t = klr_engine::table(n);
        let w = t.from_word(&self.word);
        if t.get(w).word != self.word {
            return Err(CycError::Record("word is not canonical".into()));
        }
        Ok(Mono::new(&self.seq, w, &self.exps))
    }
}

/// A vector as `(monomial, "p/q")` pairs in key order.
pub type RowRecord = Vec<(MonoRecord, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    pub seq: Vec<u8>,
    pub bounds: Vec<Option<u64>>,
    pub full: bool,
    pub rows: BTreeMap<i64, Vec<RowRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub n: usize,
    pub top: Option<i64>,
    pub bottom: i64,
    pub columns: Vec<ColumnRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycRecord {
    pub schema: u32,
    pub lambda: Vec<i64>,
    pub beta: Vec<i64>,
    pub module: ModuleRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelsRecord {
    pub schema: u32,
    pub lambda: Vec<i64>,
    pub beta: Vec<i64>,
    pub i: usize,
    pub window: i64,
    pub k0: ModuleRecord,
    pub k1: Option<ModuleRecord>,
    pub f: Option<CycRecord>,
}

fn module_record(m: &QuotientModule) -> ModuleRecord {
    let columns = m
        .columns
        .iter()
        .map(|c| ColumnRecord {
            seq: c.seq.clone(),
            bounds: c.bounds.clone(),
            full: c.full,
            rows: c
                .rows()
                .iter()
                .map(|(d, e)| (*d, e.rows().map(|r| r.iter().map(|(m, x)| (MonoRecord::from(m), x.to_string())).collect()).collect()))
                .collect(),
        })
        .collect();
    ModuleRecord { n: m.n, top: m.top, bottom: m.bottom, columns }
}

fn restore_module(r: &ModuleRecord) -> Result<QuotientModule, CycError> {
    let mut columns = vec![];
    for c in &r.columns {
        if c.seq.len() != r.n || c.bounds.len() != r.n {
            return Err(CycError::Record("column length".into()));
        }
        let mut rows = BTreeMap::new();
        for (d, rs) in &c.rows {
            let mut e: Echelon<Mono> = Echelon::new();
            for row in rs {
                let mut v = BTreeMap::new();
                for (m, x) in row {
                    let x: Scalar = x.parse().map_err(|_| CycError::Record(format!("bad scalar {x}")))?;
                    v.insert(m.to_mono()?, x);
                }
                e.insert(v);
            }
            rows.insert(*d, e);
        }
        columns.push(Column::from_parts(c.seq.clone(), c.bounds.clone(), c.full, rows));
    }
    Ok(QuotientModule::from_parts(r.n, columns, r.top, r.bottom))
}

impl CycAlgebra {
    pub fn to_record(&self) -> CycRecord {
        CycRecord { schema: SCHEMA_VERSION, lambda: self.lambda.levels().to_vec(), beta: self.beta.coeffs().to_vec(), module: module_record(self.module()) }
    }

    pub fn from_record(klr: Arc<Klr>, r: &CycRecord) -> Result<CycAlgebra, CycError> {
        if r.schema != SCHEMA_VERSION {
            return Err(CycError::Record(format!("schema {} != {SCHEMA_VERSION}", r.schema)));
        }
        let lambda = DominantWeight::new(r.lambda.clone()).map_err(|e| CycError::Record(e.to_string()))?;
        let beta = RootCombo::new(r.beta.clone()).map_err(|e| CycError::Record(e.to_string()))?;
        CycAlgebra::from_module(klr, &lambda, &beta, restore_module(&r.module)?)
    }
}

impl Kernels {
    pub fn to_record(&self) -> KernelsRecord {
        KernelsRecord {
            schema: SCHEMA_VERSION,
            lambda: self.lambda.levels().to_vec(),
            beta: self.beta.coeffs().to_vec(),
            i: self.i,
            window: self.window,
            k0: module_record(&self.k0),
            k1: self.k1.as_ref().map(module_record),
            f: self.f.as_ref().map(|f| f.to_record()),
        }
    }

    pub fn from_record(klr: Arc<Klr>, r: &KernelsRecord) -> Result<Kernels, CycError> {
        if r.schema != SCHEMA_VERSION {
            return Err(CycError::Record(format!("schema {} != {SCHEMA_VERSION}", r.schema)));
        }
        let lambda = DominantWeight::new(r.lambda.clone()).map_err(|e| CycError::Record(e.to_string()))?;
        let beta = RootCombo::new(r.beta.clone()).map_err(|e| CycError::Record(e.to_string()))?;
        let k0 = restore_module(&r.k0)?;
        let k1 = r.k1.as_ref().map(restore_module).transpose()?;
        let f = r.f.as_ref().map(|f| CycAlgebra::from_record(klr.clone(), f).map(Arc::new)).transpose()?;
        Kernels::assemble(klr, &lambda, &beta, r.i, r.window, k0, k1, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::Parts;
    use cartan_core::CartanDatum;

    #[test]
    fn algebra_round_trip() {
        let klr = Arc::new(Klr::standard(CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap()));
        let a = CycAlgebra::build(klr.clone(), &DominantWeight::new(vec![1, 1]).unwrap(), &RootCombo::new(vec![1, 1]).unwrap()).unwrap();
        let rec = a.to_record();
        let text = serde_json::to_string(&rec).unwrap();
        let back: CycRecord = serde_json::from_str(&text).unwrap();
        let b = CycAlgebra::from_record(klr, &back).unwrap();
        assert_eq!(a.basis(), b.basis());
        assert_eq!(b.to_record(), rec);
        let x = a.basis_list();
        for p in &x {
            for q in &x {
                let (ep, eq) = (klr_engine::Elem::mono(*p), klr_engine::Elem::mono(*q));
                assert_eq!(a.mul(&ep, &eq), b.mul(&ep, &eq));
            }
        }
    }

    #[test]
    fn kernels_round_trip() {
        let klr = Arc::new(Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap()));
        let l = DominantWeight::new(vec![2]).unwrap();
        let k = Kernels::build(klr.clone(), &l, &RootCombo::new(vec![1]).unwrap(), 0, None, Parts::ALL).unwrap();
        let rec = k.to_record();
        let back: KernelsRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        let k2 = Kernels::from_record(klr, &back).unwrap();
        assert_eq!(k.exactness(), k2.exactness());
        assert_eq!(k2.to_record(), rec);
    }

    #[test]
    fn stale_schema_is_rejected() {
        let klr = Arc::new(Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap()));
        let a = CycAlgebra::build(klr.clone(), &DominantWeight::new(vec![1]).unwrap(), &RootCombo::new(vec![1]).unwrap()).unwrap();
        let mut rec = a.to_record();
        rec.schema += 1;
        assert!(CycAlgebra::from_record(klr, &rec).is_err());
    }
}
