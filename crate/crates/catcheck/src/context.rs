//! A datum together with a highest weight, and a memo of the cyclotomic
//! quotients built for it.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use cartan_core::{DominantWeight, RootCombo};
use cyclotomic::bimodule::{Kernels, Parts};
use cyclotomic::{CycAlgebra, CycError};
use klr_engine::Klr;

/// Persistent storage for built quotients, shared across runs.
pub trait Store: Send + Sync {
    fn get(&self, klr: &Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo) -> Option<CycAlgebra>;
    fn put(&self, klr: &Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, alg: &CycAlgebra);

    /// Kernel bimodules built with every part and the default window.
    fn get_kernels(&self, _klr: &Arc<Klr>, _lambda: &DominantWeight, _beta: &RootCombo, _i: usize) -> Option<Kernels> {
        None
    }

    fn put_kernels(&self, _klr: &Arc<Klr>, _kern: &Kernels) {}
}

type Memo = BTreeMap<(DominantWeight, RootCombo), Arc<CycAlgebra>>;
type KernelMemo = BTreeMap<(RootCombo, usize), Arc<Kernels>>;

pub struct Case {
    pub name: String,
    pub klr: Arc<Klr>,
    pub lambda: DominantWeight,
    store: Option<Arc<dyn Store>>,
    memo: Mutex<Memo>,
    kernels: Mutex<KernelMemo>,
}

impl Case {
    pub fn new(name: impl Into<String>, klr: Arc<Klr>, lambda: DominantWeight) -> Case {
        Case { name: name.into(), klr, lambda, store: None, memo: Mutex::new(BTreeMap::new()), kernels: Mutex::new(BTreeMap::new()) }
    }

    pub fn with_store(mut self, store: Arc<dyn Store>) -> Case {
        self.store = Some(store);
        self
    }

    pub fn rank(&self) -> usize {
        self.klr.datum().rank()
    }

    pub fn label(&self, i: usize) -> String {
        self.klr.datum().label(i).to_string()
    }

    /// `R^Λ(β)` for this case's `Λ`.
    pub fn cyc(&self, beta: &RootCombo) -> Result<Arc<CycAlgebra>, CycError> {
        self.cyc_at(&self.lambda, beta)
    }

    pub fn cyc_at(&self, lambda: &DominantWeight, beta: &RootCombo) -> Result<Arc<CycAlgebra>, CycError> {
        let key = (lambda.clone(), beta.clone());
        if let Some(a) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(a.clone());
        }
        let alg = match self.store.as_ref().and_then(|s| s.get(&self.klr, lambda, beta)) {
            Some(a) => a,
            None => {
                let a = CycAlgebra::build(self.klr.clone(), lambda, beta)?;
                if let Some(s) = &self.store {
                    s.put(&self.klr, lambda, beta, &a);
                }
                a
            }
        };
        let alg = Arc::new(alg);
        self.memo.lock().expect("memo lock").entry(key).or_insert(alg.clone());
        Ok(alg)
    }

    /// `K₀`, `K₁` and `F^Λ` for `(β, i)` over the default window.
    pub fn kernels(&self, beta: &RootCombo, i: usize) -> Result<Arc<Kernels>, CycError> {
        let key = (beta.clone(), i);
        if let Some(k) = self.kernels.lock().expect("memo lock").get(&key) {
            return Ok(k.clone());
        }
        let kern = match self.store.as_ref().and_then(|s| s.get_kernels(&self.klr, &self.lambda, beta, i)) {
            Some(k) => k,
            None => {
                let k = Kernels::build(self.klr.clone(), &self.lambda, beta, i, None, Parts::ALL)?;
                if let Some(s) = &self.store {
                    s.put_kernels(&self.klr, &k);
                }
                k
            }
        };
        let kern = Arc::new(kern);
        self.kernels.lock().expect("memo lock").entry(key).or_insert(kern.clone());
        Ok(kern)
    }
}
