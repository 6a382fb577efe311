//! On-disk content-addressed store for built cyclotomic quotients and kernel
//! bimodules.
//!
//! The key is the SHA-256 of everything the structure depends on: the
//! matrix, symmetrizers, the `Q` coefficients, `Λ`, `β`, the degree window
//! and the record schema. A file that fails to parse, or parses to another
//! schema, is a miss and gets rebuilt and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use cartan_core::{DominantWeight, RootCombo};
use catcheck::Store;
use cyclotomic::bimodule::{default_window, Kernels};
use cyclotomic::record::{CycRecord, KernelsRecord, SCHEMA_VERSION};
use cyclotomic::CycAlgebra;
use klr_engine::Klr;
use sha2::{Digest, Sha256};

pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct CacheStat {
    pub entries: usize,
    pub bytes: u64,
}

fn datum_key(klr: &Klr) -> String {
    let d = klr.datum();
    let q: Vec<String> = klr.qspec().listing().iter().map(|(i, j, p, q, c)| format!("{i},{j},{p},{q},{c}")).collect();
    format!("schema={SCHEMA_VERSION};matrix={:?};d={:?};q=[{}]", d.matrix(), d.symmetrizers(), q.join(";"))
}

pub fn cyc_key(klr: &Klr, lambda: &DominantWeight, beta: &RootCombo) -> String {
    let cap = cyclotomic::degree_cap(klr, lambda, beta);
    digest(&format!("cyc;{};lambda={:?};beta={:?};cap={cap:?}", datum_key(klr), lambda.levels(), beta.coeffs()))
}

pub fn kernels_key(klr: &Klr, lambda: &DominantWeight, beta: &RootCombo, i: usize, window: i64) -> String {
    digest(&format!("kernels;{};lambda={:?};beta={:?};i={i};window={window}", datum_key(klr), lambda.levels(), beta.coeffs()))
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<DiskCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir, hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn read<T: serde::de::DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Write through a temporary file and rename, so readers never see a
    /// partial entry. Failures only cost a rebuild next time.
    fn write<T: serde::Serialize>(&self, key: &str, value: &T) {
        let Ok(text) = serde_json::to_string(value) else { return };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let ok = fs::File::create(&tmp).and_then(|mut f| f.write_all(text.as_bytes())).is_ok();
        if !ok || fs::rename(&tmp, self.path(key)).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    fn count(&self, hit: bool) {
        let c = if hit { &self.hits } else { &self.misses };
        c.fetch_add(1, Ordering::Relaxed);
    }

    fn entries(&self) -> impl Iterator<Item = fs::DirEntry> {
        fs::read_dir(&self.dir)
            .into_iter()
            .flatten()
            .flatten()
            .filter(|e| e.file_name().to_str().is_some_and(|n| n.ends_with(".json") && !n.starts_with('.')))
    }

    pub fn stat(&self) -> CacheStat {
        let mut s = CacheStat::default();
        for e in self.entries() {
            s.entries += 1;
            s.bytes += e.metadata().map(|m| m.len()).unwrap_or(0);
        }
        s
    }

    /// Removes every entry; returns how many.
    pub fn clear(&self) -> std::io::Result<usize> {
        let mut n = 0;
        for e in self.entries() {
            fs::remove_file(e.path())?;
            n += 1;
        }
        Ok(n)
    }
}

impl Store for DiskCache {
    fn get(&self, klr: &Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo) -> Option<CycAlgebra> {
        let r: Option<CycRecord> = self.read(&cyc_key(klr, lambda, beta));
        let alg = r
            .filter(|r| r.schema == SCHEMA_VERSION && r.lambda == lambda.levels() && r.beta == beta.coeffs())
            .and_then(|r| CycAlgebra::from_record(klr.clone(), &r).ok());
        self.count(alg.is_some());
        alg
    }

    fn put(&self, klr: &Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, alg: &CycAlgebra) {
        self.write(&cyc_key(klr, lambda, beta), &alg.to_record());
    }

    fn get_kernels(&self, klr: &Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, i: usize) -> Option<Kernels> {
        let window = default_window(klr, lambda, beta, i);
        let r: Option<KernelsRecord> = self.read(&kernels_key(klr, lambda, beta, i, window));
        let kern = r
            .filter(|r| r.schema == SCHEMA_VERSION && r.i == i && r.window == window)
            .and_then(|r| Kernels::from_record(klr.clone(), &r).ok());
        self.count(kern.is_some());
        kern
    }

    fn put_kernels(&self, klr: &Arc<Klr>, kern: &Kernels) {
        let key = kernels_key(klr, &kern.lambda, &kern.beta, kern.i, kern.window);
        self.write(&key, &kern.to_record());
    }
}
