//! Jobs, the desk-scale matrix, and a scheduler whose output order does
//! not depend on how the jobs were run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use klr_engine::{par, Klr};

use crate::{cyclo, free, kernel, Builder, Case, Input, Report, Store};

pub const CHECKS: [&str; 12] = [
    "relations",
    "associativity",
    "intertwiners",
    "pbw",
    "convolution",
    "exact",
    "taug",
    "sl2",
    "mixed",
    "phi",
    "categorification",
    "vanishing",
];

/// Checks that only see the algebra `R(β)`, not `Λ`.
pub fn is_free_check(name: &str) -> bool {
    matches!(name, "relations" | "associativity" | "intertwiners" | "pbw" | "convolution")
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub degree_cap: i64,
    pub kmax: u16,
    pub samples: usize,
    pub seed: u64,
    pub relations_n: usize,
    pub intertwiners_n: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { degree_cap: 10, kmax: 4, samples: 200, seed: 7, relations_n: 3, intertwiners_n: 4 }
    }
}

/// Which `β` a case covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    UpTo(usize),
    Exactly(RootCombo),
}

impl Scope {
    fn all(&self, rank: usize) -> Vec<RootCombo> {
        match self {
            Scope::UpTo(n) => RootCombo::all_up_to(rank, *n),
            Scope::Exactly(b) => vec![b.clone()],
        }
    }

    /// `β` for checks that also build `β + α_i` at the next height.
    fn below(&self, rank: usize) -> Vec<RootCombo> {
        match self {
            Scope::UpTo(0) => vec![],
            Scope::UpTo(n) => RootCombo::all_up_to(rank, n - 1),
            Scope::Exactly(b) => vec![b.clone()],
        }
    }

    fn height(&self) -> usize {
        match self {
            Scope::UpTo(n) => *n,
            Scope::Exactly(b) => b.height(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JobKind {
    Relations,
    Intertwiners,
    Associativity(RootCombo),
    Pbw(RootCombo),
    Convolution(RootCombo, usize, usize),
    Exact(RootCombo, usize),
    Taug(RootCombo, usize),
    Sl2(RootCombo, usize),
    Mixed(RootCombo, usize, usize),
    Phi(RootCombo, usize),
    Categorification(RootCombo),
    Vanishing(usize),
}

impl JobKind {
    pub fn name(&self) -> &'static str {
        match self {
            JobKind::Relations => "relations",
            JobKind::Intertwiners => "intertwiners",
            JobKind::Associativity(_) => "associativity",
            JobKind::Pbw(_) => "pbw",
            JobKind::Convolution(..) => "convolution",
            JobKind::Exact(..) => "exact",
            JobKind::Taug(..) => "taug",
            JobKind::Sl2(..) => "sl2",
            JobKind::Mixed(..) => "mixed",
            JobKind::Phi(..) => "phi",
            JobKind::Categorification(_) => "categorification",
            JobKind::Vanishing(_) => "vanishing",
        }
    }
}

#[derive(Clone)]
pub struct Job {
    pub case: Arc<Case>,
    pub kind: JobKind,
    pub settings: Arc<Settings>,
}

impl Job {
    pub fn run(&self) -> Report {
        let c = &*self.case;
        let s = &*self.settings;
        let run = || match &self.kind {
            JobKind::Relations => free::relations(c, s.relations_n),
            JobKind::Intertwiners => free::intertwiners(c, s.intertwiners_n),
            JobKind::Associativity(b) => free::associativity(c, b, s.samples, s.seed),
            JobKind::Pbw(b) => free::pbw(c, b, s.degree_cap),
            JobKind::Convolution(b, i, j) => free::convolution(c, b, *i, *j, s.degree_cap),
            JobKind::Exact(b, i) => kernel::exact(c, b, *i),
            JobKind::Taug(b, i) => kernel::taug(c, b, *i),
            JobKind::Sl2(b, i) => cyclo::sl2(c, b, *i),
            JobKind::Mixed(b, i, j) => cyclo::mixed(c, b, *i, *j),
            JobKind::Phi(b, i) => kernel::phi(c, b, *i, s.kmax),
            JobKind::Categorification(b) => cyclo::categorification(c, b),
            JobKind::Vanishing(n) => cyclo::vanishing(c, *n),
        };
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "unknown".into());
                let mut b = Builder::new(self.kind.name(), Input { case: c.name.clone(), ..Input::default() });
                b.fail(format!("panic: {msg}"));
                b.finish()
            }
        }
    }
}

/// Jobs for one case. `only` restricts to a single check; `free` says
/// whether the `Λ`-independent checks are included.
pub fn jobs(case: &Arc<Case>, scope: &Scope, settings: &Arc<Settings>, only: Option<&str>, free: bool) -> Vec<Job> {
    let r = case.rank();
    let mut kinds = vec![];
    if free {
        kinds.push(JobKind::Relations);
        kinds.push(JobKind::Intertwiners);
        for b in scope.all(r) {
            if b.height() > 0 {
                kinds.push(JobKind::Associativity(b.clone()));
            }
            kinds.push(JobKind::Pbw(b));
        }
        for b in scope.below(r) {
            for i in 0..r {
                for j in 0..r {
                    kinds.push(JobKind::Convolution(b.clone(), i, j));
                }
            }
        }
    }
    for b in scope.below(r) {
        for i in 0..r {
            kinds.push(JobKind::Exact(b.clone(), i));
            kinds.push(JobKind::Taug(b.clone(), i));
        }
    }
    for b in scope.all(r) {
        for i in 0..r {
            kinds.push(JobKind::Sl2(b.clone(), i));
            kinds.push(JobKind::Phi(b.clone(), i));
            for j in 0..r {
                if i != j {
                    kinds.push(JobKind::Mixed(b.clone(), i, j));
                }
            }
        }
        kinds.push(JobKind::Categorification(b));
    }
    kinds.push(JobKind::Vanishing(scope.height()));
    kinds
        .into_iter()
        .filter(|k| only.is_none_or(|o| o == k.name()))
        .map(|kind| Job { case: case.clone(), kind, settings: settings.clone() })
        .collect()
}

/// Run jobs on up to `threads` workers (0 for the default pool) and
/// return reports in canonical order.
pub fn run_jobs(jobs: &[Job], threads: usize) -> Vec<Report> {
    let go = || par::map(jobs, |j| j.run());
    let mut reports = if threads == 0 { go() } else { par::with_threads(threads, go) };
    reports.sort_by_key(|r| r.key());
    reports
}

fn datum(m: Vec<Vec<i64>>, labels: &[&str]) -> Arc<Klr> {
    let d = CartanDatum::with_labels(labels.iter().map(|s| s.to_string()).collect(), m).expect("valid Cartan matrix");
    Arc::new(Klr::standard(d))
}

/// A₁ at levels 1–3, A₂ at `Λ₁` and `Λ₁+Λ₂`, affine A₁ at `Λ₀`; heights
/// up to 3, or 2 for the affine datum.
pub fn desk_matrix() -> Vec<(Arc<Case>, Scope)> {
    desk_matrix_with(None)
}

/// The desk matrix with every case backed by `store`.
pub fn desk_matrix_with(store: Option<Arc<dyn Store>>) -> Vec<(Arc<Case>, Scope)> {
    let case = |name: &str, klr: &Arc<Klr>, l: DominantWeight| {
        let c = Case::new(name, klr.clone(), l);
        Arc::new(match &store {
            Some(s) => c.with_store(s.clone()),
            None => c,
        })
    };
    let a1 = datum(vec![vec![2]], &["1"]);
    let a2 = datum(vec![vec![2, -1], vec![-1, 2]], &["1", "2"]);
    let aff = datum(vec![vec![2, -2], vec![-2, 2]], &["0", "1"]);
    let w = |l: Vec<i64>| DominantWeight::new(l).expect("dominant");
    let mut out = vec![];
    for m in 1..=3 {
        out.push((case("A1", &a1, w(vec![m])), Scope::UpTo(3)));
    }
    for l in [vec![1, 0], vec![1, 1]] {
        out.push((case("A2", &a2, w(l)), Scope::UpTo(3)));
    }
    out.push((case("A1^(1)", &aff, w(vec![1, 0])), Scope::UpTo(2)));
    out
}

/// Every job of the matrix, with the `Λ`-independent ones once per datum.
pub fn matrix_jobs(matrix: &[(Arc<Case>, Scope)], settings: &Arc<Settings>, only: Option<&str>) -> Vec<Job> {
    let mut seen: Vec<String> = vec![];
    let mut out = vec![];
    for (case, scope) in matrix {
        let first = !seen.contains(&case.name);
        if first {
            seen.push(case.name.clone());
        }
        out.extend(jobs(case, scope, settings, only, first));
    }
    out
}
