//! Checks on the kernel bimodules: the exact sequence, the maps between
//! the kernels, and the elements `φ_k`.

use cartan_core::{LaurentPoly, RootCombo};
use cyclotomic::phi::{phi_table, TPoly};
use cyclotomic::CycError;

use crate::{Builder, Case, Input, Report};

fn input(case: &Case, beta: &RootCombo, i: usize) -> Input {
    Input {
        lambda: Some(case.lambda.levels().to_vec()),
        ..crate::free::input(case, Some(beta), Some(i), None)
    }
}

fn window_error(b: &mut Builder, e: CycError) {
    match e {
        CycError::Window { .. } => b.fail(format!("window insufficiency: {e}")),
        other => b.fail(other),
    }
}

/// `0 → K₁ → K₀ → F^Λ → 0` degree by degree, plus the composites of
/// the maps `P` and `Q`.
pub fn exact(case: &Case, beta: &RootCombo, i: usize) -> Report {
    let mut b = Builder::new("exact", input(case, beta, i));
    let kern = match case.kernels(beta, i) {
        Ok(k) => k,
        Err(e) => {
            window_error(&mut b, e);
            return b.finish();
        }
    };
    b.cap("window", kern.window);
    b.cap("shift", kern.shift);
    let rows = kern.exactness();
    let poly = |f: &dyn Fn(&cyclotomic::bimodule::ExactRow) -> usize| {
        LaurentPoly::from_terms(rows.iter().map(|r| (r.degree, f(r) as i64)))
    };
    b.poly("P injective: rank P vs shifted dim K1", poly(&|r| r.rank_p), poly(&|r| r.k1));
    b.poly("pi surjective: rank pi vs dim F", poly(&|r| r.rank_pi), poly(&|r| r.f));
    let bad: Vec<i64> = rows.iter().filter(|r| !r.composite_zero).map(|r| r.degree).collect();
    b.int("degrees with pi P nonzero", bad.first().copied(), bad.len() as i64, 0);
    b.poly("dim K0 vs dim F + q^shift dim K1", poly(&|r| r.k0), poly(&|r| r.f + r.k1));
    let (seen, qp) = kern.qp_defects();
    b.int("Q P vs right multiplication by A", qp.first().map(|d| d.0), qp.len() as i64, 0);
    let (seen2, pq) = kern.pq_defects();
    b.int("P Q vs right multiplication by B", pq.first().map(|d| d.0), pq.len() as i64, 0);
    b.cap("qp_degrees", seen as i64);
    b.cap("pq_degrees", seen2 as i64);
    let s = kern.s_injectivity();
    b.poly(
        "right multiplication by S on K1: rank vs dim",
        LaurentPoly::from_terms(s.iter().map(|x| (x.0, x.2 as i64))),
        LaurentPoly::from_terms(s.iter().map(|x| (x.0, x.1 as i64))),
    );
    b.finish()
}

/// `x_1^Λ τ_1⋯τ_n g_n⋯g_1 e(i,ν) ≡ A_ν e(i,ν)` for every `ν`.
pub fn taug(case: &Case, beta: &RootCombo, i: usize) -> Report {
    let mut b = Builder::new("taug", input(case, beta, i));
    let kern = match case.kernels(beta, i) {
        Ok(k) => k,
        Err(e) => {
            window_error(&mut b, e);
            return b.finish();
        }
    };
    b.cap("window", kern.window1);
    let labels = case.klr.datum().labels().to_vec();
    for nu in beta.sequences() {
        let name: Vec<&str> = nu.iter().map(|&r| labels[r as usize].as_str()).collect();
        match kern.taug_residue(&nu) {
            Ok(r) => {
                let deg = case.klr.homogeneous_degree(&r);
                b.text(format!("residue at ({})", name.join(",")), deg, r.render(&labels), "0".into());
            }
            Err(e) => {
                window_error(&mut b, e);
                break;
            }
        }
    }
    b.finish()
}

fn render(p: &TPoly, labels: &[String]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = p.iter().rev().map(|(m, e)| format!("t^{m} ({})", e.render(labels))).collect();
    parts.join(" + ")
}

/// Both computations of `φ_k`, their shape, and the relations among the
/// `ψ_k`.
pub fn phi(case: &Case, beta: &RootCombo, i: usize, kmax: u16) -> Report {
    let mut b = Builder::new("phi", input(case, beta, i));
    b.cap("k", kmax as i64);
    let t = match phi_table(case.klr.clone(), &case.lambda, beta, i, kmax) {
        Ok(t) => t,
        Err(e) => {
            window_error(&mut b, e);
            return b.finish();
        }
    };
    b.cap("a", t.a);
    b.cap("window", t.window);
    let labels = case.klr.datum().labels().to_vec();
    for r in &t.rows {
        let k = r.k as i64;
        b.text(format!("k={k}: chase vs division"), None, render(&r.chase, &labels), render(&r.division, &labels));
        b.int(format!("k={k}: direct sum"), None, r.direct_sum as i64, 1);
        let deg = t.a + k;
        let top = r.chase.keys().next_back().map_or(-1, |&m| m as i64);
        let want = if deg < 0 || t.alg.is_zero() { -1 } else { deg };
        b.int(format!("k={k}: t-degree"), None, top, want);
        b.int(format!("k={k}: gamma phi monic"), None, t.monic(r) as i64, 1);
        if let Some(ok) = r.psi_shift {
            b.int(format!("k={k}: psi shift"), None, ok as i64, 1);
        }
    }
    for (k, ok) in t.recursion() {
        b.int(format!("k={k}: phi_(k+1) = phi_k t + E(psi_k)"), None, ok as i64, 1);
    }
    for (k, ok) in t.triangular() {
        b.int(format!("k={k}: triangular E(psi_k)"), None, ok as i64, 1);
    }
    b.finish()
}
