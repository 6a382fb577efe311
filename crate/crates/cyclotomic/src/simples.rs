//! Number of simple modules of a finite-dimensional algebra over the
//! rationals, read off the center of `A / rad A`.

use std::collections::BTreeMap;

use klr_engine::{Echelon, Elem, Mono, Scalar, SparseVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::CycAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCount {
    pub dim: usize,
    pub radical: usize,
    /// Dimension of the center of `A / rad A`: the number of blocks.
    pub center: usize,
    /// The center was shown to be a product of copies of the rationals by
    /// exhibiting its primitive idempotents.
    pub split: bool,
}

impl SimpleCount {
    pub fn count(&self) -> usize {
        self.center
    }
}

type Vector = SparseVec<usize>;

struct Table {
    /// `prod[u][v]` in basis coordinates.
    prod: Vec<Vec<Vector>>,
}

impl Table {
    fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::new();
        for (u, x) in a {
            for (v, y) in b {
                klr_engine::axpy(&mut out, &(x * y), &self.prod[*u][*v]);
            }
        }
        out
    }
}

fn to_coords(index: &BTreeMap<Mono, usize>, e: &Elem) -> Vector {
    e.iter().map(|(m, c)| (index[m], c.clone())).collect()
}

/// Null space of the linear forms in `rows` on `n` coordinates.
fn kernel(rows: &[Vector], n: usize) -> Vec<Vector> {
    // reduce the forms to echelon form keyed by column; free columns give
    // the kernel basis
    let mut ech: Echelon<usize> = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
    }
    let pivots: Vec<usize> = ech.pivots().copied().collect();
    // fully reduce so each pivot row has zeros in other pivot columns
    let mut full: BTreeMap<usize, Vector> = BTreeMap::new();
    for r in ech.rows() {
        let p = *r.keys().next_back().expect("nonzero row");
        full.insert(p, r.clone());
    }
    for &p in &pivots {
        let row = full[&p].clone();
        for (&q, other) in full.iter_mut() {
            if q != p {
                if let Some(c) = other.get(&p).cloned() {
                    klr_engine::axpy(other, &-c, &row);
                }
            }
        }
    }
    (0..n)
        .filter(|c| !full.contains_key(c))
        .map(|free| {
            let mut v = Vector::new();
            v.insert(free, Scalar::one());
            for (&p, row) in &full {
                if let Some(c) = row.get(&free) {
                    v.insert(p, -c.clone());
                }
            }
            v
        })
        .collect()
}

pub fn count_simples(alg: &CycAlgebra) -> SimpleCount {
    let basis = alg.basis_list();
    let n = basis.len();
    if n == 0 {
        return SimpleCount { dim: 0, radical: 0, center: 0, split: true };
    }
    let index: BTreeMap<Mono, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let elems: Vec<Elem> = basis.iter().map(|m| Elem::mono(*m)).collect();
    let prod: Vec<Vec<Vector>> = klr_engine::par::map(&elems, |a| elems.iter().map(|b| to_coords(&index, &alg.mul(a, b))).collect());
    let t = Table { prod };

    // trace form
    let tr: Vec<Scalar> = (0..n).map(|w| (0..n).map(|v| t.prod[w][v].get(&v).cloned().unwrap_or_else(Scalar::zero)).sum()).collect();
    let form: Vec<Vector> = (0..n)
        .map(|u| {
            (0..n)
                .filter_map(|v| {
                    let s: Scalar = t.prod[u][v].iter().map(|(w, c)| c * &tr[*w]).sum();
                    (!s.is_zero()).then_some((v, s))
                })
                .collect()
        })
        .collect();
    let rad = kernel(&form, n);
    let mut rad_ech: Echelon<usize> = Echelon::new();
    for r in &rad {
        rad_ech.insert(r.clone());
    }
    let modrad = |v: &Vector| rad_ech.reduce(v);

    // center of A/rad: z with [z, b] ∈ rad for every basis b
    let reps: Vec<usize> = (0..n).filter(|k| !rad_ech.is_pivot(k)).collect();
    let mut conds: Vec<Vector> = vec![];
    for b in 0..n {
        let eb = Vector::from([(b, Scalar::one())]);
        // the map z ↦ [z, b] mod rad, written column by column
        let cols: Vec<Vector> = reps
            .iter()
            .map(|&r| {
                let er = Vector::from([(r, Scalar::one())]);
                let mut c = t.mul(&er, &eb);
                klr_engine::axpy(&mut c, &-Scalar::one(), &t.mul(&eb, &er));
                modrad(&c)
            })
            .collect();
        let mut by_row: BTreeMap<usize, Vector> = BTreeMap::new();
        for (j, col) in cols.iter().enumerate() {
            for (row, c) in col {
                by_row.entry(*row).or_default().insert(j, c.clone());
            }
        }
        conds.extend(by_row.into_values());
    }
    let center: Vec<Vector> = kernel(&conds, reps.len())
        .into_iter()
        .map(|v| v.into_iter().map(|(j, c)| (reps[j], c)).collect())
        .collect();
    let one = modrad(&to_coords(&index, &alg.one()));
    let split = splits(&t, &modrad, &center, &one);
    SimpleCount { dim: n, radical: rad.len(), center: center.len(), split }
}

/// Look for a generic central element whose minimal polynomial has
/// `dim Z` distinct rational roots, then check the Lagrange idempotents.
fn splits(t: &Table, modrad: &dyn Fn(&Vector) -> Vector, center: &[Vector], one: &Vector) -> bool {
    let c = center.len();
    if c == 0 {
        return true;
    }
    for attempt in 1..=6i64 {
        let mut z = Vector::new();
        for (j, v) in center.iter().enumerate() {
            let w = Scalar::from_integer(BigInt::from((j as i64 + 1).pow(attempt as u32) + attempt));
            klr_engine::axpy(&mut z, &w, v);
        }
        let z = modrad(&z);
        let Some(minpoly) = minimal_polynomial(t, modrad, one, &z, c) else { continue };
        let roots = rational_roots(&minpoly);
        if roots.len() != c || minpoly.len() != c + 1 {
            continue;
        }
        let mut idems = vec![];
        for (a, r) in roots.iter().enumerate() {
            let mut e = one.clone();
            for (b, s) in roots.iter().enumerate() {
                if a != b {
                    let mut f = z.clone();
                    klr_engine::axpy(&mut f, &-s.clone(), one);
                    let inv = Scalar::one() / (r - s);
                    e = modrad(&t.mul(&e, &f)).into_iter().map(|(k, x)| (k, x * &inv)).collect();
                }
            }
            idems.push(e);
        }
        let mut total = Vector::new();
        let mut ok = true;
        for (a, e) in idems.iter().enumerate() {
            klr_engine::axpy(&mut total, &Scalar::one(), e);
            for (b, f) in idems.iter().enumerate() {
                let p = modrad(&t.mul(e, f));
                let want = if a == b { e.clone() } else { Vector::new() };
                ok &= p == want;
            }
        }
        if ok && &total == one {
            return true;
        }
    }
    false
}

/// Monic minimal polynomial of `z`, coefficients ascending.
fn minimal_polynomial(t: &Table, modrad: &dyn Fn(&Vector) -> Vector, one: &Vector, z: &Vector, bound: usize) -> Option<Vec<Scalar>> {
    let mut ech: Echelon<usize> = Echelon::new();
    let mut pw = one.clone();
    for k in 0..=bound {
        let (rem, tag) = ech.reduce_tagged(&pw);
        if rem.is_empty() {
            let mut coeffs = vec![Scalar::zero(); k + 1];
            coeffs[k] = Scalar::one();
            for (id, c) in tag {
                coeffs[id] = -c;
            }
            return Some(coeffs);
        }
        ech.insert_tagged(pw.clone(), Some(k));
        pw = modrad(&t.mul(&pw, z));
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Distinct rational roots; empty when zero is a repeated root.
fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Scalar::from_integer(den.clone())).to_integer()).collect();
    let eval = |x: &Scalar| coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c);
    let mut roots = vec![];
    let lo = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lo > 1 {
        return vec![];
    }
    if lo == 1 {
        roots.push(Scalar::zero());
    }
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    for p in divisors(&ints[lo]) {
        for q in divisors(&lead) {
            for s in [BigInt::one(), -BigInt::one()] {
                let x = Scalar::new(&p * &s, q.clone());
                if !roots.contains(&x) && eval(&x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    roots
}
