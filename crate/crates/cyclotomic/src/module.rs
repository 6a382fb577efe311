//! Left `R(n)`-modules `R e(μ) / (submodule)`, one column per right
//! idempotent, materialized by closure.
//!
//! A column carries per-position exponent bounds. Monomials reaching a
//! bound ("big") are known to lie in the submodule and span a left
//! submodule of their own, so the quotient is spanned by the small
//! monomials. The rest of the submodule is found by closing the projected
//! generators under left multiplication by every `x_l` and `τ_k`, dropping
//! big monomials after each step.
//!
//! With a degree window `D`, exploration stops at `D + T` where `-T` is
//! the lowest crossing degree. Every product `r·g` of degree at most `D`
//! is reached through intermediate products of degree at most `D + T`, so
//! all pieces of degree at most `D` come out exact.

use std::collections::{BTreeMap, VecDeque};

use cartan_core::LaurentPoly;
use klr_engine::{exps_of_weight, par, table, Echelon, Elem, Klr, Mono, SparseVec, MAX_N};

#[derive(Clone, Debug)]
pub struct ColumnSpec {
    pub seq: Vec<u8>,
    /// Exponent bound per position; `None` is unbounded.
    pub bounds: Vec<Option<u64>>,
    pub generators: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct Column {
    pub seq: Vec<u8>,
    pub bounds: Vec<Option<u64>>,
    /// The idempotent itself lies in the submodule.
    pub full: bool,
    rows: BTreeMap<i64, Echelon<Mono>>,
}

impl Column {
    pub fn is_small(&self, m: &Mono) -> bool {
        m.exps().iter().zip(&self.bounds).all(|(&e, b)| b.is_none_or(|b| (e as u64) < b))
    }

    pub fn rank(&self) -> usize {
        self.rows.values().map(|e| e.rank()).sum()
    }

    pub fn rows(&self) -> &BTreeMap<i64, Echelon<Mono>> {
        &self.rows
    }

    pub(crate) fn from_parts(seq: Vec<u8>, bounds: Vec<Option<u64>>, full: bool, rows: BTreeMap<i64, Echelon<Mono>>) -> Column {
        Column { seq, bounds, full, rows }
    }

    fn project(&self, e: &Elem) -> Elem {
        e.iter().filter(|(m, _)| self.is_small(m)).map(|(m, c)| (*m, c.clone())).collect()
    }
}

/// Build one column. `limit` caps exploration degree; `None` requires
/// every position to be bounded.
pub fn close_column(klr: &Klr, spec: &ColumnSpec, limit: Option<i64>) -> Column {
    let n = spec.seq.len();
    assert!(limit.is_some() || spec.bounds.iter().all(|b| b.is_some()), "unbounded column needs a degree window");
    let mut col = Column { seq: spec.seq.clone(), bounds: spec.bounds.clone(), full: false, rows: BTreeMap::new() };
    if spec.bounds.contains(&Some(0)) {
        col.full = true;
        return col;
    }
    let unit = Mono::idem(&spec.seq);
    let within = |d: i64| limit.is_none_or(|l| d <= l);
    let mut queue: VecDeque<Elem> = spec.generators.iter().map(|g| col.project(g)).collect();
    while let Some(v) = queue.pop_front() {
        let Some(d) = klr.homogeneous_degree(&v) else {
            assert!(v.is_zero(), "closure produced an inhomogeneous vector");
            continue;
        };
        if !within(d) {
            continue;
        }
        let ech = col.rows.entry(d).or_default();
        let r = ech.reduce(v.as_map());
        if r.is_empty() {
            continue;
        }
        ech.insert(r.clone());
        if ech.is_pivot(&unit) {
            col.full = true;
            col.rows.clear();
            return col;
        }
        let r = Elem::from_map(r);
        let left = r.monos().next().expect("nonzero row").left_seq();
        for l in 0..n {
            if within(d + klr.pair(left[l], left[l])) {
                queue.push_back(col.project(&klr.x_left(l, &r)));
            }
        }
        for k in 0..n.saturating_sub(1) {
            if within(d - klr.pair(left[k], left[k + 1])) {
                queue.push_back(col.project(&klr.tau_left(k, &r)));
            }
        }
    }
    col
}

/// A module given column by column.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub n: usize,
    pub columns: Vec<Column>,
    index: BTreeMap<Vec<u8>, usize>,
    /// Pieces of degree at most `top` are exact; `None` means finite.
    pub top: Option<i64>,
    /// Lowest degree any monomial can have.
    pub bottom: i64,
}

impl QuotientModule {
    /// Close every column; runs columns in parallel when enabled.
    pub fn build(klr: &Klr, n: usize, specs: Vec<ColumnSpec>, top: Option<i64>) -> QuotientModule {
        assert!(n <= MAX_N);
        let t = table(n);
        let mut bottom = 0;
        let mut slack = 0;
        for s in &specs {
            for w in 0..t.len() as u16 {
                let c = klr.crossing_degree(&s.seq, w);
                bottom = bottom.min(c);
                slack = slack.max(-c);
            }
        }
        let limit = top.map(|d| d + slack);
        let columns = par::map(&specs, |s| close_column(klr, s, limit));
        let index = columns.iter().enumerate().map(|(k, c)| (c.seq.clone(), k)).collect();
        QuotientModule { n, columns, index, top, bottom }
    }

    pub(crate) fn from_parts(n: usize, columns: Vec<Column>, top: Option<i64>, bottom: i64) -> QuotientModule {
        let index = columns.iter().enumerate().map(|(k, c)| (c.seq.clone(), k)).collect();
        QuotientModule { n, columns, index, top, bottom }
    }

    pub fn column(&self, seq: &[u8]) -> Option<&Column> {
        self.index.get(seq).map(|&k| &self.columns[k])
    }

    /// Normal form: big monomials dropped, then reduced degree by degree.
    /// Monomials in foreign columns are dropped.
    pub fn reduce(&self, klr: &Klr, e: &Elem) -> Elem {
        let mut parts: BTreeMap<(usize, i64), SparseVec<Mono>> = BTreeMap::new();
        for (m, c) in e.iter() {
            let Some(&k) = self.index.get(m.seq()) else { continue };
            let col = &self.columns[k];
            if col.full || !col.is_small(m) {
                continue;
            }
            parts.entry((k, klr.degree(m))).or_default().insert(*m, c.clone());
        }
        let mut out = Elem::zero();
        for ((k, d), v) in parts {
            if let Some(top) = self.top {
                debug_assert!(d <= top, "degree {d} beyond the exact window {top}");
            }
            let r = match self.columns[k].rows.get(&d) {
                Some(ech) => ech.reduce(&v),
                None => v,
            };
            for (m, c) in r {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Quotient basis: small non-pivot monomials, by degree, up to `hi`.
    pub fn basis_upto(&self, klr: &Klr, hi: i64) -> BTreeMap<i64, Vec<Mono>> {
        let t = table(self.n);
        let mut out: BTreeMap<i64, Vec<Mono>> = BTreeMap::new();
        for col in &self.columns {
            if col.full {
                continue;
            }
            let weights: Vec<i64> = col.seq.iter().map(|&i| klr.pair(i, i)).collect();
            for w in 0..t.len() as u16 {
                let base = klr.crossing_degree(&col.seq, w);
                if base > hi {
                    continue;
                }
                for rest in 0..=(hi - base) {
                    let mut a = [0u16; MAX_N];
                    exps_of_weight(&weights, 0, rest, &mut a, &mut |a| {
                        let m = Mono::new(&col.seq, w, &a[..self.n]);
                        if col.is_small(&m) && !col.rows.get(&(base + rest)).is_some_and(|e| e.is_pivot(&m)) {
                            out.entry(base + rest).or_default().push(m);
                        }
                    });
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// Largest degree of a small monomial; only meaningful when every
    /// position is bounded.
    pub fn max_small_degree(&self, klr: &Klr) -> i64 {
        let t = table(self.n);
        let mut hi = self.bottom;
        for col in &self.columns {
            if col.full {
                continue;
            }
            let dots: i64 = col
                .bounds
                .iter()
                .zip(&col.seq)
                .map(|(b, &i)| (b.expect("bounded column").saturating_sub(1)) as i64 * klr.pair(i, i))
                .sum();
            for w in 0..t.len() as u16 {
                hi = hi.max(klr.crossing_degree(&col.seq, w) + dots);
            }
        }
        hi
    }

    pub fn graded_dim(basis: &BTreeMap<i64, Vec<Mono>>) -> LaurentPoly {
        LaurentPoly::from_terms(basis.iter().map(|(d, v)| (*d, v.len() as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_core::CartanDatum;

    #[test]
    fn polynomial_ring_mod_power() {
        // k[x] / (x^2) as a one-strand column, generator x^2 e(1)
        let k = Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap());
        let g = Elem::mono(Mono::new(&[0], 0, &[2]));
        let spec = ColumnSpec { seq: vec![0], bounds: vec![None], generators: vec![g] };
        let m = QuotientModule::build(&k, 1, vec![spec], Some(10));
        let b = m.basis_upto(&k, 10);
        assert_eq!(QuotientModule::graded_dim(&b), LaurentPoly::from_terms([(0, 1), (2, 1)]));
        let x3 = Elem::mono(Mono::new(&[0], 0, &[3]));
        assert!(m.reduce(&k, &x3).is_zero());
    }
}
