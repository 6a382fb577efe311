//! Rewriting multiplication.
//!
//! Everything reduces to three memoized kernels acting on one basis
//! monomial `m = τ_w x^a e(ν)`:
//!
//! * `x_mono(l, m)`: normal form of `x_l · m`,
//! * `tau_mono(k, m)`: normal form of `τ_k · m`,
//! * `factor_left(j, m)`: a pair `(A, B)` with `m = τ_j·A + B` where `B`
//!   has no monomial whose permutation has `j` as a left descent.
//!
//! Each recursion step strictly lowers the crossing count of the monomial
//! being processed, so the mutual recursion terminates.

use std::collections::HashMap;
use std::sync::Arc;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use num_traits::One;
use parking_lot::RwLock;
use thiserror::Error;

use crate::mono::{scalar, Elem, Mono, Scalar};
use crate::perm::{reflect, table, MAX_N};
use crate::poly::Poly;
use crate::qspec::{QSpec, QSpecError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlrError {
    #[error("ambient mismatch: {left} strands times {right} strands")]
    Ambient { left: usize, right: usize },
    #[error("position {pos} out of range for {n} strands")]
    Position { pos: usize, n: usize },
    #[error("{n} strands exceed the supported maximum {max}")]
    TooLong { n: usize, max: usize },
    #[error(transparent)]
    QSpec(#[from] QSpecError),
}

type Memo<V> = RwLock<HashMap<(u8, Mono), V>>;

pub struct Klr {
    datum: CartanDatum,
    qspec: QSpec,
    pair: Vec<Vec<i64>>,
    memo: bool,
    memo_x: Memo<Arc<Elem>>,
    memo_t: Memo<Arc<Elem>>,
    memo_f: Memo<Arc<(Elem, Elem)>>,
}

impl Klr {
    pub fn new(datum: CartanDatum, qspec: QSpec) -> Result<Klr, KlrError> {
        qspec.validate(&datum)?;
        let r = datum.rank();
        let pair = (0..r).map(|i| (0..r).map(|j| datum.pair(i, j)).collect()).collect();
        Ok(Klr {
            datum,
            qspec,
            pair,
            memo: true,
            memo_x: Default::default(),
            memo_t: Default::default(),
            memo_f: Default::default(),
        })
    }

    pub fn standard(datum: CartanDatum) -> Klr {
        let q = QSpec::standard(&datum);
        Klr::new(datum, q).expect("standard Q is valid")
    }

    /// Turn memoization off (results must not change).
    pub fn without_memo(mut self) -> Klr {
        self.memo = false;
        self
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn qspec(&self) -> &QSpec {
        &self.qspec
    }

    pub fn pair(&self, i: u8, j: u8) -> i64 {
        self.pair[i as usize][j as usize]
    }

    pub fn memo_size(&self) -> usize {
        self.memo_x.read().len() + self.memo_t.read().len() + self.memo_f.read().len()
    }

    fn cached<V: Clone>(&self, memo: &Memo<V>, key: (u8, Mono), f: impl FnOnce() -> V) -> V {
        if !self.memo {
            return f();
        }
        if let Some(v) = memo.read().get(&key) {
            return v.clone();
        }
        let v = f();
        memo.write().entry(key).or_insert(v).clone()
    }

    // ---- grading ----

    /// Degree of `τ_w e(ν)` summed over the inversions of `w`.
    pub fn crossing_degree(&self, nu: &[u8], w: u16) -> i64 {
        let info = table(nu.len()).get(w);
        let mut d = 0;
        for p in 0..nu.len() {
            for q in p + 1..nu.len() {
                if info.map[p] > info.map[q] {
                    d -= self.pair(nu[p], nu[q]);
                }
            }
        }
        d
    }

    pub fn degree(&self, m: &Mono) -> i64 {
        let nu = m.seq();
        let mut d = self.crossing_degree(nu, m.w);
        for (p, &e) in m.exps().iter().enumerate() {
            d += e as i64 * self.pair(nu[p], nu[p]);
        }
        d
    }

    /// Common degree of all terms, `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self, e: &Elem) -> Option<i64> {
        let mut it = e.monos().map(|m| self.degree(m));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    // ---- relation polynomials ----

    /// `Q_{ν_k,ν_{k+1}}(x_k, x_{k+1})`.
    pub fn quad(&self, k: usize, nu: &[u8]) -> Poly {
        self.qspec.poly(nu[k] as usize, nu[k + 1] as usize, k, k + 1)
    }

    /// Braid defect on `e(ν)`: `τ_{a+1}τ_aτ_{a+1} − τ_aτ_{a+1}τ_a`.
    pub fn qbar(&self, a: usize, nu: &[u8]) -> Poly {
        let (i, j) = (nu[a] as usize, nu[a + 1] as usize);
        let mut p = Poly::zero();
        if nu[a + 2] as usize != i || i == j {
            return p;
        }
        for (pp, qq, t) in self.qspec.terms(i, j) {
            if *pp == 0 {
                continue;
            }
            let h = Poly::complete(a, a + 2, pp - 1);
            let v = Poly::var_pow(a + 1, *qq);
            p = &p + &(&h * &v).scale(t);
        }
        p
    }

    // ---- kernels ----

    pub fn x_mono(&self, l: usize, m: &Mono) -> Arc<Elem> {
        if m.w == 0 {
            let mut r = *m;
            r.a[l] += 1;
            return Arc::new(Elem::mono(r));
        }
        self.cached(&self.memo_x, (l as u8, *m), || Arc::new(self.x_mono_slow(l, m)))
    }

    fn x_mono_slow(&self, l: usize, m: &Mono) -> Elem {
        let info = table(m.n()).get(m.w);
        let k = info.first as usize;
        let mp = m.with_w(info.left[k]);
        let mut r = self.tau_left(k, &self.x_mono(reflect(l, k), &mp));
        let nu = mp.left_seq();
        if nu[k] == nu[k + 1] {
            if l == k {
                r.add_term(mp, scalar(-1));
            } else if l == k + 1 {
                r.add_term(mp, scalar(1));
            }
        }
        r
    }

    pub fn tau_mono(&self, k: usize, m: &Mono) -> Arc<Elem> {
        let t = table(m.n());
        let info = t.get(m.w);
        if !info.left_descent(k) {
            let u = info.left[k];
            if t.get(u).first as usize == k {
                return Arc::new(Elem::mono(m.with_w(u)));
            }
        }
        self.cached(&self.memo_t, (k as u8, *m), || Arc::new(self.tau_mono_slow(k, m)))
    }

    fn tau_mono_slow(&self, k: usize, m: &Mono) -> Elem {
        let t = table(m.n());
        let info = t.get(m.w);
        if info.left_descent(k) {
            // τ_k τ_k A = Q(x_k, x_{k+1}) A
            let f = self.factor_left(k, m);
            let mut r = Elem::zero();
            for (mm, c) in f.0.iter() {
                let q = self.quad(k, &mm.left_seq());
                r.add_scaled(&self.poly_left(&q, &Elem::mono(*mm)), c);
            }
            r += &self.tau_left(k, &f.1);
            return r;
        }
        let j = t.get(info.left[k]).first as usize;
        let f = self.factor_left(j, m);
        if k > j + 1 {
            let mut r = self.tau_left(j, &self.tau_left(k, &f.0));
            r += &self.tau_left(k, &f.1);
            r
        } else {
            let (a2, b2) = self.factor_left_elem(k, &f.0);
            let mut r = self.tau_left(j, &self.tau_left(k, &self.tau_left(j, &a2)));
            r += &self.braid_defect(j, &a2);
            r += &self.tau_left(k, &self.tau_left(j, &b2));
            r += &self.tau_left(k, &f.1);
            r
        }
    }

    pub fn factor_left(&self, j: usize, m: &Mono) -> Arc<(Elem, Elem)> {
        let info = table(m.n()).get(m.w);
        if !info.left_descent(j) {
            return Arc::new((Elem::zero(), Elem::mono(*m)));
        }
        if info.first as usize == j {
            return Arc::new((Elem::mono(m.with_w(info.left[j])), Elem::zero()));
        }
        self.cached(&self.memo_f, (j as u8, *m), || Arc::new(self.factor_left_slow(j, m)))
    }

    fn factor_left_slow(&self, j: usize, m: &Mono) -> (Elem, Elem) {
        let info = table(m.n()).get(m.w);
        let c0 = info.first as usize;
        let mp = m.with_w(info.left[c0]);
        let f1 = self.factor_left(j, &mp);
        if j > c0 + 1 {
            return (self.tau_left(c0, &f1.0), self.tau_left(c0, &f1.1));
        }
        let (a2, b2) = self.factor_left_elem(c0, &f1.0);
        let a = self.tau_left(c0, &self.tau_left(j, &a2));
        let mut b = -self.braid_defect(c0, &a2);
        b += &self.tau_left(c0, &self.tau_left(j, &b2));
        b += &self.tau_left(c0, &f1.1);
        (a, b)
    }

    fn braid_defect(&self, a: usize, e: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (m, c) in e.iter() {
            let q = self.qbar(a, &m.left_seq());
            if !q.is_zero() {
                r.add_scaled(&self.poly_left(&q, &Elem::mono(*m)), c);
            }
        }
        r
    }

    // ---- left actions on elements ----

    pub fn x_left(&self, l: usize, e: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (m, c) in e.iter() {
            if m.w == 0 {
                let mut b = *m;
                b.a[l] += 1;
                r.add_term(b, c.clone());
            } else {
                r.add_scaled(&self.x_mono(l, m), c);
            }
        }
        r
    }

    pub fn tau_left(&self, k: usize, e: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (m, c) in e.iter() {
            r.add_scaled(&self.tau_mono(k, m), c);
        }
        r
    }

    pub fn factor_left_elem(&self, j: usize, e: &Elem) -> (Elem, Elem) {
        let (mut a, mut b) = (Elem::zero(), Elem::zero());
        for (m, c) in e.iter() {
            let f = self.factor_left(j, m);
            a.add_scaled(&f.0, c);
            b.add_scaled(&f.1, c);
        }
        (a, b)
    }

    /// `p(x) · e` for a polynomial in the dots.
    pub fn poly_left(&self, p: &Poly, e: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (ex, c) in p.terms() {
            let mut cur = e.clone();
            for (l, &k) in ex.iter().enumerate() {
                for _ in 0..k {
                    cur = self.x_left(l, &cur);
                }
            }
            r.add_scaled(&cur, c);
        }
        r
    }

    /// Apply `τ_{word[0]}` first, then `τ_{word[1]}`, and so on, on the left.
    pub fn word_left(&self, word: &[u8], e: &Elem) -> Elem {
        let mut r = e.clone();
        for &k in word {
            r = self.tau_left(k as usize, &r);
        }
        r
    }

    // ---- products ----

    pub fn mul_mono(&self, m1: &Mono, m2: &Mono) -> Elem {
        assert_eq!(m1.n, m2.n, "ambient mismatch");
        if m1.seq() != &m2.left_seq()[..m2.n()] {
            return Elem::zero();
        }
        let mut r = Elem::mono(*m2);
        for (l, &k) in m1.exps().iter().enumerate() {
            for _ in 0..k {
                r = self.x_left(l, &r);
            }
        }
        for &k in m1.word().iter().rev() {
            r = self.tau_left(k as usize, &r);
        }
        r
    }

    /// Product without ambient checks.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                r.add_scaled(&self.mul_mono(m1, m2), &(c1 * c2));
            }
        }
        r
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Result<Elem, KlrError> {
        if let (Some(l), Some(r)) = (a.ambient(), b.ambient()) {
            if l != r {
                return Err(KlrError::Ambient { left: l, right: r });
            }
        }
        Ok(self.mul(a, b))
    }

    /// The anti-involution fixing all generators.
    pub fn psi(&self, e: &Elem) -> Elem {
        let mut r = Elem::zero();
        for (m, c) in e.iter() {
            let start = Elem::mono(Mono::idem(&m.left_seq()[..m.n()]));
            let mut cur = self.word_left(m.word(), &start);
            for (l, &k) in m.exps().iter().enumerate() {
                for _ in 0..k {
                    cur = self.x_left(l, &cur);
                }
            }
            r.add_scaled(&cur, c);
        }
        r
    }

    // ---- named elements ----

    pub fn idempotents(&self, seqs: &[Vec<u8>]) -> Elem {
        seqs.iter().map(|s| (Mono::idem(s), Scalar::one())).collect()
    }

    /// `x_l Σ e(ν)` (0-based `l`).
    pub fn x_gen(&self, l: usize, seqs: &[Vec<u8>]) -> Elem {
        seqs.iter()
            .map(|s| {
                let mut m = Mono::idem(s);
                m.a[l] = 1;
                (m, Scalar::one())
            })
            .collect()
    }

    /// `τ_k Σ e(ν)` (0-based `k`).
    pub fn tau_gen(&self, k: usize, seqs: &[Vec<u8>]) -> Elem {
        let mut r = Elem::zero();
        for s in seqs {
            r.add_scaled(&self.tau_mono(k, &Mono::idem(s)), &Scalar::one());
        }
        r
    }

    /// Intertwiner at 0-based position `a`, summed over `seqs`.
    pub fn intertwiner(&self, a: usize, seqs: &[Vec<u8>]) -> Result<Elem, KlrError> {
        let mut r = Elem::zero();
        for s in seqs {
            let n = s.len();
            if a + 1 >= n {
                return Err(KlrError::Position { pos: a + 1, n });
            }
            let e = Elem::mono(Mono::idem(s));
            let t = self.tau_mono(a, &Mono::idem(s));
            if s[a] != s[a + 1] {
                r += &t;
            } else {
                let d = &Poly::var(a + 1) - &Poly::var(a);
                r += &self.poly_left(&d, &e);
                r -= &self.poly_left(&d.pow(2), &t);
            }
        }
        Ok(r)
    }

    /// `Σ_ν x_k^{<h_{ν_k},Λ>} e(ν)` (0-based `k`).
    pub fn cyc_poly(&self, lambda: &DominantWeight, seqs: &[Vec<u8>], k: usize) -> Result<Elem, KlrError> {
        let mut r = Elem::zero();
        for s in seqs {
            if k >= s.len() {
                return Err(KlrError::Position { pos: k + 1, n: s.len() });
            }
            let mut m = Mono::idem(s);
            m.a[k] = lambda.level(s[k] as usize) as u16;
            r.add_term(m, Scalar::one());
        }
        Ok(r)
    }

    // ---- enumeration ----

    /// Monomials `τ_w x^a e(ν)` with `ν ∈ I^β` of degree `d`, in basis order.
    pub fn basis_monomials(&self, beta: &RootCombo, d: i64) -> Vec<Mono> {
        let n = beta.height();
        assert!(n <= MAX_N, "height {n} exceeds MAX_N");
        let t = table(n);
        let mut out = vec![];
        for nu in beta.sequences() {
            let weights: Vec<i64> = nu.iter().map(|&i| self.pair(i, i)).collect();
            for w in 0..t.len() as u16 {
                let rest = d - self.crossing_degree(&nu, w);
                if rest < 0 {
                    continue;
                }
                let mut a = [0u16; MAX_N];
                exps_of_weight(&weights, 0, rest, &mut a, &mut |a| out.push(Mono::new(&nu, w, &a[..n])));
            }
        }
        out.sort();
        out
    }
}

/// Every exponent vector with `Σ a_p weights[p] = rest`, lexicographic.
pub fn exps_of_weight(weights: &[i64], p: usize, rest: i64, a: &mut [u16; MAX_N], f: &mut impl FnMut(&[u16; MAX_N])) {
    if p == weights.len() {
        if rest == 0 {
            f(a);
        }
        return;
    }
    let mut e = 0;
    while e as i64 * weights[p] <= rest {
        a[p] = e;
        exps_of_weight(weights, p + 1, rest - e as i64 * weights[p], a, f);
        e += 1;
    }
    a[p] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Klr {
        Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap())
    }

    fn a2() -> Klr {
        Klr::standard(CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap())
    }

    fn m(nu: &[u8], word: &[u8], a: &[u16]) -> Mono {
        Mono::from_word(nu, word, a)
    }

    #[test]
    fn degrees() {
        let k = a1();
        assert_eq!(k.degree(&m(&[0], &[], &[1])), 2);
        assert_eq!(k.degree(&m(&[0, 0], &[0], &[0, 0])), -2);
        let k2 = a2();
        assert_eq!(k2.degree(&m(&[0, 1], &[0], &[0, 0])), 1);
    }

    #[test]
    fn quadratic_relation_equal_residues() {
        let k = a1();
        let t = Elem::mono(m(&[0, 0], &[0], &[0, 0]));
        assert!(k.mul(&t, &t).is_zero());
    }

    #[test]
    fn crossing_past_dot() {
        let k = a1();
        let t = Elem::mono(m(&[0, 0], &[0], &[0, 0]));
        let x1 = Elem::mono(m(&[0, 0], &[], &[1, 0]));
        let x2 = Elem::mono(m(&[0, 0], &[], &[0, 1]));
        let e = Elem::mono(Mono::idem(&[0, 0]));
        let lhs = k.mul(&t, &x1);
        let rhs = &k.mul(&x2, &t) - &e;
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Elem::mono(m(&[0, 0], &[0], &[1, 0])));
    }

    #[test]
    fn mixed_square_lands_on_left_idempotent() {
        let k = a2();
        let a = Elem::mono(m(&[0, 1], &[0], &[0, 0]));
        let b = Elem::mono(m(&[1, 0], &[0], &[0, 0]));
        let got = k.mul(&a, &b);
        let want = Elem::mono(m(&[1, 0], &[], &[1, 0])) + Elem::mono(m(&[1, 0], &[], &[0, 1]));
        assert_eq!(got, want);
    }

    #[test]
    fn psi_example() {
        let k = a1();
        let e = Elem::mono(m(&[0, 0], &[0], &[0, 1]));
        let want = Elem::mono(m(&[0, 0], &[0], &[1, 0])) + Elem::mono(Mono::idem(&[0, 0]));
        assert_eq!(k.psi(&e), want);
        assert_eq!(k.psi(&want), e);
    }

    #[test]
    fn intertwiner_a1() {
        let k = a1();
        let g = k.intertwiner(0, &[vec![0, 0]]).unwrap();
        let want = Elem::mono(m(&[0, 0], &[], &[0, 1])) - Elem::mono(m(&[0, 0], &[], &[1, 0]));
        let d = &Poly::var(1) - &Poly::var(0);
        let want = &want - &k.poly_left(&d.pow(2), &Elem::mono(m(&[0, 0], &[0], &[0, 0])));
        assert_eq!(g, want);
        assert!(k.intertwiner(1, &[vec![0, 0]]).is_err());
    }

    #[test]
    fn basis_examples() {
        let k = a1();
        let b = RootCombo::new(vec![2]).unwrap();
        assert_eq!(k.basis_monomials(&b, -2), vec![m(&[0, 0], &[0], &[0, 0])]);
        assert!(k.basis_monomials(&RootCombo::new(vec![1]).unwrap(), 1).is_empty());
        assert_eq!(k.basis_monomials(&RootCombo::new(vec![1]).unwrap(), 0), vec![Mono::idem(&[0])]);
    }

    #[test]
    fn cyc_poly_levels() {
        let k = a1();
        let lam = DominantWeight::new(vec![2]).unwrap();
        let c = k.cyc_poly(&lam, &[vec![0]], 0).unwrap();
        assert_eq!(c, Elem::mono(m(&[0], &[], &[2])));
    }
}
