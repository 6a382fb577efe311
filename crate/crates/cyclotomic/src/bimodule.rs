//! The kernels `K₀`, `K₁`, `F^Λ` of `F_i`, `F̄_i`, `F_i^Λ` applied to
//! `R^Λ(β)`, and the maps `P: K₁ → K₀`, `π: K₀ → F^Λ`, `Q: K₀ → K₁`.
//!
//! `K₀` and `K₁` are infinite dimensional; they are computed exactly
//! through a degree window.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use klr_engine::{Echelon, Elem, Klr, Mono, Poly};

use crate::algebra::{short_generators, CycAlgebra};
use crate::bounds::column_bounds;
use crate::module::{ColumnSpec, QuotientModule};
use crate::CycError;

/// Which pieces to materialize.
#[derive(Clone, Copy, Debug)]
pub struct Parts {
    pub k1: bool,
    pub f: bool,
}

impl Parts {
    pub const ALL: Parts = Parts { k1: true, f: true };
    pub const K0: Parts = Parts { k1: false, f: false };
}

pub struct Kernels {
    klr: Arc<Klr>,
    pub lambda: DominantWeight,
    pub beta: RootCombo,
    pub i: usize,
    /// Exact window of `K₀`.
    pub window: i64,
    /// Exact window of `K₁`, widened so that `P` lands inside `K₀`'s.
    pub window1: i64,
    /// Degree of `P`, `(α_i | 2Λ - β)`.
    pub shift: i64,
    /// Degree of `Q`.
    pub shift_q: i64,
    pub k0: QuotientModule,
    pub k1: Option<QuotientModule>,
    pub f: Option<Arc<CycAlgebra>>,
    z: BTreeMap<Vec<u8>, Elem>,
    y: BTreeMap<Vec<u8>, Elem>,
}

/// Degree window used when none is given: `D_max(β+α_i) + 2 max (α_j|α_j)`.
pub fn default_window(klr: &Klr, lambda: &DominantWeight, beta: &RootCombo, i: usize) -> i64 {
    let d = klr.datum();
    let top = (0..d.rank()).map(|j| d.pair(j, j)).max().unwrap_or(0);
    crate::bounds::degree_cap(klr, lambda, &beta.plus(i)).1 + 2 * top
}

/// Degree of `P`: `(α_i | 2Λ - β)`.
pub fn p_shift(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo, i: usize) -> i64 {
    2 * datum.d(i) * lambda.level(i) - datum.sym_form(&datum.simple_root(i), beta)
}

fn with_last(mu: &[u8], i: u8) -> Vec<u8> {
    let mut s = mu.to_vec();
    s.push(i);
    s
}

fn with_first(mu: &[u8], i: u8) -> Vec<u8> {
    let mut s = vec![i];
    s.extend_from_slice(mu);
    s
}

impl Kernels {
    pub fn build(klr: Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, i: usize, window: Option<i64>, parts: Parts) -> Result<Kernels, CycError> {
        let datum = klr.datum().clone();
        if beta.coeffs().len() != datum.rank() || lambda.levels().len() != datum.rank() || i >= datum.rank() {
            return Err(CycError::Rank);
        }
        let n = beta.height();
        if n + 1 > klr_engine::MAX_N {
            return Err(CycError::TooLong(n + 1));
        }
        let ii = i as u8;
        let window = window.unwrap_or_else(|| default_window(&klr, lambda, beta, i));
        let window1 = window - p_shift(&datum, lambda, beta, i).min(0);

        let f = if parts.f {
            let f = Arc::new(CycAlgebra::build(klr.clone(), lambda, &beta.plus(i))?);
            let top = f.block(|_| true, |r| r.last() == Some(&ii)).keys().next_back().copied();
            if let Some(top) = top {
                if top > window {
                    return Err(CycError::Window { window, needed: top });
                }
            }
            Some(f)
        } else {
            None
        };

        let seqs = beta.sequences();
        let k0_specs = seqs
            .iter()
            .map(|mu| {
                let seq = with_last(mu, ii);
                let mut bounds: Vec<Option<u64>> = column_bounds(&datum, lambda, mu).into_iter().map(Some).collect();
                bounds.push(None);
                let mut generators = short_generators(&klr, lambda, &seq, 0);
                generators.truncate(n);
                ColumnSpec { seq, bounds, generators }
            })
            .collect();
        let k0 = QuotientModule::build(&klr, n + 1, k0_specs, Some(window));
        let k1 = parts.k1.then(|| {
            let specs = seqs
                .iter()
                .map(|mu| {
                    let seq = with_first(mu, ii);
                    let mut bounds = vec![None];
                    bounds.extend(column_bounds(&datum, lambda, mu).into_iter().map(Some));
                    let generators = short_generators(&klr, lambda, &seq, 1);
                    ColumnSpec { seq, bounds, generators }
                })
                .collect();
            QuotientModule::build(&klr, n + 1, specs, Some(window1))
        });

        Kernels::assemble(klr, lambda, beta, i, window, k0, k1, f)
    }

    /// Attach the per-column elements `z_μ`, `y_μ` to built modules.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(klr: Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, i: usize, window: i64, k0: QuotientModule, k1: Option<QuotientModule>, f: Option<Arc<CycAlgebra>>) -> Result<Kernels, CycError> {
        let datum = klr.datum().clone();
        let (n, ii) = (beta.height(), i as u8);
        let shift = p_shift(&datum, lambda, beta, i);
        let shift_q = -datum.sym_form(&datum.simple_root(i), beta) + 4 * datum.d(i) * beta.coeff(i);
        let window1 = window - shift.min(0);
        let seqs = beta.sequences();
        let all: Vec<Vec<u8>> = beta.plus(i).sequences();
        let mut z = BTreeMap::new();
        let mut y = BTreeMap::new();
        let up: Vec<u8> = (0..n as u8).rev().collect();
        let gs: Vec<Elem> = (0..n).map(|a| klr.intertwiner(a, &all).expect("position in range")).collect();
        for mu in &seqs {
            let t = klr.word_left(&up, &Elem::mono(Mono::idem(&with_last(mu, ii))));
            let zz = klr.poly_left(&Poly::var_pow(0, lambda.level(i) as u16), &t);
            z.insert(mu.clone(), zz);
            let mut yy = Elem::mono(Mono::idem(&with_first(mu, ii)));
            for g in &gs {
                yy = klr.mul(g, &yy);
            }
            y.insert(mu.clone(), yy);
        }
        Ok(Kernels { klr, lambda: lambda.clone(), beta: beta.clone(), i, window, window1, shift, shift_q, k0, k1, f, z, y })
    }

    pub fn klr(&self) -> &Arc<Klr> {
        &self.klr
    }

    fn k1m(&self) -> &QuotientModule {
        self.k1.as_ref().expect("K1 was not built")
    }

    pub fn fm(&self) -> &CycAlgebra {
        self.f.as_ref().expect("F was not built")
    }

    pub fn reduce_k0(&self, e: &Elem) -> Elem {
        self.k0.reduce(&self.klr, e)
    }

    pub fn reduce_k1(&self, e: &Elem) -> Elem {
        self.k1m().reduce(&self.klr, e)
    }

    pub fn k0_basis(&self) -> BTreeMap<i64, Vec<Mono>> {
        self.k0.basis_upto(&self.klr, self.window)
    }

    pub fn k1_basis(&self) -> BTreeMap<i64, Vec<Mono>> {
        self.k1m().basis_upto(&self.klr, self.window1)
    }

    /// Basis of `F^Λ = R^Λ(β+α_i) e(β, i)`.
    pub fn f_basis(&self) -> BTreeMap<i64, Vec<Mono>> {
        let ii = self.i as u8;
        self.fm().block(|_| true, |r| r.last() == Some(&ii))
    }

    /// `x_1^Λ τ_1⋯τ_n e(μ, i)`.
    pub fn z(&self, mu: &[u8]) -> &Elem {
        &self.z[mu]
    }

    /// `g_n⋯g_1 e(i, μ)`.
    pub fn y(&self, mu: &[u8]) -> &Elem {
        &self.y[mu]
    }

    /// Right multiplication by a per-column element, `col` picking the
    /// column key from the right residue sequence.
    fn right_mult(&self, v: &Elem, elem: impl Fn(&[u8]) -> Elem) -> Elem {
        let mut by_col: BTreeMap<Vec<u8>, Elem> = BTreeMap::new();
        for (m, c) in v.iter() {
            by_col.entry(m.seq().to_vec()).or_default().add_term(*m, c.clone());
        }
        let mut out = Elem::zero();
        for (seq, part) in by_col {
            out += &self.klr.mul(&part, &elem(&seq));
        }
        out
    }

    pub fn p(&self, v: &Elem) -> Elem {
        self.reduce_k0(&self.right_mult(v, |s| self.z[&s[1..]].clone()))
    }

    pub fn pi(&self, v: &Elem) -> Elem {
        self.fm().reduce(v)
    }

    pub fn q(&self, v: &Elem) -> Elem {
        let n = self.beta.height();
        self.reduce_k1(&self.right_mult(v, |s| self.y[&s[..n]].clone()))
    }

    /// `A_μ e(i, μ) = x_1^Λ Π_{μ_a ≠ i} Q_{i,μ_a}(x_1, x_{a+1}) e(i, μ)`.
    pub fn a_elem(&self, mu: &[u8]) -> Elem {
        let i = self.i;
        let mut f = Poly::var_pow(0, self.lambda.level(i) as u16);
        for (a, &j) in mu.iter().enumerate() {
            if j as usize != i {
                f = &f * &self.klr.qspec().poly(i, j as usize, 0, a + 1);
            }
        }
        self.klr.poly_left(&f, &Elem::mono(Mono::idem(&with_first(mu, i as u8))))
    }

    /// `B_μ = x_{n+1}^Λ Π_{μ_a ≠ i} Q_{μ_a,i}(x_a, x_{n+1}) e(μ, i)`.
    pub fn b_elem(&self, mu: &[u8]) -> Elem {
        let (i, n) = (self.i, mu.len());
        let mut f = Poly::var_pow(n, self.lambda.level(i) as u16);
        for (a, &j) in mu.iter().enumerate() {
            if j as usize != i {
                f = &f * &self.klr.qspec().poly(j as usize, i, a, n);
            }
        }
        self.klr.poly_left(&f, &Elem::mono(Mono::idem(&with_last(mu, i as u8))))
    }

    /// `Π_{μ_a = i} (x_1 - x_{a+1})² e(i, μ)`, the monic element acting on `K₁`.
    pub fn s_elem(&self, mu: &[u8]) -> Elem {
        let mut f = Poly::one();
        for (a, &j) in mu.iter().enumerate() {
            if j as usize == self.i {
                let d = &Poly::var(0) - &Poly::var(a + 1);
                f = &f * &d.pow(2);
            }
        }
        self.klr.poly_left(&f, &Elem::mono(Mono::idem(&with_first(mu, self.i as u8))))
    }

    /// `x_1^Λ τ_1⋯τ_n g_n⋯g_1 e(i, μ) - A_μ e(i, μ)` reduced in `K₁`.
    pub fn taug_residue(&self, mu: &[u8]) -> Result<Elem, CycError> {
        let prod = self.klr.mul(&self.z[mu], &self.y[mu]);
        let diff = &prod - &self.a_elem(mu);
        if let Some(d) = self.klr.homogeneous_degree(&diff) {
            if d > self.window1 {
                return Err(CycError::Window { window: self.window1, needed: d });
            }
        }
        Ok(self.reduce_k1(&diff))
    }

    /// Exactness data in every degree of the window.
    pub fn exactness(&self) -> Vec<ExactRow> {
        let b0 = self.k0_basis();
        let b1 = self.k1_basis();
        let bf = self.f_basis();
        let degrees: Vec<i64> = (self.k0.bottom.min(self.k1m().bottom + self.shift)..=self.window).collect();
        klr_engine::par::map(&degrees, |&d| {
            let src = b1.get(&(d - self.shift)).cloned().unwrap_or_default();
            let mid = b0.get(&d).cloned().unwrap_or_default();
            let f = bf.get(&d).map_or(0, |v| v.len());
            let mut ep = Echelon::new();
            let mut composite_zero = true;
            for m in &src {
                let img = self.p(&Elem::mono(*m));
                if !self.pi(&img).is_zero() {
                    composite_zero = false;
                }
                ep.insert(img.into_map());
            }
            let mut epi = Echelon::new();
            for m in &mid {
                epi.insert(self.pi(&Elem::mono(*m)).into_map());
            }
            ExactRow { degree: d, k0: mid.len(), k1: src.len(), f, rank_p: ep.rank(), rank_pi: epi.rank(), composite_zero }
        })
    }

    /// Number of degrees compared, and those where `Q∘P` differs from right
    /// multiplication by `A` with the first offending source monomial.
    pub fn qp_defects(&self) -> (usize, Vec<(i64, String)>) {
        let b1 = self.k1_basis();
        let labels = self.klr.datum().labels().to_vec();
        let (mut out, mut seen) = (vec![], 0);
        for (d, ms) in &b1 {
            if d + self.shift > self.window || d + self.shift + self.shift_q > self.window1 {
                continue;
            }
            seen += 1;
            for m in ms {
                let v = Elem::mono(*m);
                let lhs = self.q(&self.p(&v));
                let rhs = self.reduce_k1(&self.right_mult(&v, |s| self.a_elem(&s[1..])));
                if lhs != rhs {
                    out.push((*d, m.render(&labels)));
                    break;
                }
            }
        }
        (seen, out)
    }

    /// As [`Kernels::qp_defects`] for `P∘Q` against `B`.
    pub fn pq_defects(&self) -> (usize, Vec<(i64, String)>) {
        let b0 = self.k0_basis();
        let n = self.beta.height();
        let labels = self.klr.datum().labels().to_vec();
        let (mut out, mut seen) = (vec![], 0);
        for (d, ms) in &b0 {
            if d + self.shift_q > self.window1 || d + self.shift_q + self.shift > self.window {
                continue;
            }
            seen += 1;
            for m in ms {
                let v = Elem::mono(*m);
                let lhs = self.p(&self.q(&v));
                let rhs = self.reduce_k0(&self.right_mult(&v, |s| self.b_elem(&s[..n])));
                if lhs != rhs {
                    out.push((*d, m.render(&labels)));
                    break;
                }
            }
        }
        (seen, out)
    }

    /// `(degree, dim K₁_d, rank of right multiplication by S)` wherever
    /// the target degree is inside the window.
    pub fn s_injectivity(&self) -> Vec<(i64, usize, usize)> {
        let b1 = self.k1_basis();
        let step = 4 * self.klr.datum().d(self.i) * self.beta.coeff(self.i);
        let mut out = vec![];
        for (d, ms) in &b1 {
            if d + step > self.window1 {
                continue;
            }
            let mut e = Echelon::new();
            for m in ms {
                let img = self.reduce_k1(&self.right_mult(&Elem::mono(*m), |s| self.s_elem(&s[1..])));
                e.insert(img.into_map());
            }
            out.push((*d, ms.len(), e.rank()));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRow {
    pub degree: i64,
    pub k0: usize,
    pub k1: usize,
    pub f: usize,
    pub rank_p: usize,
    pub rank_pi: usize,
    pub composite_zero: bool,
}

impl ExactRow {
    pub fn holds(&self) -> bool {
        self.rank_p == self.k1 && self.rank_pi == self.f && self.composite_zero && self.rank_p + self.f == self.k0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Arc<Klr> {
        Arc::new(Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap()))
    }

    #[test]
    fn empty_beta_is_polynomial_ring() {
        for m in 1..=3 {
            let l = DominantWeight::new(vec![m]).unwrap();
            let k = Kernels::build(a1(), &l, &RootCombo::zero(1), 0, Some(10), Parts::ALL).unwrap();
            assert_eq!(k.shift, 2 * m);
            let b0 = k.k0_basis();
            assert_eq!(b0.len(), 6);
            assert!(k.exactness().iter().all(|r| r.holds()));
            assert_eq!(k.f_basis().values().map(|v| v.len()).sum::<usize>(), m as usize);
        }
    }

    #[test]
    fn a1_level_one_single_strand() {
        let l = DominantWeight::new(vec![1]).unwrap();
        let b = RootCombo::new(vec![1]).unwrap();
        let k = Kernels::build(a1(), &l, &b, 0, None, Parts::ALL).unwrap();
        assert!(k.f_basis().is_empty());
        for r in k.exactness() {
            assert!(r.holds(), "{r:?}");
        }
        assert!(k.qp_defects().1.is_empty());
        assert!(k.pq_defects().1.is_empty());
        assert!(k.taug_residue(&[0]).unwrap().is_zero());
    }
}
