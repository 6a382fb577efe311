//! Degreewise coequalizers `M ⊗_A N` where `A` is `R(δ)` or a quotient
//! of it, and `M`, `N` are spaces of KLR monomials (free or cyclotomic)
//! on which `A` acts through a block of strands.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::RootCombo;
use klr_engine::{axpy, scalar, Echelon, Elem, Klr, Mono, SparseVec};

use crate::algebra::CycAlgebra;
use crate::bounds::min_crossing_degree;

/// Generator `x_l e(γ)` or `τ_k e(γ)` of the base algebra.
#[derive(Clone, Debug)]
pub struct BaseGen {
    pub crossing: bool,
    pub pos: usize,
    /// Right idempotent `γ`.
    pub right: Vec<u8>,
    /// Left idempotent: `γ` or `s_k γ`.
    pub left: Vec<u8>,
    pub degree: i64,
}

pub fn base_generators(klr: &Klr, delta: &RootCombo) -> Vec<BaseGen> {
    let len = delta.height();
    let mut out = vec![];
    for g in delta.sequences() {
        for l in 0..len {
            out.push(BaseGen { crossing: false, pos: l, right: g.clone(), left: g.clone(), degree: klr.pair(g[l], g[l]) });
        }
        for k in 0..len.saturating_sub(1) {
            let mut left = g.clone();
            left.swap(k, k + 1);
            out.push(BaseGen { crossing: true, pos: k, right: g.clone(), left, degree: -klr.pair(g[k], g[k + 1]) });
        }
    }
    out
}

#[derive(Clone)]
pub enum Space {
    /// `R(β)`, all of it.
    Free(RootCombo),
    /// A cyclotomic quotient.
    Cyc(Arc<CycAlgebra>),
}

/// Which side the base algebra acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Right,
    Left,
}

/// A space of monomials with the base algebra acting on strands
/// `offset..offset + len`; `fixed` pins residues of the acted-on
/// idempotent outside that block.
#[derive(Clone)]
pub struct Side {
    pub klr: Arc<Klr>,
    pub space: Space,
    pub action: Action,
    pub offset: usize,
    pub len: usize,
    pub fixed: Vec<(usize, u8)>,
}

impl Side {
    fn acted_seq(&self, m: &Mono) -> Vec<u8> {
        match self.action {
            Action::Right => m.seq().to_vec(),
            Action::Left => m.left_seq()[..m.n()].to_vec(),
        }
    }

    fn admits(&self, m: &Mono) -> bool {
        let s = self.acted_seq(m);
        self.fixed.iter().all(|&(p, r)| s[p] == r)
    }

    pub fn tag(&self, m: &Mono) -> Vec<u8> {
        self.acted_seq(m)[self.offset..self.offset + self.len].to_vec()
    }

    pub fn min_degree(&self) -> i64 {
        match &self.space {
            Space::Free(b) => min_crossing_degree(&self.klr, b),
            Space::Cyc(a) => a.basis().keys().next().copied().unwrap_or(0),
        }
    }

    pub fn basis(&self, d: i64) -> Vec<Mono> {
        let all = match &self.space {
            Space::Free(b) => self.klr.basis_monomials(b, d),
            Space::Cyc(a) => a.basis().get(&d).cloned().unwrap_or_default(),
        };
        all.into_iter().filter(|m| self.admits(m)).collect()
    }

    /// `m·g` or `g·m`, in normal form.
    pub fn act(&self, m: &Mono, g: &BaseGen) -> Elem {
        let p = self.offset + g.pos;
        let e = Elem::mono(*m);
        let out = match self.action {
            Action::Left => {
                if g.crossing {
                    self.klr.tau_left(p, &e)
                } else {
                    self.klr.x_left(p, &e)
                }
            }
            Action::Right => {
                let mut r = m.seq().to_vec();
                let gen = if g.crossing {
                    r.swap(p, p + 1);
                    Mono::from_word(&r, &[p as u8], &vec![0; r.len()])
                } else {
                    let mut a = vec![0u16; r.len()];
                    a[p] = 1;
                    Mono::from_word(&r, &[], &a)
                };
                self.klr.mul(&e, &Elem::mono(gen))
            }
        };
        match &self.space {
            Space::Free(_) => out,
            Space::Cyc(a) => a.reduce(&out),
        }
    }
}

type Bases = BTreeMap<i64, Vec<Mono>>;

fn bases(side: &Side, lo: i64, hi: i64) -> Bases {
    (lo..=hi).map(|d| (d, side.basis(d))).filter(|(_, v)| !v.is_empty()).collect()
}

/// Dimensions of `(M ⊗_A N)_d` for `d` in `lo..=hi`.
pub fn tensor_over(m: &Side, n: &Side, gens: &[BaseGen], lo: i64, hi: i64) -> BTreeMap<i64, usize> {
    let (m0, n0) = (m.min_degree(), n.min_degree());
    let gmin = gens.iter().map(|g| g.degree).min().unwrap_or(0).min(0);
    let bm = bases(m, m0, hi - n0 - gmin);
    let bn = bases(n, n0, hi - m0 - gmin);
    let degrees: Vec<i64> = (lo..=hi).collect();
    let dims = klr_engine::par::map(&degrees, |&d| degree_piece(m, n, gens, &bm, &bn, d));
    degrees.into_iter().zip(dims).filter(|(_, k)| *k > 0).collect()
}

fn degree_piece(m: &Side, n: &Side, gens: &[BaseGen], bm: &Bases, bn: &Bases, d: i64) -> usize {
    let mut by_tag: BTreeMap<Vec<u8>, (Vec<&Mono>, Vec<&Mono>)> = BTreeMap::new();
    let mut pairs = 0;
    for (dm, ms) in bm {
        let Some(ns) = bn.get(&(d - dm)) else { continue };
        by_tag.clear();
        for a in ms {
            by_tag.entry(m.tag(a)).or_default().0.push(a);
        }
        for b in ns {
            by_tag.entry(n.tag(b)).or_default().1.push(b);
        }
        pairs += by_tag.values().map(|(x, y)| x.len() * y.len()).sum::<usize>();
    }
    if pairs == 0 {
        return 0;
    }
    let mut ech: Echelon<(Mono, Mono)> = Echelon::new();
    for g in gens {
        for (dm, ms) in bm {
            let Some(ns) = bn.get(&(d - dm - g.degree)) else { continue };
            let ms: Vec<&Mono> = ms.iter().filter(|a| m.tag(a) == g.left).collect();
            if ms.is_empty() {
                continue;
            }
            let ns: Vec<&Mono> = ns.iter().filter(|b| n.tag(b) == g.right).collect();
            for a in &ms {
                let ag = m.act(a, g);
                for b in &ns {
                    let gb = n.act(b, g);
                    let mut v: SparseVec<(Mono, Mono)> = ag.iter().map(|(x, c)| ((*x, **b), c.clone())).collect();
                    let right: SparseVec<(Mono, Mono)> = gb.iter().map(|(y, c)| ((**a, *y), c.clone())).collect();
                    axpy(&mut v, &scalar(-1), &right);
                    ech.insert(v);
                }
            }
        }
    }
    pairs - ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_core::{CartanDatum, DominantWeight};

    fn klr(c: Vec<Vec<i64>>) -> Arc<Klr> {
        Arc::new(Klr::standard(CartanDatum::build(c).unwrap()))
    }

    #[test]
    fn over_the_ground_field() {
        let k = klr(vec![vec![2]]);
        let a = Arc::new(CycAlgebra::build(k.clone(), &DominantWeight::new(vec![2]).unwrap(), &RootCombo::new(vec![1]).unwrap()).unwrap());
        let side = |action| Side { klr: k.clone(), space: Space::Cyc(a.clone()), action, offset: 0, len: 0, fixed: vec![] };
        let dims = tensor_over(&side(Action::Right), &side(Action::Left), &[], -5, 10);
        // (1 + q²)²
        assert_eq!(dims, BTreeMap::from([(0, 1), (2, 2), (4, 1)]));
    }

    #[test]
    fn algebra_over_itself() {
        let k = klr(vec![vec![2, -1], vec![-1, 2]]);
        let l = DominantWeight::new(vec![1, 1]).unwrap();
        let b = RootCombo::new(vec![1, 1]).unwrap();
        let a = Arc::new(CycAlgebra::build(k.clone(), &l, &b).unwrap());
        let side = |action| Side { klr: k.clone(), space: Space::Cyc(a.clone()), action, offset: 0, len: 2, fixed: vec![] };
        let gens = base_generators(&k, &b);
        let dims = tensor_over(&side(Action::Right), &side(Action::Left), &gens, -10, 10);
        let want: BTreeMap<i64, usize> = a.basis().iter().map(|(d, v)| (*d, v.len())).collect();
        assert_eq!(dims, want);
    }

    #[test]
    fn free_algebra_over_itself() {
        let k = klr(vec![vec![2]]);
        let b = RootCombo::new(vec![2]).unwrap();
        let side = |action| Side { klr: k.clone(), space: Space::Free(b.clone()), action, offset: 0, len: 2, fixed: vec![] };
        let gens = base_generators(&k, &b);
        let dims = tensor_over(&side(Action::Right), &side(Action::Left), &gens, -2, 4);
        for d in -2..=4 {
            assert_eq!(dims.get(&d).copied().unwrap_or(0), k.basis_monomials(&b, d).len(), "degree {d}");
        }
    }
}
