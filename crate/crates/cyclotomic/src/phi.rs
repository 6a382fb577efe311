//! The elements `φ_k ∈ k[t_i] ⊗ R^Λ(β)` and `ψ_k`, by chasing the kernel
//! diagram and by polynomial division.

use std::collections::BTreeMap;
use std::sync::Arc;

use cartan_core::{DominantWeight, RootCombo};
use klr_engine::{scalar, Echelon, Elem, Klr, Mono, Poly, Scalar, MAX_N};
use num_traits::{One, Zero};

use crate::algebra::CycAlgebra;
use crate::bimodule::{Kernels, Parts};
use crate::CycError;

/// Polynomial in `t_i` with coefficients in `R^Λ(β)`, zero coefficients
/// dropped.
pub type TPoly = BTreeMap<u16, Elem>;

fn tpoly_add(p: &mut TPoly, m: u16, e: &Elem) {
    let slot = p.entry(m).or_default();
    *slot += e;
    if slot.is_zero() {
        p.remove(&m);
    }
}

/// `p · t`.
pub fn tpoly_shift(p: &TPoly) -> TPoly {
    p.iter().map(|(m, e)| (m + 1, e.clone())).collect()
}

#[derive(Clone, Debug)]
pub struct PhiRow {
    pub k: u16,
    /// From the decomposition of `P(e(β,i) τ_n⋯τ_1 x_1^k e(i,β))`.
    pub chase: TPoly,
    /// Quotient of `t^k F` by `S`, times `γ⁻¹`.
    pub division: TPoly,
    /// `E(ψ_k)`.
    pub e_psi: Elem,
    /// The two summands span `e(β,i)K₀` in this degree and meet in zero.
    pub direct_sum: bool,
    /// `F(ψ_k (x_n ⊗ 1)) = F(ψ_{k+1})`, when `k+1` was computed.
    pub psi_shift: Option<bool>,
}

pub struct PhiTable {
    /// `⟨h_i, Λ - β⟩`.
    pub a: i64,
    pub gamma_inv: Scalar,
    pub window: i64,
    pub alg: Arc<CycAlgebra>,
    pub rows: Vec<PhiRow>,
}

fn append(m: &Mono, i: u8, e: u16) -> Mono {
    let mut seq = m.seq().to_vec();
    seq.push(i);
    let mut a = m.exps().to_vec();
    a.push(e);
    Mono::from_word(&seq, m.word(), &a)
}

/// `γ⁻¹`, the leading `t`-coefficient of `(-1)^p Π_{ν_a ≠ i} Q_{i,ν_a}(t, x_a)`.
pub fn gamma_inv(klr: &Klr, beta: &RootCombo, i: usize) -> Scalar {
    let d = klr.datum();
    let mut g = if beta.coeff(i) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    for j in 0..d.rank() {
        if j != i {
            let c = klr.qspec().coeff(i, j, (-d.a(i, j)) as u16, 0);
            for _ in 0..beta.coeff(j) {
                g *= &c;
            }
        }
    }
    g
}

fn t_degree(p: &Poly, t: usize) -> Option<u16> {
    p.terms().map(|(e, _)| e[t]).max()
}

/// Quotient of `f` by the `t`-monic `s`.
fn divide_in_t(f: &Poly, s: &Poly, t: usize) -> Poly {
    let ds = t_degree(s, t).unwrap_or(0);
    let mut rem = f.clone();
    let mut quo = Poly::zero();
    while let Some(dr) = t_degree(&rem, t) {
        if dr < ds {
            break;
        }
        let mut lead = Poly::zero();
        for (e, c) in rem.terms() {
            if e[t] == dr {
                let mut e2 = *e;
                e2[t] -= ds;
                lead.add_term(e2, c.clone());
            }
        }
        quo = &quo + &lead;
        rem = &rem - &(&lead * s);
    }
    quo
}

/// `γ⁻¹ · quot(t^k F, S)`, which is the quotient of
/// `(-1)^p t^{Λ_i + k} Π Q_{i,ν_a}(t, x_a)` by `S`.
pub fn phi_by_division(klr: &Klr, alg: &CycAlgebra, lambda: &DominantWeight, beta: &RootCombo, i: usize, k: u16) -> TPoly {
    let n = beta.height();
    let t = n;
    let sign = if beta.coeff(i) % 2 == 0 { scalar(1) } else { scalar(-1) };
    let mut out = TPoly::new();
    for nu in beta.sequences() {
        let mut f = Poly::var_pow(t, lambda.level(i) as u16 + k).scale(&sign);
        let mut s = Poly::one();
        for (a, &j) in nu.iter().enumerate() {
            if j as usize == i {
                s = &s * &(&Poly::var(t) - &Poly::var(a)).pow(2);
            } else {
                f = &f * &klr.qspec().poly(i, j as usize, t, a);
            }
        }
        let q = divide_in_t(&f, &s, t);
        let mut by_power: BTreeMap<u16, Poly> = BTreeMap::new();
        for (e, c) in q.terms() {
            let mut e2 = *e;
            let m = std::mem::replace(&mut e2[t], 0);
            by_power.entry(m).or_insert_with(Poly::zero).add_term(e2, c.clone());
        }
        let unit = Elem::mono(Mono::idem(&nu));
        for (m, c) in by_power {
            tpoly_add(&mut out, m, &alg.reduce(&klr.poly_left(&c, &unit)));
        }
    }
    out
}

struct Chase {
    phi: TPoly,
    e_psi: Elem,
    /// `F(ψ_k)` and `F(ψ_k (x_n ⊗ 1))` in `K₀`; the latter only below
    /// the last `k`, where it lies inside the window.
    f_psi: Elem,
    f_psi_shift: Elem,
    direct_sum: bool,
}

fn chase(kern: &Kernels, alg: &CycAlgebra, a_pair: i64, k: u16, with_shift: bool) -> Result<Chase, CycError> {
    let klr = kern.klr().clone();
    let (i, n) = (kern.i as u8, kern.beta.height());
    let dii = klr.pair(i, i);
    let d = dii * (a_pair + k as i64);
    let b0 = kern.k0_basis();
    let target_dim = b0.get(&d).map_or(0, |v| v.iter().filter(|m| m.left_seq()[n] == i).count());

    let mut ech: Echelon<Mono> = Echelon::new();
    let mut comps: Vec<(u16, Mono)> = vec![];
    for (dr, rs) in alg.basis() {
        let rest = d - dr;
        if rest < 0 || rest % dii != 0 {
            continue;
        }
        for r in rs {
            let m = (rest / dii) as u16;
            let v = kern.reduce_k0(&Elem::mono(append(r, i, m)));
            ech.insert_tagged(v.into_map(), Some(comps.len()));
            comps.push((m, *r));
        }
    }
    let direct = ech.rank() == comps.len();
    let mut pieces: Vec<(Mono, Mono)> = vec![];
    if n > 0 {
        for (db, bs) in alg.basis() {
            let bs: Vec<&Mono> = bs.iter().filter(|b| b.left_seq()[n - 1] == i).collect();
            if bs.is_empty() {
                continue;
            }
            for a in klr.basis_monomials(&kern.beta, d - db + dii) {
                if a.seq()[n - 1] != i {
                    continue;
                }
                for b in &bs {
                    let v = f_image(kern, &a, b);
                    ech.insert_tagged(v.into_map(), Some(comps.len() + pieces.len()));
                    pieces.push((a, **b));
                }
            }
        }
    }
    let spans = ech.rank() == target_dim;

    let up: Vec<u8> = (0..n as u8).rev().collect();
    let mut lift = Elem::zero();
    for nu in kern.beta.sequences() {
        let mut seq = vec![i];
        seq.extend_from_slice(&nu);
        let mut ex = vec![0u16; n + 1];
        ex[0] = k;
        lift.add_term(Mono::from_word(&seq, &up, &ex), scalar(1));
    }
    let v = kern.p(&lift);
    if let Some(vd) = klr.homogeneous_degree(&v) {
        if vd > kern.window {
            return Err(CycError::Window { window: kern.window, needed: vd });
        }
    }
    let (rem, tags) = ech.reduce_tagged(v.as_map());
    if !rem.is_empty() {
        return Err(CycError::Decomposition(k as i64, "image of the lift is outside the decomposition".into()));
    }
    let mut phi = TPoly::new();
    let mut e_psi = Elem::zero();
    let mut f_psi = Elem::zero();
    let mut f_psi_shift = Elem::zero();
    for (id, c) in tags {
        if id < comps.len() {
            let (m, r) = comps[id];
            tpoly_add(&mut phi, m, &Elem::term(r, c));
        } else {
            let (a, b) = &pieces[id - comps.len()];
            let ea = Elem::mono(*a);
            e_psi.add_scaled(&alg.reduce(&klr.mul(&ea, &Elem::mono(*b))), &c);
            f_psi.add_scaled(&f_image(kern, a, b), &c);
            if with_shift {
                let ax = klr.mul(&ea, &Elem::mono(Mono::from_word(a.seq(), &[], &unit_exp(n, n - 1))));
                for (a2, c2) in ax.iter() {
                    f_psi_shift.add_scaled(&f_image(kern, a2, b), &(&c * c2));
                }
            }
        }
    }
    Ok(Chase { phi, e_psi, f_psi, f_psi_shift, direct_sum: direct && spans })
}

fn unit_exp(n: usize, p: usize) -> Vec<u16> {
    let mut a = vec![0; n];
    a[p] = 1;
    a
}

/// `F(a ⊗ b) = a τ_n b` in `K₀`.
fn f_image(kern: &Kernels, a: &Mono, b: &Mono) -> Elem {
    let klr = kern.klr();
    let (i, n) = (kern.i as u8, a.n());
    let tb = klr.tau_left(n - 1, &Elem::mono(append(b, i, 0)));
    kern.reduce_k0(&klr.mul(&Elem::mono(append(a, i, 0)), &tb))
}

/// Both computations of `φ_k` for `k = 0..=kmax`.
pub fn phi_table(klr: Arc<Klr>, lambda: &DominantWeight, beta: &RootCombo, i: usize, kmax: u16) -> Result<PhiTable, CycError> {
    if beta.height() + 1 > MAX_N {
        return Err(CycError::TooLong(beta.height() + 1));
    }
    let datum = klr.datum().clone();
    let a = datum.coroot_pair(i, lambda, beta);
    let window = datum.pair(i, i) * (a + kmax as i64);
    let alg = Arc::new(CycAlgebra::build(klr.clone(), lambda, beta)?);
    let kern = Kernels::build(klr.clone(), lambda, beta, i, Some(window), Parts::K0)?;
    let ks: Vec<u16> = (0..=kmax).collect();
    let chases = klr_engine::par::map(&ks, |&k| chase(&kern, &alg, a, k, k < kmax));
    let chases: Vec<Chase> = chases.into_iter().collect::<Result<_, _>>()?;
    let g = gamma_inv(&klr, beta, i);
    let mut rows = vec![];
    for (k, c) in ks.iter().zip(&chases) {
        let division = phi_by_division(&klr, &alg, lambda, beta, i, *k);
        let psi_shift = chases.get(*k as usize + 1).map(|next| kern.reduce_k0(&(&next.f_psi - &c.f_psi_shift)).is_zero());
        rows.push(PhiRow { k: *k, chase: c.phi.clone(), division, e_psi: c.e_psi.clone(), direct_sum: c.direct_sum, psi_shift });
    }
    if g.is_zero() {
        return Err(CycError::Decomposition(0, "leading coefficient vanishes".into()));
    }
    Ok(PhiTable { a, gamma_inv: g, window, alg, rows })
}

impl PhiTable {
    /// `γ φ_k` is monic of degree `a + k`, or zero when that is negative.
    pub fn monic(&self, row: &PhiRow) -> bool {
        let deg = self.a + row.k as i64;
        if deg < 0 {
            return row.chase.is_empty();
        }
        let one = self.alg.one().scale(&self.gamma_inv);
        let top = row.chase.keys().next_back().map_or(-1, |&m| m as i64);
        if one.is_zero() {
            return row.chase.is_empty();
        }
        top == deg && row.chase[&(deg as u16)] == one
    }

    /// `φ_{k+1} = φ_k t + E(ψ_k)` for each consecutive pair.
    pub fn recursion(&self) -> Vec<(u16, bool)> {
        self.rows
            .windows(2)
            .map(|w| {
                let mut rhs = tpoly_shift(&w[0].chase);
                tpoly_add(&mut rhs, 0, &w[0].e_psi);
                (w[0].k, rhs == w[1].chase)
            })
            .collect()
    }

    /// When `a' = -a > 0`: `E(ψ_k) = 0` for `k < a'-1` and
    /// `E(ψ_{a'-1}) = γ⁻¹`. Rows beyond the table are skipped.
    pub fn triangular(&self) -> Vec<(u16, bool)> {
        let ap = -self.a;
        if ap <= 0 {
            return vec![];
        }
        let one = self.alg.one().scale(&self.gamma_inv);
        self.rows
            .iter()
            .filter(|r| (r.k as i64) < ap)
            .map(|r| {
                let want = if (r.k as i64) == ap - 1 { one.clone() } else { Elem::zero() };
                (r.k, r.e_psi == want)
            })
            .collect()
    }
}
