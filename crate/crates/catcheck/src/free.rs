//! Checks on the algebras `R(β)` themselves: relations, associativity,
//! the monomial basis, and the bimodule decompositions behind induction
//! and restriction.

use std::sync::Arc;

use cartan_core::{LaurentPoly, RootCombo};
use cyclotomic::bounds::min_crossing_degree;
use cyclotomic::tensor::{base_generators, tensor_over, Action, Side, Space};
use klr_engine::{verify, Klr, Mono};

use crate::{counts_poly, Builder, Case, Input, Report};

pub(crate) fn input(case: &Case, beta: Option<&RootCombo>, i: Option<usize>, j: Option<usize>) -> Input {
    Input {
        case: case.name.clone(),
        lambda: None,
        beta: beta.map(|b| b.coeffs().to_vec()),
        i: i.map(|i| case.label(i)),
        j: j.map(|j| case.label(j)),
        ..Input::default()
    }
}

fn defects(b: &mut Builder, what: String, found: Vec<String>) {
    b.int(what.clone(), None, found.len() as i64, 0);
    if let Some(first) = found.first() {
        b.text(format!("{what}: first"), None, first.clone(), String::new());
    }
}

/// Defining relations on generators for every `n ≤ nmax`.
pub fn relations(case: &Case, nmax: usize) -> Report {
    let mut b = Builder::new("relations", input(case, None, None, None));
    b.cap("n", nmax as i64);
    for n in 1..=nmax {
        defects(&mut b, format!("relations n={n}"), verify::relation_defects(&case.klr, n));
    }
    b.finish()
}

/// Random triples `(ab)c = a(bc)`, and the anti-involution on pairs.
pub fn associativity(case: &Case, beta: &RootCombo, samples: usize, seed: u64) -> Report {
    let mut b = Builder::new("associativity", input(case, Some(beta), None, None));
    b.cap("samples", samples as i64);
    defects(&mut b, "associativity".into(), verify::associativity_defects(&case.klr, beta, samples, seed));
    defects(&mut b, "anti-involution".into(), verify::psi_defects(&case.klr, beta, samples / 4, seed ^ 0x5eed));
    b.finish()
}

pub fn intertwiners(case: &Case, nmax: usize) -> Report {
    let mut b = Builder::new("intertwiners", input(case, None, None, None));
    b.cap("n", nmax as i64);
    for n in 1..=nmax {
        defects(&mut b, format!("intertwiners n={n}"), verify::intertwiner_defects(&case.klr, n));
    }
    b.finish()
}

/// `Σ_k q^{step·k} p`, cut above `hi`.
fn geometric(p: &LaurentPoly, step: i64, hi: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for k in 0.. {
        let s = p.shift(step * k).truncate_above(hi);
        if s.is_zero() {
            break;
        }
        out += &s;
    }
    out
}

/// `dim_q R(n) e(ν)` up to degree `hi`, peeling off the strand that ends
/// last: `R(n) e(ν) = ⊕_a R(n-1) e(ν∖a) ⊗ k[x_n] · τ_{n-1}⋯τ_a`.
pub fn free_series(klr: &Klr, nu: &[u8], hi: i64) -> LaurentPoly {
    if nu.is_empty() {
        return if hi >= 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
    }
    let mut out = LaurentPoly::zero();
    for a in 0..nu.len() {
        let s: i64 = -nu[a + 1..].iter().map(|&b| klr.pair(nu[a], b)).sum::<i64>();
        let mut rest = nu.to_vec();
        rest.remove(a);
        let sub = free_series(klr, &rest, hi - s);
        out += &geometric(&sub, klr.pair(nu[a], nu[a]), hi - s).shift(s);
    }
    out
}

fn series(klr: &Klr, beta: &RootCombo, hi: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for nu in beta.sequences() {
        out += &free_series(klr, &nu, hi);
    }
    out
}

/// Monomials of `R(β)` up to degree `hi` whose left and right residue
/// sequences pass the filters.
fn count(klr: &Klr, beta: &RootCombo, hi: i64, keep: impl Fn(&[u8], &[u8]) -> bool) -> LaurentPoly {
    let lo = min_crossing_degree(klr, beta);
    let mut out = LaurentPoly::zero();
    for d in lo..=hi {
        let k = klr.basis_monomials(beta, d).iter().filter(|m: &&Mono| keep(&m.left_seq()[..m.n()], m.seq())).count();
        out.add_term(d, k as i64);
    }
    out
}

fn free_side(klr: &Arc<Klr>, beta: RootCombo, action: Action, offset: usize, len: usize, fixed: Vec<(usize, u8)>) -> Side {
    Side { klr: klr.clone(), space: Space::Free(beta), action, offset, len, fixed }
}

/// `M ⊗_{R(δ)} N` up to degree `hi`.
fn tensor(klr: &Klr, m: &Side, n: &Side, delta: &RootCombo, hi: i64) -> LaurentPoly {
    let lo = m.min_degree() + n.min_degree();
    if lo > hi {
        return LaurentPoly::zero();
    }
    counts_poly(&tensor_over(m, n, &base_generators(klr, delta), lo, hi))
}

/// `R(β)e(γ,j) ⊗_{R(γ)} e(γ,i)R(β')` where the left factor is `R(β)`
/// with `β = γ + α_j` and the right factor has weight `β'`: the
/// crossing part of `e(·,i) R e(·,j)`.
fn crossing_part(klr: &Arc<Klr>, left: &RootCombo, right: &RootCombo, gamma: &RootCombo, i: usize, j: usize, hi: i64) -> LaurentPoly {
    let h = gamma.height();
    let m = free_side(klr, left.clone(), Action::Right, 0, h, vec![(h, j as u8)]);
    let n = free_side(klr, right.clone(), Action::Left, 0, h, vec![(h, i as u8)]);
    tensor(klr, &m, &n, gamma, hi)
}

/// Basis counts against the free-module series, and the block
/// decomposition of `R(β)` into a polynomial part and a tensor part.
pub fn pbw(case: &Case, beta: &RootCombo, dcap: i64) -> Report {
    let klr = &case.klr;
    let mut b = Builder::new("pbw", input(case, Some(beta), None, None));
    b.cap("degree", dcap);
    let total = count(klr, beta, dcap, |_, _| true);
    b.poly("monomials vs free series", total.clone(), series(klr, beta, dcap));
    if beta.height() == 0 {
        return b.finish();
    }
    let mut blocks = LaurentPoly::zero();
    for i in 0..case.rank() {
        for j in 0..case.rank() {
            let lhs = count(klr, beta, dcap, |l, r| l.last() == Some(&(i as u8)) && r.last() == Some(&(j as u8)));
            let mut rhs = LaurentPoly::zero();
            if let (Some(bi), Some(bj)) = (beta.minus(i), beta.minus(j)) {
                if i == j {
                    rhs += &geometric(&series(klr, &bi, dcap), klr.pair(i as u8, i as u8), dcap);
                }
                if let Some(delta) = bi.minus(j) {
                    let p = klr.pair(i as u8, j as u8);
                    rhs += &crossing_part(klr, &bi, &bj, &delta, i, j, dcap + p).shift(-p).truncate_above(dcap);
                }
            }
            blocks += &rhs;
            b.poly(format!("block ({},{})", case.label(i), case.label(j)), lhs, rhs);
        }
    }
    b.poly("sum of blocks", total, blocks);
    b.finish()
}

/// Restriction after induction against induction after restriction on
/// `R(β)`, and one block of the three-term sequence for `R(β)`.
pub fn convolution(case: &Case, beta: &RootCombo, i: usize, j: usize, dcap: i64) -> Report {
    let klr = &case.klr;
    let (ii, jj) = (i as u8, j as u8);
    let mut b = Builder::new("convolution", input(case, Some(beta), Some(i), Some(j)));
    b.cap("degree", dcap);
    let h = beta.height();
    let bj = beta.plus(j);
    let ef = count(klr, &bj, dcap, |l, r| l.last() == Some(&ii) && r.last() == Some(&jj));
    let gamma = beta.minus(i);
    let p = klr.pair(ii, jj);
    let fe = match &gamma {
        Some(g) => crossing_part(klr, &g.plus(j), beta, g, i, j, dcap + p).shift(-p).truncate_above(dcap),
        None => LaurentPoly::zero(),
    };
    if i != j {
        b.poly("E_i F_j vs F_j E_i", ef, fe);
    } else {
        let poly = geometric(&series(klr, beta, dcap), p, dcap);
        b.poly("E_i F_i vs F_i E_i + polynomial part", ef, &fe + &poly);
        // induction from the left end
        let ebar = count(klr, &bj, dcap, |l, r| l.last() == Some(&ii) && r.first() == Some(&ii));
        let mut rhs = match &gamma {
            Some(g) => {
                let m = free_side(klr, beta.clone(), Action::Right, 1, h - 1, vec![(0, ii)]);
                let n = free_side(klr, beta.clone(), Action::Left, 0, h - 1, vec![(h - 1, ii)]);
                tensor(klr, &m, &n, g, dcap)
            }
            None => LaurentPoly::zero(),
        };
        let s = klr.datum().sym_form(&klr.datum().simple_root(i), beta);
        rhs += &geometric(&series(klr, beta, dcap + s), p, dcap + s).shift(-s).truncate_above(dcap);
        b.poly("E_i Fbar_i vs Fbar_i E_i + shifted polynomial part", ebar, rhs);
    }
    // block (i, j) of 0 → R(n-1) ⊗ R¹(n-1) → R(n) → R(n-1) ⊗ k[t] → 0
    let lhs = count(klr, beta, dcap, |l, r| l.last() == Some(&ii) && r.first() == Some(&jj));
    let mut rhs = LaurentPoly::zero();
    if let (Some(bi), Some(bjm)) = (beta.minus(i), beta.minus(j)) {
        if let Some(kappa) = bi.minus(j) {
            let m = free_side(klr, bi.clone(), Action::Right, 1, h - 2, vec![(0, jj)]);
            let n = free_side(klr, bjm, Action::Left, 0, h - 2, vec![(h - 2, ii)]);
            rhs += &tensor(klr, &m, &n, &kappa, dcap);
        }
        if i == j {
            let s = klr.datum().sym_form(&klr.datum().simple_root(i), &bi);
            rhs += &geometric(&series(klr, &bi, dcap + s), p, dcap + s).shift(-s).truncate_above(dcap);
        }
    }
    b.poly("three-term block", lhs, rhs);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_core::{CartanDatum, DominantWeight};

    fn case(m: Vec<Vec<i64>>) -> Case {
        let d = CartanDatum::build(m).unwrap();
        let r = d.rank();
        Case::new("t", Arc::new(Klr::standard(d)), DominantWeight::zero(r))
    }

    #[test]
    fn series_of_two_strands() {
        let c = case(vec![vec![2]]);
        // (1 + q^-2) / (1 - q^2)^2
        let s = free_series(&c.klr, &[0, 0], 4);
        assert_eq!(s, LaurentPoly::from_terms([(-2, 1), (0, 3), (2, 5), (4, 7)]));
    }

    #[test]
    fn small_identities() {
        let c = case(vec![vec![2, -1], vec![-1, 2]]);
        for beta in RootCombo::all_up_to(2, 2) {
            assert!(pbw(&c, &beta, 6).passed(), "{beta:?}");
            for i in 0..2 {
                for j in 0..2 {
                    let r = convolution(&c, &beta, i, j, 6);
                    assert!(r.passed(), "{:?}", r.first_failure);
                }
            }
        }
    }
}
