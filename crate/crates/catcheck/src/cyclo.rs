//! Checks on the cyclotomic quotients: the functor identities on
//! `R^Λ(β)` and the comparison with the highest-weight module.

use std::sync::Arc;

use cartan_core::{qint, DominantWeight, LaurentPoly, RootCombo};
use cyclotomic::simples::count_simples;
use cyclotomic::tensor::{base_generators, tensor_over, Action, Side, Space};
use cyclotomic::{CycAlgebra, CycError};

use crate::{counts_poly, dims_poly, Builder, Case, Input, Report};

fn input(case: &Case, beta: &RootCombo, i: Option<usize>, j: Option<usize>) -> Input {
    Input {
        lambda: Some(case.lambda.levels().to_vec()),
        ..crate::free::input(case, Some(beta), i, j)
    }
}

fn top(a: &CycAlgebra) -> Option<i64> {
    a.basis().keys().next_back().copied()
}

/// `R^Λ(β')e(γ,j) ⊗_{R(γ)} e(γ,i)R^Λ(β)` where `β' = γ + α_j`.
fn cyc_tensor(left: &Arc<CycAlgebra>, right: &Arc<CycAlgebra>, gamma: &RootCombo, i: usize, j: usize) -> LaurentPoly {
    let (Some(t1), Some(t2)) = (top(left), top(right)) else { return LaurentPoly::zero() };
    let klr = left.klr().clone();
    let h = gamma.height();
    let side = |a: &Arc<CycAlgebra>, action, r: usize| Side {
        klr: klr.clone(),
        space: Space::Cyc(a.clone()),
        action,
        offset: 0,
        len: h,
        fixed: vec![(h, r as u8)],
    };
    let m = side(left, Action::Right, j);
    let n = side(right, Action::Left, i);
    let lo = m.min_degree() + n.min_degree();
    counts_poly(&tensor_over(&m, &n, &base_generators(&klr, gamma), lo, t1 + t2))
}

/// Graded dimensions of `E_i F_i R^Λ(β)`, `F_i E_i R^Λ(β)` and `R^Λ(β)`.
pub struct Sl2Sides {
    pub a: i64,
    pub ef: LaurentPoly,
    pub fe: LaurentPoly,
    pub r: LaurentPoly,
}

pub fn sl2_sides(case: &Case, beta: &RootCombo, i: usize) -> Result<Sl2Sides, CycError> {
    let ii = i as u8;
    let alg = case.cyc(beta)?;
    let up = case.cyc(&beta.plus(i))?;
    let ef = dims_poly(&up.block(|l| l.last() == Some(&ii), |r| r.last() == Some(&ii)));
    let fe = match beta.minus(i) {
        Some(g) => cyc_tensor(&alg, &alg, &g, i, i),
        None => LaurentPoly::zero(),
    };
    let a = case.klr.datum().coroot_pair(i, &case.lambda, beta);
    Ok(Sl2Sides { a, ef, fe, r: alg.graded_dim() })
}

/// The commutation of `E_i` and `F_i` on `R^Λ(β)`, sign by sign.
pub fn sl2(case: &Case, beta: &RootCombo, i: usize) -> Report {
    let mut b = Builder::new("sl2", input(case, beta, Some(i), None));
    let s = match sl2_sides(case, beta, i) {
        Ok(s) => s,
        Err(e) => {
            b.fail(e);
            return b.finish();
        }
    };
    b.cap("a", s.a);
    let d = case.klr.datum().d(i);
    let mut extra = LaurentPoly::zero();
    if s.a >= 0 {
        for k in 0..s.a {
            extra += &s.r.shift(2 * d * k);
        }
        b.poly("E F vs q_i^-2 F E + copies of R", s.ef, &s.fe.shift(-2 * d) + &extra);
    } else {
        for k in 0..-s.a {
            extra += &s.r.shift(-2 * d * k - 2 * d);
        }
        b.poly("q_i^-2 F E vs E F + copies of R", s.fe.shift(-2 * d), &s.ef + &extra);
    }
    b.finish()
}

/// `E_i F_j ≅ q^{-(α_i|α_j)} F_j E_i` on `R^Λ(β)` for `i ≠ j`.
pub fn mixed(case: &Case, beta: &RootCombo, i: usize, j: usize) -> Report {
    let mut b = Builder::new("mixed", input(case, beta, Some(i), Some(j)));
    let (ii, jj) = (i as u8, j as u8);
    let sides = || -> Result<(LaurentPoly, LaurentPoly), CycError> {
        let Some(g) = beta.minus(i) else { return Ok((LaurentPoly::zero(), LaurentPoly::zero())) };
        let up = case.cyc(&beta.plus(j))?;
        let ef = dims_poly(&up.block(|l| l.last() == Some(&ii), |r| r.last() == Some(&jj)));
        let left = case.cyc(&g.plus(j))?;
        let right = case.cyc(beta)?;
        Ok((ef, cyc_tensor(&left, &right, &g, i, j)))
    };
    match sides() {
        Ok((ef, fe)) => {
            let p = case.klr.pair(ii, jj);
            b.cap("shift", -p);
            b.poly("E_i F_j vs shifted F_j E_i", ef, fe.shift(-p));
        }
        Err(e) => b.fail(e),
    }
    b.finish()
}

/// Truncations of `R^Λ(β)` against Shapovalov pairings, simple modules
/// against weight multiplicities, and the commutator at `q = 1`.
pub fn categorification(case: &Case, beta: &RootCombo) -> Report {
    let mut b = Builder::new("categorification", input(case, beta, None, None));
    let datum = case.klr.datum();
    let c = uqmod::normalization(datum, &case.lambda, beta);
    b.cap("normalization", c);
    let alg = match case.cyc(beta) {
        Ok(a) => a,
        Err(e) => {
            b.fail(e);
            return b.finish();
        }
    };
    let labels = datum.labels();
    let name = |s: &[u8]| s.iter().map(|&r| labels[r as usize].as_str()).collect::<Vec<_>>().join(",");
    let mut shap = uqmod::Shapovalov::new(datum, &case.lambda);
    let seqs = beta.sequences();
    for mu in &seqs {
        for nu in &seqs {
            let lhs = alg.truncation_dim(mu, nu).expect("sequence of weight beta");
            // e(ν) is F_{ν_n}⋯F_{ν_1} applied to the unit, so it pairs
            // with f_{ν_n}⋯f_{ν_1} v_Λ
            let (rm, rn): (Vec<u8>, Vec<u8>) = (mu.iter().rev().copied().collect(), nu.iter().rev().copied().collect());
            let rhs = shap.pairing(&rm, &rn).shift(c);
            b.poly(format!("e({})R e({})", name(mu), name(nu)), lhs, rhs);
        }
    }
    let wd = uqmod::weight_dim(datum, &case.lambda, beta).expect("ranks agree") as i64;
    let sc = count_simples(&alg);
    b.cap("split", sc.split as i64);
    if sc.split {
        b.int("simple modules vs weight multiplicity", None, sc.count() as i64, wd);
    } else {
        b.int("weight multiplicity vs dimension bound", None, (wd <= alg.dim() as i64) as i64, 1);
    }
    for i in 0..case.rank() {
        match sl2_sides(case, beta, i) {
            Ok(s) => {
                // [E_i, F_i] acts by [a]_i, which is a at q = 1
                let one = qint(s.a, datum.d(i)).eval_one();
                b.int(format!("commutator for {} at q=1", case.label(i)), None, s.ef.eval_one() - s.fe.eval_one(), one * s.r.eval_one());
            }
            Err(e) => b.fail(e),
        }
    }
    b.finish()
}

/// `R^0(β) = 0` for `β ≠ 0`, and `R^Λ((⟨h_i,Λ⟩+1)α_i) = 0`.
pub fn vanishing(case: &Case, nmax: usize) -> Report {
    let mut b = Builder::new("vanishing", Input { lambda: Some(case.lambda.levels().to_vec()), ..crate::free::input(case, None, None, None) });
    b.cap("n", nmax as i64);
    let zero = DominantWeight::zero(case.rank());
    let dim = |b: &mut Builder, what: String, lambda: &DominantWeight, beta: &RootCombo| match case.cyc_at(lambda, beta) {
        Ok(a) => {
            b.int(what, None, a.dim() as i64, 0);
        }
        Err(e) => b.fail(e),
    };
    for beta in RootCombo::all_up_to(case.rank(), nmax) {
        if beta.height() > 0 {
            dim(&mut b, format!("R^0({:?})", beta.coeffs()), &zero, &beta);
        }
    }
    for i in 0..case.rank() {
        let m = case.lambda.level(i) as usize + 1;
        if m <= nmax {
            let mut c = vec![0; case.rank()];
            c[i] = m as i64;
            let beta = RootCombo::new(c).expect("nonnegative");
            dim(&mut b, format!("R^L({m} {})", case.label(i)), &case.lambda, &beta);
        }
    }
    b.finish()
}
