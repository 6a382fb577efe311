//! The highest-weight module `V(Λ)` seen through its Shapovalov form on
//! monomials `f_ν v_Λ`. Everything is computed from the relation
//! `e_i f_j - f_j e_i = δ_ij [K_i]` and `e_i v_Λ = 0`, independently of
//! any KLR data.

mod rank;

use std::collections::BTreeMap;

use cartan_core::{qint, CartanDatum, DominantWeight, LaurentPoly, RootCombo};
use thiserror::Error;

pub use rank::poly_rank;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UqError {
    #[error("sequence {0:?} does not have weight β")]
    Weight(Vec<u8>),
    #[error("weight or root data has the wrong rank")]
    Rank,
}

/// `e_i f_ν v_Λ` as a combination of `f_{ν'} v_Λ`, one residue shorter.
pub fn e_action(datum: &CartanDatum, lambda: &DominantWeight, i: usize, nu: &[u8]) -> BTreeMap<Vec<u8>, LaurentPoly> {
    let mut out: BTreeMap<Vec<u8>, LaurentPoly> = BTreeMap::new();
    // weight of f_{ν_{j+1}} ⋯ f_{ν_n} v_Λ, paired with h_i
    let mut h = lambda.level(i);
    for j in (0..nu.len()).rev() {
        if nu[j] as usize == i {
            let mut rest = nu.to_vec();
            rest.remove(j);
            let slot = out.entry(rest).or_insert_with(LaurentPoly::zero);
            *slot += &qint(h, datum.d(i));
        }
        h -= datum.a(i, nu[j] as usize);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Memoized Shapovalov pairings `(f_μ v_Λ, f_ν v_Λ)`.
pub struct Shapovalov<'a> {
    datum: &'a CartanDatum,
    lambda: &'a DominantWeight,
    memo: BTreeMap<(Vec<u8>, Vec<u8>), LaurentPoly>,
}

impl<'a> Shapovalov<'a> {
    pub fn new(datum: &'a CartanDatum, lambda: &'a DominantWeight) -> Self {
        Shapovalov { datum, lambda, memo: BTreeMap::new() }
    }

    pub fn pairing(&mut self, mu: &[u8], nu: &[u8]) -> LaurentPoly {
        if mu.len() != nu.len() {
            return LaurentPoly::zero();
        }
        if mu.is_empty() {
            return LaurentPoly::one();
        }
        let rank = self.datum.rank();
        if RootCombo::of_seq(rank, mu) != RootCombo::of_seq(rank, nu) {
            return LaurentPoly::zero();
        }
        let key = (mu.to_vec(), nu.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        // (f_i u, w) = (u, e_i w)
        let mut total = LaurentPoly::zero();
        for (rest, c) in e_action(self.datum, self.lambda, mu[0] as usize, nu) {
            let inner = self.pairing(&mu[1..], &rest);
            total += &(&c * &inner);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Gram matrix over `I^β` in lexicographic order of sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub seqs: Vec<Vec<u8>>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

pub fn gram(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo) -> Result<Gram, UqError> {
    if lambda.levels().len() != datum.rank() || beta.coeffs().len() != datum.rank() {
        return Err(UqError::Rank);
    }
    let seqs = beta.sequences();
    let mut s = Shapovalov::new(datum, lambda);
    let entries = seqs.iter().map(|m| seqs.iter().map(|n| s.pairing(m, n)).collect()).collect();
    Ok(Gram { seqs, entries })
}

/// `dim V(Λ)_{Λ-β}`, the rank of the Gram matrix over `ℚ(q)`.
pub fn weight_dim(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo) -> Result<usize, UqError> {
    Ok(poly_rank(&gram(datum, lambda, beta)?.entries))
}

/// `(Λ|β) - (β|β)/2`.
pub fn normalization(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo) -> i64 {
    let bb = datum.sym_form(beta, beta);
    debug_assert!(bb % 2 == 0);
    datum.weight_root_pair(lambda, beta) - bb / 2
}

/// Expected graded dimension of `e(μ) R^Λ(β) e(ν)`.
pub fn predicted_dim(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo, mu: &[u8], nu: &[u8]) -> Result<LaurentPoly, UqError> {
    for s in [mu, nu] {
        if RootCombo::of_seq(datum.rank(), s) != *beta {
            return Err(UqError::Weight(s.to_vec()));
        }
    }
    let mut sh = Shapovalov::new(datum, lambda);
    Ok(sh.pairing(mu, nu).shift(normalization(datum, lambda, beta)))
}
