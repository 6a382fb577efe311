//! Nilpotency bounds and the degree cap of a cyclotomic quotient.
//!
//! `N(a, ν)` is an exponent with `x_a^N e(ν)` in the cyclotomic ideal.
//! Position 0 is bounded by the level. Moving right, equal neighbours
//! carry the bound over; distinct neighbours `i = ν_a`, `j = ν_{a+1}` use
//! the two memberships `x_a^N e(ν)` and
//! `x_{a+1}^M Q_{ij}(x_a, x_{a+1}) e(ν) = τ_a x_a^M e(s_a ν) τ_a`. Their
//! resultant in `x_a` is a scalar multiple of
//! `x_{a+1}^{N (M - a_{ji})}`, and since the ideal is graded that
//! monomial lies in it.

use std::collections::HashMap;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use klr_engine::{table, Klr};

/// Bound at 0-based position `a` for right idempotent `nu`.
pub fn position_bound(datum: &CartanDatum, lambda: &DominantWeight, nu: &[u8], a: usize) -> u64 {
    fn go(d: &CartanDatum, l: &DominantWeight, nu: &mut Vec<u8>, a: usize, memo: &mut HashMap<(Vec<u8>, usize), u64>) -> u64 {
        if let Some(&v) = memo.get(&(nu.clone(), a)) {
            return v;
        }
        let v = if a == 0 {
            l.level(nu[0] as usize) as u64
        } else if nu[a - 1] == nu[a] {
            go(d, l, nu, a - 1, memo)
        } else {
            let here = go(d, l, nu, a - 1, memo);
            nu.swap(a - 1, a);
            let there = go(d, l, nu, a - 1, memo);
            nu.swap(a - 1, a);
            let (i, j) = (nu[a - 1] as usize, nu[a] as usize);
            here * (there + (-d.a(j, i)) as u64)
        };
        memo.insert((nu.clone(), a), v);
        v
    }
    go(datum, lambda, &mut nu.to_vec(), a, &mut HashMap::new())
}

/// Bounds at every position of `nu`.
pub fn column_bounds(datum: &CartanDatum, lambda: &DominantWeight, nu: &[u8]) -> Vec<u64> {
    (0..nu.len()).map(|a| position_bound(datum, lambda, nu, a)).collect()
}

/// Per position and residue, the largest bound over `I^β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyBounds {
    /// `by_residue[a][i]`; `None` when no sequence has residue `i` at `a`.
    pub by_residue: Vec<Vec<Option<u64>>>,
}

pub fn nilpotency_bounds(datum: &CartanDatum, lambda: &DominantWeight, beta: &RootCombo) -> NilpotencyBounds {
    let n = beta.height();
    let mut by_residue = vec![vec![None; datum.rank()]; n];
    for nu in beta.sequences() {
        for (a, b) in column_bounds(datum, lambda, &nu).into_iter().enumerate() {
            let slot: &mut Option<u64> = &mut by_residue[a][nu[a] as usize];
            *slot = Some(slot.map_or(b, |c| c.max(b)));
        }
    }
    NilpotencyBounds { by_residue }
}

/// Smallest crossing degree over `I^β` and `S_n`, never above 0.
pub fn min_crossing_degree(klr: &Klr, beta: &RootCombo) -> i64 {
    let t = table(beta.height());
    beta.sequences()
        .iter()
        .flat_map(|nu| (0..t.len() as u16).map(move |w| klr.crossing_degree(nu, w)))
        .min()
        .unwrap_or(0)
}

/// `(D_min, D_max)`: every nonzero graded piece of `R^Λ(β)` lies inside.
pub fn degree_cap(klr: &Klr, lambda: &DominantWeight, beta: &RootCombo) -> (i64, i64) {
    let t = table(beta.height());
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for nu in beta.sequences() {
        let bounds = column_bounds(klr.datum(), lambda, &nu);
        let dots: i64 = bounds
            .iter()
            .zip(&nu)
            .map(|(&b, &i)| (b.max(1) - 1) as i64 * klr.pair(i, i))
            .sum();
        for w in 0..t.len() as u16 {
            let c = klr.crossing_degree(&nu, w);
            lo = lo.min(c);
            hi = hi.max(c + dots);
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> CartanDatum {
        CartanDatum::build(vec![vec![2]]).unwrap()
    }

    #[test]
    fn a1_bounds_carry_over() {
        let d = a1();
        let l = DominantWeight::new(vec![1]).unwrap();
        let b = nilpotency_bounds(&d, &l, &RootCombo::new(vec![2]).unwrap());
        assert_eq!(b.by_residue, vec![vec![Some(1)], vec![Some(1)]]);
        let l3 = DominantWeight::new(vec![3]).unwrap();
        assert_eq!(column_bounds(&d, &l3, &[0]), vec![3]);
    }

    #[test]
    fn zero_weight_kills_everything() {
        let d = CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let l = DominantWeight::zero(2);
        for nu in RootCombo::new(vec![1, 2]).unwrap().sequences() {
            assert_eq!(column_bounds(&d, &l, &nu)[0], 0);
        }
    }

    #[test]
    fn distinct_neighbours_use_resultant() {
        let d = CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let l = DominantWeight::new(vec![1, 0]).unwrap();
        // x_2^{1*(0+1)} e(1,2)
        assert_eq!(column_bounds(&d, &l, &[0, 1]), vec![1, 1]);
        assert_eq!(column_bounds(&d, &l, &[1, 0]), vec![0, 0]);
    }

    #[test]
    fn caps() {
        let k = Klr::standard(a1());
        let one = DominantWeight::new(vec![1]).unwrap();
        let two = DominantWeight::new(vec![2]).unwrap();
        assert_eq!(degree_cap(&k, &one, &RootCombo::new(vec![1]).unwrap()), (0, 0));
        assert_eq!(degree_cap(&k, &two, &RootCombo::new(vec![1]).unwrap()), (0, 2));
        assert_eq!(degree_cap(&k, &one, &RootCombo::new(vec![2]).unwrap()), (-2, 0));
    }
}
