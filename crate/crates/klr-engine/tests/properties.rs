use std::collections::BTreeMap;

use cartan_core::{CartanDatum, RootCombo};
use klr_engine::{table, Elem, Klr, Mono};
use proptest::prelude::*;

fn affine() -> Klr {
    Klr::standard(CartanDatum::build(vec![vec![2, -2], vec![-2, 2]]).unwrap())
}

fn mono_with_right(right: Vec<u8>) -> impl Strategy<Value = Mono> {
    let n = right.len();
    (0..table(n).len() as u16, proptest::collection::vec(0u16..3, n)).prop_map(move |(w, a)| Mono::new(&right, w, &a))
}

fn triple() -> impl Strategy<Value = (Mono, Mono, Mono)> {
    proptest::collection::vec(0u8..2, 3)
        .prop_flat_map(mono_with_right)
        .prop_flat_map(|c| mono_with_right(c.left_seq()[..3].to_vec()).prop_map(move |b| (b, c)))
        .prop_flat_map(|(b, c)| mono_with_right(b.left_seq()[..3].to_vec()).prop_map(move |a| (a, b, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative_and_graded((a, b, c) in triple()) {
        let k = affine();
        let (ea, eb, ec) = (Elem::mono(a), Elem::mono(b), Elem::mono(c));
        let ab = k.mul(&ea, &eb);
        let l = k.mul(&ab, &ec);
        let r = k.mul(&ea, &k.mul(&eb, &ec));
        prop_assert_eq!(&l, &r);
        if !ab.is_zero() {
            prop_assert_eq!(k.homogeneous_degree(&ab), Some(k.degree(&a) + k.degree(&b)));
        }
    }

    #[test]
    fn psi_is_involutive((a, _b, _c) in triple()) {
        let k = affine();
        let e = Elem::mono(a);
        prop_assert_eq!(k.psi(&k.psi(&e)), e);
    }
}

/// Coefficients of `Σ_{w,ν} q^{deg τ_w e(ν)} Π_k (1 − q^{(α|α)})^{-1}` up to `top`.
fn pbw_series(k: &Klr, beta: &RootCombo, top: i64) -> BTreeMap<i64, usize> {
    let n = beta.height();
    let mut out = BTreeMap::new();
    for nu in beta.sequences() {
        for w in 0..table(n).len() as u16 {
            let base = k.crossing_degree(&nu, w);
            // series of Π 1/(1-q^{c_p}): coefficients by dynamic programming
            let mut coeffs = vec![0usize; (top - base).max(-1).wrapping_add(1) as usize];
            if coeffs.is_empty() {
                continue;
            }
            coeffs[0] = 1;
            for &i in &nu {
                let step = k.pair(i, i) as usize;
                for d in step..coeffs.len() {
                    coeffs[d] += coeffs[d - step];
                }
            }
            for (d, c) in coeffs.into_iter().enumerate() {
                if c > 0 {
                    *out.entry(base + d as i64).or_insert(0) += c;
                }
            }
        }
    }
    out
}

#[test]
fn pbw_counts_match_series() {
    for (mat, betas) in [
        (vec![vec![2]], vec![vec![1], vec![2], vec![3]]),
        (vec![vec![2, -1], vec![-1, 2]], vec![vec![1, 1], vec![2, 1]]),
        (vec![vec![2, -2], vec![-2, 2]], vec![vec![1, 1], vec![1, 2]]),
    ] {
        let k = Klr::standard(CartanDatum::build(mat).unwrap());
        for c in betas {
            let beta = RootCombo::new(c).unwrap();
            let series = pbw_series(&k, &beta, 10);
            for d in -12..=10 {
                let got = k.basis_monomials(&beta, d).len();
                assert_eq!(got, series.get(&d).copied().unwrap_or(0), "beta {:?} degree {d}", beta.coeffs());
            }
        }
    }
}

#[test]
fn basis_order_is_canonical() {
    let k = affine();
    let beta = RootCombo::new(vec![1, 1]).unwrap();
    let b = k.basis_monomials(&beta, 4);
    let mut sorted = b.clone();
    sorted.sort();
    assert_eq!(b, sorted);
    assert!(b.iter().all(|m| k.degree(m) == 4));
}
