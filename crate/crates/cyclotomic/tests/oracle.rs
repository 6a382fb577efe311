use std::sync::Arc;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use cyclotomic::algebra::free_dim;
use cyclotomic::{ideal_piece_direct, CycAlgebra};
use klr_engine::Klr;

fn klr(m: Vec<Vec<i64>>) -> Arc<Klr> {
    Arc::new(Klr::standard(CartanDatum::build(m).unwrap()))
}

fn check_against_direct(k: &Arc<Klr>, lambda: &[i64], beta: &[i64]) {
    let l = DominantWeight::new(lambda.to_vec()).unwrap();
    let b = RootCombo::new(beta.to_vec()).unwrap();
    let alg = CycAlgebra::build(k.clone(), &l, &b).unwrap();
    let (lo, hi) = alg.cap;
    for d in lo - 1..=hi + 2 {
        let ideal = ideal_piece_direct(k, &l, &b, d);
        let expect = free_dim(k, &b, d) - ideal.rank();
        let got = alg.basis().get(&d).map_or(0, |v| v.len());
        assert_eq!(got, expect, "Λ={lambda:?} β={beta:?} degree {d}");
    }
}

#[test]
fn closure_matches_direct_span_a2() {
    let k = klr(vec![vec![2, -1], vec![-1, 2]]);
    for (l, b) in [([1, 0], [1, 1]), ([1, 1], [1, 1]), ([1, 0], [2, 0]), ([1, 1], [2, 1]), ([1, 0], [1, 2])] {
        check_against_direct(&k, &l, &b);
    }
}

#[test]
fn closure_matches_direct_span_affine() {
    let k = klr(vec![vec![2, -2], vec![-2, 2]]);
    for b in [[1, 0], [1, 1], [2, 0]] {
        check_against_direct(&k, &[1, 0], &b);
    }
}

#[test]
fn short_generators_suffice() {
    let k = klr(vec![vec![2, -1], vec![-1, 2]]);
    for (l, b) in [([1, 0], [1, 1]), ([1, 1], [2, 1]), ([2, 0], [2, 1])] {
        let l = DominantWeight::new(l.to_vec()).unwrap();
        let b = RootCombo::new(b.to_vec()).unwrap();
        let short = CycAlgebra::build(k.clone(), &l, &b).unwrap();
        let full = CycAlgebra::build_with_full_generators(k.clone(), &l, &b).unwrap();
        assert_eq!(short.basis(), full.basis());
    }
}
