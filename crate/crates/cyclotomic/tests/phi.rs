use std::sync::Arc;
use std::time::Instant;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use cyclotomic::phi::phi_table;
use klr_engine::Klr;

fn run(cartan: &[Vec<i64>], lambda: &[i64], hmax: usize, kmax: u16) {
    let klr = Arc::new(Klr::standard(CartanDatum::build(cartan.to_vec()).unwrap()));
    let l = DominantWeight::new(lambda.to_vec()).unwrap();
    for beta in RootCombo::all_up_to(cartan.len(), hmax) {
        for i in 0..cartan.len() {
            let t0 = Instant::now();
            let t = phi_table(klr.clone(), &l, &beta, i, kmax).unwrap();
            for r in &t.rows {
                assert_eq!(r.chase, r.division, "{lambda:?} {beta:?} i={i} k={}", r.k);
                assert!(r.direct_sum, "{lambda:?} {beta:?} i={i} k={}", r.k);
                assert!(t.monic(r), "{lambda:?} {beta:?} i={i} k={}", r.k);
                assert_ne!(r.psi_shift, Some(false), "{lambda:?} {beta:?} i={i} k={}", r.k);
            }
            assert!(t.recursion().iter().all(|x| x.1), "{lambda:?} {beta:?} i={i}");
            assert!(t.triangular().iter().all(|x| x.1), "{lambda:?} {beta:?} i={i}");
            eprintln!("{lambda:?} {:?} i={i} a={} {:?}", beta.coeffs(), t.a, t0.elapsed());
        }
    }
}

#[test]
fn a1_levels() {
    for m in 1..=3 {
        run(&[vec![2]], &[m], 3, 4);
    }
}

#[test]
fn a2_weights() {
    let c = [vec![2, -1], vec![-1, 2]];
    run(&c, &[1, 0], 3, 4);
    run(&c, &[1, 1], 3, 4);
}

#[test]
fn affine_vacuum() {
    run(&[vec![2, -2], vec![-2, 2]], &[1, 0], 2, 4);
}
