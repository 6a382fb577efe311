use std::sync::Arc;
use std::time::Instant;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use cyclotomic::bimodule::{Kernels, Parts};
use klr_engine::Klr;

fn run(cartan: Vec<Vec<i64>>, lambda: Vec<i64>, beta: Vec<i64>, i: usize) {
    let t = Instant::now();
    let klr = Arc::new(Klr::standard(CartanDatum::build(cartan).unwrap()));
    let l = DominantWeight::new(lambda.clone()).unwrap();
    let b = RootCombo::new(beta.clone()).unwrap();
    let k = Kernels::build(klr, &l, &b, i, None, Parts::ALL).unwrap();
    for r in k.exactness() {
        assert!(r.holds(), "{lambda:?} {beta:?} {i}: {r:?}");
    }
    if k.exactness().iter().all(|r| r.k0 == 0) {
        // zero cyclotomic quotient; nothing else to compare
        return;
    }
    let (qn, qd) = k.qp_defects();
    let (pn, pd) = k.pq_defects();
    assert!(qd.is_empty() && pd.is_empty(), "{qd:?} {pd:?}");
    assert!(qn > 0 && pn > 0, "maps compared on {qn} and {pn} degrees");
    let s = k.s_injectivity();
    assert!(!s.is_empty());
    for (d, dim, rank) in s {
        assert_eq!(dim, rank, "S at degree {d}");
    }
    for mu in b.sequences() {
        assert!(k.taug_residue(&mu).map(|r| r.is_zero()).unwrap_or(true));
    }
    eprintln!("{lambda:?} {beta:?} i={i}: window {} in {:?}", k.window, t.elapsed());
}

#[test]
fn a1_sequences_are_exact() {
    for level in 1..=3 {
        for h in 0..=2 {
            run(vec![vec![2]], vec![level], vec![h], 0);
        }
    }
}

#[test]
fn a2_sequences_are_exact() {
    let c = vec![vec![2, -1], vec![-1, 2]];
    run(c.clone(), vec![1, 0], vec![1, 0], 1);
    run(c.clone(), vec![1, 0], vec![1, 0], 0);
    run(c.clone(), vec![1, 1], vec![1, 1], 0);
    run(c, vec![1, 1], vec![1, 0], 1);
}

#[test]
fn affine_sequences_are_exact() {
    let c = vec![vec![2, -2], vec![-2, 2]];
    run(c.clone(), vec![1, 0], vec![1, 0], 1);
    run(c, vec![1, 0], vec![1, 1], 0);
}
