//! Print graded dimensions of a few cyclotomic quotients with timings.

use std::sync::Arc;
use std::time::Instant;

use cartan_core::{CartanDatum, DominantWeight, RootCombo};
use cyclotomic::CycAlgebra;
use klr_engine::Klr;

fn main() {
    let cases: Vec<(Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> = vec![
        (vec![vec![2]], vec![3], vec![3]),
        (vec![vec![2]], vec![3], vec![4]),
        (vec![vec![2]], vec![2], vec![3]),
        (vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![2, 2]),
        (vec![vec![2, -1], vec![-1, 2]], vec![1, 1], vec![1, 3]),
        (vec![vec![2, -1], vec![-1, 2]], vec![1, 0], vec![2, 2]),
        (vec![vec![2, -2], vec![-2, 2]], vec![1, 0], vec![2, 1]),
        (vec![vec![2, -2], vec![-2, 2]], vec![1, 0], vec![1, 2]),
    ];
    for (m, l, b) in cases {
        let k = Arc::new(Klr::standard(CartanDatum::build(m.clone()).unwrap()));
        let t = Instant::now();
        let a = CycAlgebra::build(k, &DominantWeight::new(l.clone()).unwrap(), &RootCombo::new(b.clone()).unwrap()).unwrap();
        println!("{m:?} Λ={l:?} β={b:?}: dim_q = {} ({:.2?})", a.graded_dim(), t.elapsed());
    }
}
