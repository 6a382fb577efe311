use std::sync::Arc;

use cartan_core::{CartanDatum, DominantWeight, LaurentPoly, RootCombo};
use catcheck::{cyclo, free, kernel, Case, Status, Value};
use klr_engine::Klr;

fn case(m: Vec<Vec<i64>>, l: Vec<i64>) -> Case {
    Case::new("t", Arc::new(Klr::standard(CartanDatum::build(m).unwrap())), DominantWeight::new(l).unwrap())
}

fn a1(m: i64) -> Case {
    case(vec![vec![2]], vec![m])
}

fn b(c: &[i64]) -> RootCombo {
    RootCombo::new(c.to_vec()).unwrap()
}

fn poly(t: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(t.iter().copied())
}

fn lhs(r: &catcheck::Report, what: &str) -> Value {
    r.witnesses.iter().find(|w| w.what.starts_with(what)).unwrap().lhs.clone()
}

#[test]
fn pbw_degree_zero_of_two_strands() {
    let r = free::pbw(&a1(0), &b(&[2]), 0);
    assert_eq!(r.status, Status::Pass);
    match lhs(&r, "monomials") {
        Value::Poly(p) => assert_eq!(p.coeff(0), 3),
        v => panic!("{v:?}"),
    }
}

#[test]
fn convolution_examples() {
    let c = a1(0);
    let r = free::convolution(&c, &b(&[0]), 0, 0, 8);
    assert_eq!(r.status, Status::Pass);
    // e(i) R(α_i) e(i) = k[x]
    assert_eq!(lhs(&r, "E_i F_i"), Value::Poly(poly(&[(0, 1), (2, 1), (4, 1), (6, 1), (8, 1)])));
    let a2 = case(vec![vec![2, -1], vec![-1, 2]], vec![0, 0]);
    assert_eq!(free::convolution(&a2, &b(&[1, 0]), 0, 1, 6).status, Status::Pass);
    let aff = case(vec![vec![2, -2], vec![-2, 2]], vec![0, 0]);
    assert_eq!(free::convolution(&aff, &b(&[1, 0]), 0, 0, 6).status, Status::Pass);
}

#[test]
fn exact_examples() {
    for m in 1..=3 {
        let r = kernel::exact(&a1(m), &b(&[0]), 0);
        assert_eq!(r.status, Status::Pass, "{:?}", r.first_failure);
        // k[t]/(t^m)
        let f = r.witnesses.iter().find(|w| w.what.starts_with("pi surjective")).unwrap();
        let want = LaurentPoly::from_terms((0..m).map(|k| (2 * k, 1)));
        assert_eq!(f.rhs, Value::Poly(want));
    }
    let r = kernel::exact(&a1(0), &b(&[1]), 0);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(kernel::exact(&a1(1), &b(&[1]), 0).status, Status::Pass);
}

#[test]
fn taug_examples() {
    assert_eq!(kernel::taug(&a1(1), &b(&[0]), 0).status, Status::Pass);
    assert_eq!(kernel::taug(&a1(1), &b(&[1]), 0).status, Status::Pass);
    let a2 = case(vec![vec![2, -1], vec![-1, 2]], vec![1, 0]);
    assert_eq!(kernel::taug(&a2, &b(&[0, 1]), 0).status, Status::Pass);
}

#[test]
fn sl2_examples() {
    let r = cyclo::sl2(&a1(1), &b(&[0]), 0);
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.input.caps["a"], 1);
    assert_eq!(lhs(&r, "E F"), Value::Poly(LaurentPoly::one()));
    let r = cyclo::sl2(&a1(1), &b(&[1]), 0);
    assert_eq!(r.input.caps["a"], -1);
    assert_eq!(lhs(&r, "q_i^-2 F E"), Value::Poly(poly(&[(-2, 1)])));
    let a2 = case(vec![vec![2, -1], vec![-1, 2]], vec![1, 0]);
    let r = cyclo::sl2(&a2, &b(&[1, 0]), 1);
    assert_eq!((r.status, r.input.caps["a"]), (Status::Pass, 1));
}

#[test]
fn mixed_examples() {
    let a2 = case(vec![vec![2, -1], vec![-1, 2]], vec![1, 1]);
    let r = cyclo::mixed(&a2, &b(&[1, 0]), 0, 1);
    assert_eq!(r.status, Status::Pass);
    assert!(matches!(lhs(&r, "E_i F_j"), Value::Poly(p) if !p.is_zero()));
    let aff = case(vec![vec![2, -2], vec![-2, 2]], vec![1, 0]);
    let r = cyclo::mixed(&aff, &b(&[1, 0]), 0, 1);
    assert_eq!((r.status, r.input.caps["shift"]), (Status::Pass, 2));
    assert_eq!(cyclo::mixed(&a2, &b(&[0, 0]), 0, 1).status, Status::Pass);
}

#[test]
fn phi_examples() {
    for m in 1..=3 {
        assert_eq!(kernel::phi(&a1(m), &b(&[0]), 0, 2).status, Status::Pass);
    }
    let r = kernel::phi(&a1(1), &b(&[2]), 0, 2);
    assert_eq!((r.status, r.input.caps["a"]), (Status::Pass, -3));
    for k in 0..=2 {
        let w = r.witnesses.iter().find(|w| w.what == format!("k={k}: chase vs division")).unwrap();
        assert_eq!(w.lhs, Value::Text("0".into()));
    }
    let r = kernel::phi(&a1(2), &b(&[1]), 0, 0);
    assert_eq!((r.status, r.input.caps["a"]), (Status::Pass, 0));
}

#[test]
fn categorification_examples() {
    for m in 0..=2 {
        for h in 0..=3 {
            let r = cyclo::categorification(&a1(m), &b(&[h]));
            assert_eq!(r.status, Status::Pass, "{m} {h} {:?}", r.first_failure);
        }
    }
    let a2 = case(vec![vec![2, -1], vec![-1, 2]], vec![1, 0]);
    let r = cyclo::categorification(&a2, &b(&[1, 1]));
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.witnesses.iter().filter(|w| w.what.starts_with("e(")).count(), 4);
}

#[test]
fn vanishing_examples() {
    for m in 0..=2 {
        let r = cyclo::vanishing(&a1(m), 3);
        assert_eq!(r.status, Status::Pass);
    }
}
