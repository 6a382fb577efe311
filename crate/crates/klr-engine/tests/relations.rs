use cartan_core::{CartanDatum, RootCombo};
use klr_engine::verify::{associativity_defects, intertwiner_defects, psi_defects, relation_defects};
use klr_engine::Klr;

fn a2() -> Klr {
    Klr::standard(CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap())
}

fn affine() -> Klr {
    Klr::standard(CartanDatum::build(vec![vec![2, -2], vec![-2, 2]]).unwrap())
}

#[test]
fn defining_relations_a2() {
    let k = a2();
    for n in 1..=3 {
        let bad = relation_defects(&k, n);
        assert!(bad.is_empty(), "{bad:#?}");
    }
}

#[test]
fn defining_relations_affine() {
    let k = affine();
    for n in 1..=3 {
        let bad = relation_defects(&k, n);
        assert!(bad.is_empty(), "{bad:#?}");
    }
}

#[test]
fn defining_relations_b2() {
    let k = Klr::standard(CartanDatum::build(vec![vec![2, -2], vec![-1, 2]]).unwrap());
    let bad = relation_defects(&k, 3);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn intertwiners_up_to_four_strands() {
    for k in [a2(), affine(), Klr::standard(CartanDatum::build(vec![vec![2]]).unwrap())] {
        for n in 2..=4 {
            let bad = intertwiner_defects(&k, n);
            assert!(bad.is_empty(), "{bad:#?}");
        }
    }
}

#[test]
fn associativity_sampled() {
    let k = a2();
    for c in [vec![1, 1], vec![2, 1], vec![1, 2], vec![0, 3]] {
        let b = RootCombo::new(c).unwrap();
        let bad = associativity_defects(&k, &b, 200, 7);
        assert!(bad.is_empty(), "{bad:#?}");
    }
}

#[test]
fn psi_anti_involution() {
    let k = affine();
    let b = RootCombo::new(vec![2, 1]).unwrap();
    assert!(psi_defects(&k, &b, 60, 3).is_empty());
}

#[test]
fn memo_does_not_change_results() {
    let b = RootCombo::new(vec![2, 1]).unwrap();
    let k = a2().without_memo();
    assert!(associativity_defects(&k, &b, 40, 11).is_empty());
}
