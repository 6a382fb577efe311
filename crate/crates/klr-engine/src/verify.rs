//! Self-checks of the rewriting engine against the defining relations.
//!
//! Each function returns a list of human-readable defects; empty means the
//! identities hold exactly on everything that was tried.

use cartan_core::RootCombo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Klr;
use crate::mono::{scalar, Elem, Mono};
use crate::perm::{reflect, table, MAX_N};
use crate::poly::Poly;

/// Every sequence in `I^n`.
pub fn all_seqs(rank: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..rank as u8).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

fn e(nu: &[u8]) -> Elem {
    Elem::mono(Mono::idem(nu))
}

fn swapped(nu: &[u8], k: usize) -> Vec<u8> {
    let mut s = nu.to_vec();
    s.swap(k, k + 1);
    s
}

/// The defining relations on generators, one residue sequence at a time.
pub fn relation_defects(klr: &Klr, n: usize) -> Vec<String> {
    let rank = klr.datum().rank();
    let seqs = all_seqs(rank, n);
    let mut bad = vec![];
    let mut expect = |name: String, lhs: Elem, rhs: Elem| {
        if lhs != rhs {
            bad.push(format!("{name}: {lhs} != {rhs}"));
        }
    };
    let x = |l: usize| klr.x_gen(l, &seqs);
    let t = |k: usize| klr.tau_gen(k, &seqs);
    let one = klr.idempotents(&seqs);
    for nu in &seqs {
        let en = e(nu);
        for mu in &seqs {
            let want = if mu == nu { en.clone() } else { Elem::zero() };
            expect(format!("e({nu:?})e({mu:?})"), klr.mul(&en, &e(mu)), want);
        }
        expect(format!("1 e({nu:?})"), klr.mul(&one, &en), en.clone());
        for l in 0..n {
            expect(format!("x{l} e({nu:?})"), klr.mul(&x(l), &en), klr.mul(&en, &x(l)));
            for m in 0..n {
                let a = klr.mul(&klr.mul(&x(l), &x(m)), &en);
                let b = klr.mul(&klr.mul(&x(m), &x(l)), &en);
                expect(format!("x{l}x{m} e({nu:?})"), a, b);
            }
        }
        for k in 0..n.saturating_sub(1) {
            let tk = t(k);
            expect(
                format!("t{k} e({nu:?})"),
                klr.mul(&tk, &en),
                klr.mul(&e(&swapped(nu, k)), &tk),
            );
            let sq = klr.mul(&klr.mul(&tk, &tk), &en);
            expect(format!("t{k}^2 e({nu:?})"), sq, klr.poly_left(&klr.quad(k, nu), &en));
            for l in 0..n {
                let lhs = &klr.mul(&klr.mul(&tk, &x(l)), &en) - &klr.mul(&klr.mul(&x(reflect(l, k)), &tk), &en);
                let rhs = if nu[k] != nu[k + 1] {
                    Elem::zero()
                } else if l == k {
                    en.scale(&scalar(-1))
                } else if l == k + 1 {
                    en.clone()
                } else {
                    Elem::zero()
                };
                expect(format!("t{k}x{l} e({nu:?})"), lhs, rhs);
            }
            for l in 0..n.saturating_sub(1) {
                if l.abs_diff(k) > 1 {
                    let a = klr.mul(&klr.mul(&tk, &t(l)), &en);
                    let b = klr.mul(&klr.mul(&t(l), &tk), &en);
                    expect(format!("t{k}t{l} e({nu:?})"), a, b);
                }
            }
            if k + 2 < n {
                let (a, b) = (t(k), t(k + 1));
                let lhs = klr.mul(&klr.mul(&klr.mul(&b, &a), &b), &en);
                let rhs = klr.mul(&klr.mul(&klr.mul(&a, &b), &a), &en);
                expect(
                    format!("braid t{k} e({nu:?})"),
                    &lhs - &rhs,
                    klr.poly_left(&klr.qbar(k, nu), &en),
                );
            }
        }
    }
    bad
}

/// Random monomial of weight `beta` with right idempotent drawn from `seqs`
/// or forced to `right`.
fn random_mono(rng: &mut ChaCha8Rng, seqs: &[Vec<u8>], right: Option<&[u8]>, max_exp: u16) -> Mono {
    let nu: Vec<u8> = match right {
        Some(r) => r.to_vec(),
        None => seqs[rng.gen_range(0..seqs.len())].clone(),
    };
    let n = nu.len();
    let w = rng.gen_range(0..table(n).len()) as u16;
    let a: Vec<u16> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
    Mono::new(&nu, w, &a)
}

/// `(ab)c = a(bc)` on `samples` random composable triples.
pub fn associativity_defects(klr: &Klr, beta: &RootCombo, samples: usize, seed: u64) -> Vec<String> {
    let seqs = beta.sequences();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(Mono, Mono, Mono)> = (0..samples)
        .map(|_| {
            let c = random_mono(&mut rng, &seqs, None, 2);
            let b = random_mono(&mut rng, &seqs, Some(&c.left_seq()[..c.n()]), 2);
            let a = random_mono(&mut rng, &seqs, Some(&b.left_seq()[..b.n()]), 2);
            (a, b, c)
        })
        .collect();
    let labels: Vec<String> = klr.datum().labels().to_vec();
    let res = crate::par::map(&triples, |(a, b, c)| {
        let (ea, eb, ec) = (Elem::mono(*a), Elem::mono(*b), Elem::mono(*c));
        let ab = klr.mul(&ea, &eb);
        let bc = klr.mul(&eb, &ec);
        let l = klr.mul(&ab, &ec);
        let r = klr.mul(&ea, &bc);
        let mut out = vec![];
        if l != r {
            out.push(format!(
                "({})({})({}): {} != {}",
                a.render(&labels),
                b.render(&labels),
                c.render(&labels),
                l.render(&labels),
                r.render(&labels)
            ));
        }
        let deg = klr.degree(a) + klr.degree(b) + klr.degree(c);
        if !l.is_zero() && klr.homogeneous_degree(&l) != Some(deg) {
            out.push(format!("degree of ({})({})({}) is not {deg}", a.render(&labels), b.render(&labels), c.render(&labels)));
        }
        out
    });
    res.into_iter().flatten().collect()
}

/// The intertwiner identities in `R(n)` over all of `I^n`.
pub fn intertwiner_defects(klr: &Klr, n: usize) -> Vec<String> {
    let seqs = all_seqs(klr.datum().rank(), n);
    let mut bad = vec![];
    for a in 0..n.saturating_sub(1) {
        let g = klr.intertwiner(a, &seqs).expect("position in range");
        for b in 0..n {
            let lhs = klr.poly_left(&Poly::var(reflect(b, a)), &g);
            let rhs = klr.mul(&g, &klr.x_gen(b, &seqs));
            if lhs != rhs {
                bad.push(format!("x_{} g_{} != g_{} x_{}", reflect(b, a) + 1, a + 1, a + 1, b + 1));
            }
        }
        if a + 2 < n {
            let g1 = klr.intertwiner(a + 1, &seqs).expect("position in range");
            let gg = klr.mul(&g1, &g);
            let lhs = klr.mul(&klr.tau_gen(a, &seqs), &gg);
            let rhs = klr.mul(&gg, &klr.tau_gen(a + 1, &seqs));
            if lhs != rhs {
                bad.push(format!("t_{} g_{} g_{} != g_{} g_{} t_{}", a + 1, a + 2, a + 1, a + 2, a + 1, a + 2));
            }
        }
    }
    bad
}

/// `ψ² = id` and `ψ(ab) = ψ(b)ψ(a)` on random monomials; `ψ` keeps degree.
pub fn psi_defects(klr: &Klr, beta: &RootCombo, samples: usize, seed: u64) -> Vec<String> {
    let seqs = beta.sequences();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = vec![];
    for _ in 0..samples {
        let b = random_mono(&mut rng, &seqs, None, 2);
        let a = random_mono(&mut rng, &seqs, Some(&b.left_seq()[..b.n()]), 2);
        let (ea, eb) = (Elem::mono(a), Elem::mono(b));
        let pa = klr.psi(&ea);
        if klr.psi(&pa) != ea {
            bad.push(format!("psi^2 {a:?}"));
        }
        if klr.homogeneous_degree(&pa) != Some(klr.degree(&a)) {
            bad.push(format!("psi degree {a:?}"));
        }
        let ab = klr.mul(&ea, &eb);
        if klr.psi(&ab) != klr.mul(&klr.psi(&eb), &pa) {
            bad.push(format!("psi anti {a:?} {b:?}"));
        }
    }
    bad
}

const _: () = assert!(MAX_N >= 4);
