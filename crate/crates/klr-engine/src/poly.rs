//! Polynomials in the dot variables `x_1..x_n`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::mono::{scalar, Scalar};
use crate::perm::MAX_N;

pub type Exps = [u16; MAX_N];

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Exps, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term([0; MAX_N], c);
        p
    }

    pub fn one() -> Poly {
        Poly::constant(Scalar::one())
    }

    /// `x_l^e` (0-based `l`).
    pub fn var_pow(l: usize, e: u16) -> Poly {
        let mut ex = [0; MAX_N];
        ex[l] = e;
        let mut p = Poly::zero();
        p.add_term(ex, Scalar::one());
        p
    }

    pub fn var(l: usize) -> Poly {
        Poly::var_pow(l, 1)
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut p = Poly::zero();
        for (e, x) in &self.terms {
            p.add_term(*e, x * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Complete homogeneous symmetric polynomial `h_d(x_a, x_b)`.
    pub fn complete(a: usize, b: usize, d: u16) -> Poly {
        let mut p = Poly::zero();
        for k in 0..=d {
            let mut e = [0; MAX_N];
            e[a] += k;
            e[b] += d - k;
            p.add_term(e, Scalar::one());
        }
        p
    }

    /// Substitute `x_l ↦ x_{map[l]}` (variables may merge).
    pub fn rename(&self, map: &[usize]) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in &self.terms {
            let mut ne = [0; MAX_N];
            for (l, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[map[l]] += k;
                }
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    pub fn from_int_terms(terms: &[(Exps, i64)]) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(*e, scalar(*c));
        }
        p
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, -c.clone());
        }
        p
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&scalar(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for l in 0..MAX_N {
                    e[l] += e2[l];
                }
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}
