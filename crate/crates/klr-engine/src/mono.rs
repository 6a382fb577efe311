//! Basis monomials `τ_w x^a e(ν)` and their linear combinations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::perm::{table, MAX_N};

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// `τ_w x^a e(ν)` where `ν` is the right idempotent.
///
/// The derived order is the basis order: `ν` lexicographic, then `w` by its
/// table index (length, then canonical word), then exponents.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    pub nu: [u8; MAX_N],
    pub w: u16,
    pub a: [u16; MAX_N],
    pub n: u8,
}

impl Mono {
    pub fn idem(nu: &[u8]) -> Mono {
        assert!(nu.len() <= MAX_N, "at most {MAX_N} strands are supported");
        let mut s = [0u8; MAX_N];
        s[..nu.len()].copy_from_slice(nu);
        Mono { nu: s, w: 0, a: [0; MAX_N], n: nu.len() as u8 }
    }

    pub fn new(nu: &[u8], w: u16, a: &[u16]) -> Mono {
        let mut m = Mono::idem(nu);
        m.w = w;
        m.a[..a.len()].copy_from_slice(a);
        m
    }

    /// Monomial from a word of crossings, which must be reduced and canonical.
    pub fn from_word(nu: &[u8], word: &[u8], a: &[u16]) -> Mono {
        let t = table(nu.len());
        let w = t.from_word(word);
        debug_assert_eq!(t.get(w).word, word, "word is not canonical");
        Mono::new(nu, w, a)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn seq(&self) -> &[u8] {
        &self.nu[..self.n()]
    }

    pub fn exps(&self) -> &[u16] {
        &self.a[..self.n()]
    }

    pub fn word(&self) -> &'static [u8] {
        &table(self.n()).get(self.w).word
    }

    pub fn crossings(&self) -> usize {
        table(self.n()).get(self.w).len()
    }

    pub fn with_w(&self, w: u16) -> Mono {
        Mono { w, ..*self }
    }

    /// Left idempotent `w·ν`.
    pub fn left_seq(&self) -> [u8; MAX_N] {
        let info = table(self.n()).get(self.w);
        let mut out = [0u8; MAX_N];
        for p in 0..self.n() {
            out[info.map[p] as usize] = self.nu[p];
        }
        out
    }

    pub fn is_idempotent(&self) -> bool {
        self.w == 0 && self.a.iter().all(|&e| e == 0)
    }

    /// Render with residue labels, `t1*t2*x1^2*e(1,2)`.
    pub fn render(&self, labels: &[String]) -> String {
        let mut parts: Vec<String> = self.word().iter().map(|k| format!("t{}", k + 1)).collect();
        for (p, &e) in self.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", p + 1)),
                _ => parts.push(format!("x{}^{}", p + 1, e)),
            }
        }
        let seq: Vec<&str> = self.seq().iter().map(|&i| labels[i as usize].as_str()).collect();
        parts.push(format!("e({})", seq.join(",")));
        parts.join("*")
    }
}

/// Finite combination of basis monomials with rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Elem {
    terms: BTreeMap<Mono, Scalar>,
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::default()
    }

    pub fn mono(m: Mono) -> Elem {
        Elem::term(m, Scalar::one())
    }

    pub fn term(m: Mono, c: Scalar) -> Elem {
        let mut e = Elem::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_map(terms: BTreeMap<Mono, Scalar>) -> Elem {
        let mut e = Elem { terms };
        e.terms.retain(|_, c| !c.is_zero());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn monos(&self) -> impl Iterator<Item = &Mono> {
        self.terms.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<Mono, Scalar> {
        self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Elem, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        if c.is_zero() {
            return Elem::zero();
        }
        Elem { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Ambient strand count, `None` for zero.
    pub fn ambient(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.n())
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&m.render(labels));
        }
        s
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=u8::MAX as usize).map(|k| k.to_string()).collect();
        write!(f, "{}", self.render(&labels))
    }
}

impl AddAssign<&Elem> for Elem {
    fn add_assign(&mut self, rhs: &Elem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Elem> for Elem {
    fn sub_assign(&mut self, rhs: &Elem) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Add for Elem {
    type Output = Elem;
    fn add(mut self, rhs: Elem) -> Elem {
        self += &rhs;
        self
    }
}

impl Sub for Elem {
    type Output = Elem;
    fn sub(mut self, rhs: Elem) -> Elem {
        self -= &rhs;
        self
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl FromIterator<(Mono, Scalar)> for Elem {
    fn from_iter<T: IntoIterator<Item = (Mono, Scalar)>>(iter: T) -> Self {
        let mut e = Elem::zero();
        for (m, c) in iter {
            e.add_term(m, c);
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_idempotent_follows_strands() {
        // τ1 e(1,2): strand at position 0 ends at position 1
        let m = Mono::from_word(&[0, 1], &[0], &[0, 0]);
        assert_eq!(&m.left_seq()[..2], &[1, 0]);
        let m3 = Mono::from_word(&[0, 1, 2], &[0, 1], &[0, 0, 0]);
        // w = s1∘s2 sends strands 0,1,2 to 1,2,0
        assert_eq!(&m3.left_seq()[..3], &[2, 0, 1]);
    }

    #[test]
    fn zero_terms_are_purged() {
        let m = Mono::idem(&[0]);
        let mut e = Elem::mono(m);
        e.add_term(m, scalar(-1));
        assert!(e.is_zero());
        assert_eq!(e.to_string(), "0");
    }

    #[test]
    fn render_form() {
        let labels = vec!["i".to_string()];
        let m = Mono::from_word(&[0, 0], &[0], &[2, 1]);
        assert_eq!(m.render(&labels), "t1*x1^2*x2*e(i,i)");
        let e = Elem::term(m, scalar(-3)) + Elem::mono(Mono::idem(&[0, 0]));
        assert_eq!(e.render(&labels), "e(i,i) - 3*t1*x1^2*x2*e(i,i)");
    }
}
