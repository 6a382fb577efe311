use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use thiserror::Error;

/// Element of `ℤ[q, q⁻¹]`. Zero coefficients are never stored, so equality
/// is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("Laurent coefficient overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c q^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0);
        *v = checked(v.checked_add(c));
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitute `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    /// Substitute `q ↦ q^d`.
    pub fn dilate(&self, d: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e * d, c)).collect() }
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().fold(0i64, |s, &c| checked(s.checked_add(c)))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Drop every term of exponent above `d`.
    pub fn truncate_above(&self, d: i64) -> Self {
        LaurentPoly { terms: self.terms.range(..=d).map(|(&e, &c)| (e, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (e, checked(c.checked_mul(k)))))
    }

    /// Exact division by a Laurent polynomial; `None` when not exact.
    pub fn div_exact(&self, other: &LaurentPoly) -> Option<LaurentPoly> {
        if other.is_zero() {
            return None;
        }
        let (lo, lc) = other.terms.iter().next_back().map(|(&e, &c)| (e, c)).unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let floor = self.min_exp().unwrap_or(0) - other.min_exp().unwrap();
        while let Some((&e, &c)) = rem.terms.iter().next_back() {
            if c % lc != 0 || e - lo < floor {
                return None;
            }
            let t = LaurentPoly::monomial(c / lc, e - lo);
            rem = &rem - &(&t * other);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents: `1 + q^2`, `q^-1 + q`, `2 - 3q^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.terms.iter().enumerate() {
            let a = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "q")?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse Laurent polynomial term {0:?}")]
pub struct ParseLaurentError(pub String);

impl FromStr for LaurentPoly {
    type Err = ParseLaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        // split on binary + / - separated by spaces
        let mut toks = vec![];
        let mut sign = 1i64;
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let next = [" + ", " - "].iter().filter_map(|p| rest.find(p).map(|k| (k, *p))).min();
            match next {
                Some((k, p)) => {
                    toks.push((sign, &rest[..k]));
                    sign = if p == " - " { -1 } else { 1 };
                    rest = &rest[k + 3..];
                }
                None => {
                    toks.push((sign, rest));
                    break;
                }
            }
        }
        let mut out = LaurentPoly::zero();
        for (sg, t) in toks {
            let bad = || ParseLaurentError(t.to_string());
            let t = t.trim();
            let (c, e) = match t.find('q') {
                None => (t.parse::<i64>().map_err(|_| bad())?, 0),
                Some(k) => {
                    let c = if k == 0 { 1 } else { t[..k].parse::<i64>().map_err(|_| bad())? };
                    let tail = &t[k + 1..];
                    let e = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if c < 0 {
                return Err(bad());
            }
            out.add_term(e, sg * c);
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, checked(c1.checked_mul(c2)));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Quantum integer `[n]_i = (q_i^n - q_i^{-n}) / (q_i - q_i^{-1})` with
/// `q_i = q^{d_i}`.
pub fn qint(n: i64, d: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let (sign, m) = if n < 0 { (-1, -n) } else { (1, n) };
    // q^{-(m-1)} + q^{-(m-3)} + ... + q^{m-1}
    let mut e = -(m - 1);
    while e < m {
        p.add_term(e * d, sign);
        e += 2;
    }
    p
}

/// `[n]_i! = [1]_i ⋯ [n]_i`; `None` for negative `n`.
pub fn qfact(n: i64, d: i64) -> Option<LaurentPoly> {
    if n < 0 {
        return None;
    }
    Some((1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k, d)))
}

/// Quantum binomial `[m choose k]_i`, always in `ℤ[q, q⁻¹]`.
pub fn qbinom(m: i64, k: i64, d: i64) -> Option<LaurentPoly> {
    if m < 0 || k < 0 || k > m {
        return None;
    }
    let num = qfact(m, d)?;
    let den = &qfact(k, d)? * &qfact(m - k, d)?;
    num.div_exact(&den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quantum_integers() {
        assert!(qint(0, 1).is_zero());
        assert_eq!(qint(2, 1), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(qint(3, 2), LaurentPoly::from_terms([(-4, 1), (0, 1), (4, 1)]));
        assert_eq!(qbinom(2, 1, 1).unwrap(), qint(2, 1));
        assert!(qfact(-1, 1).is_none());
        assert_eq!(qbinom(4, 2, 1).unwrap().eval_one(), 6);
    }

    #[test]
    fn display_is_ascending() {
        let p = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        assert_eq!(p.to_string(), "1 + q^2");
        assert_eq!(qint(2, 1).to_string(), "q^-1 + q");
        assert_eq!(LaurentPoly::from_terms([(0, 2), (4, -3)]).to_string(), "2 - 3q^4");
        assert_eq!(LaurentPoly::monomial(-1, -2).to_string(), "-q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let a = qint(2, 1);
        let b = &a * &qint(3, 1);
        assert_eq!(b.div_exact(&a).unwrap(), qint(3, 1));
        assert!(qint(3, 1).div_exact(&qint(2, 1)).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn parse_roundtrip(p in arb_poly()) {
            let s = p.to_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), p);
        }

        #[test]
        fn qint_bar_invariant(n in -12i64..12, d in 1i64..4) {
            prop_assert_eq!(qint(n, d).bar(), qint(n, d));
            prop_assert_eq!(qint(-n, d), -&qint(n, d));
        }

        #[test]
        fn qbinom_positive(m in 0i64..=8, k in 0i64..=8, d in 1i64..3) {
            prop_assume!(k <= m);
            let b = qbinom(m, k, d).unwrap();
            prop_assert!(b.has_nonnegative_coeffs());
            prop_assert_eq!(b.bar(), b.clone());
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
