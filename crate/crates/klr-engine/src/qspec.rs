//! The polynomials `Q_ij(u, v)` entering the quadratic relation.

use std::collections::BTreeMap;

use cartan_core::CartanDatum;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::mono::Scalar;
use crate::poly::Poly;
use crate::perm::MAX_N;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSpecError {
    #[error("pair ({i},{j}): term (p,q) = ({p},{q}) violates homogeneity (a_i|a_i)p + (a_j|a_j)q = -2(a_i|a_j)")]
    Homogeneity { i: String, j: String, p: i64, q: i64 },
    #[error("pair ({i},{j}): negative exponent in term (p,q) = ({p},{q})")]
    NegativeExponent { i: String, j: String, p: i64, q: i64 },
    #[error("pair ({i},{i}): Q_ii must be zero")]
    Diagonal { i: String },
    #[error("pair ({i},{j}): Q_ij(u,v) and Q_ji(v,u) are given differently")]
    Asymmetric { i: String, j: String },
    #[error("pair ({i},{j}): coefficient of u^{p} must be nonzero")]
    Leading { i: String, j: String, p: i64 },
    #[error("residue index {0} out of range")]
    Index(usize),
}

/// Coefficients `t_{i,j;p,q}`, stored for every ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSpec {
    q: Vec<Vec<Vec<(u16, u16, Scalar)>>>,
}

pub type QTerms = Vec<(i64, i64, Scalar)>;

impl QSpec {
    /// `Q_ij(u,v) = u^{-a_ij} + v^{-a_ji}`.
    pub fn standard(datum: &CartanDatum) -> QSpec {
        let r = datum.rank();
        let mut q = vec![vec![vec![]; r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let (p, s) = (-datum.a(i, j), -datum.a(j, i));
                let mut t: BTreeMap<(u16, u16), Scalar> = BTreeMap::new();
                *t.entry((p as u16, 0)).or_insert_with(Scalar::zero) += Scalar::one();
                *t.entry((0, s as u16)).or_insert_with(Scalar::zero) += Scalar::one();
                q[i][j] = t.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
            }
        }
        QSpec { q }
    }

    /// Standard choice with some pairs replaced. A key `(i,j)` gives
    /// `Q_ij(u,v) = Σ t u^p v^q`; `Q_ji` follows by symmetry.
    pub fn with_overrides(datum: &CartanDatum, overrides: &BTreeMap<(usize, usize), QTerms>) -> Result<QSpec, QSpecError> {
        let mut spec = QSpec::standard(datum);
        let r = datum.rank();
        let name = |i: usize| datum.label(i).to_string();
        let mut seen: BTreeMap<(usize, usize), Vec<(u16, u16, Scalar)>> = BTreeMap::new();
        for (&(i, j), terms) in overrides {
            if i >= r {
                return Err(QSpecError::Index(i));
            }
            if j >= r {
                return Err(QSpecError::Index(j));
            }
            if i == j {
                if terms.iter().any(|(_, _, c)| !c.is_zero()) {
                    return Err(QSpecError::Diagonal { i: name(i) });
                }
                continue;
            }
            let mut acc: BTreeMap<(u16, u16), Scalar> = BTreeMap::new();
            for (p, q, c) in terms {
                if *p < 0 || *q < 0 {
                    return Err(QSpecError::NegativeExponent { i: name(i), j: name(j), p: *p, q: *q });
                }
                if datum.pair(i, i) * p + datum.pair(j, j) * q != -2 * datum.pair(i, j) {
                    return Err(QSpecError::Homogeneity { i: name(i), j: name(j), p: *p, q: *q });
                }
                *acc.entry((*p as u16, *q as u16)).or_insert_with(Scalar::zero) += c;
            }
            let list: Vec<(u16, u16, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect();
            let swapped: Vec<(u16, u16, Scalar)> = {
                let mut s: Vec<_> = list.iter().map(|(a, b, c)| (*b, *a, c.clone())).collect();
                s.sort_by_key(|x| (x.0, x.1));
                s
            };
            if let Some(prev) = seen.get(&(j, i)) {
                if *prev != swapped {
                    return Err(QSpecError::Asymmetric { i: name(i), j: name(j) });
                }
            }
            seen.insert((i, j), list.clone());
            spec.q[i][j] = list;
            spec.q[j][i] = swapped;
        }
        spec.validate(datum)?;
        Ok(spec)
    }

    pub fn validate(&self, datum: &CartanDatum) -> Result<(), QSpecError> {
        let r = datum.rank();
        let name = |i: usize| datum.label(i).to_string();
        for i in 0..r {
            if !self.q[i][i].is_empty() {
                return Err(QSpecError::Diagonal { i: name(i) });
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                for (p, q, _) in &self.q[i][j] {
                    let (p, q) = (*p as i64, *q as i64);
                    if datum.pair(i, i) * p + datum.pair(j, j) * q != -2 * datum.pair(i, j) {
                        return Err(QSpecError::Homogeneity { i: name(i), j: name(j), p, q });
                    }
                }
                let lead = -datum.a(i, j);
                if self.coeff(i, j, lead as u16, 0).is_zero() {
                    return Err(QSpecError::Leading { i: name(i), j: name(j), p: lead });
                }
                let mut sw: Vec<_> = self.q[j][i].iter().map(|(a, b, c)| (*b, *a, c.clone())).collect();
                sw.sort_by_key(|x| (x.0, x.1));
                if sw != self.q[i][j] {
                    return Err(QSpecError::Asymmetric { i: name(i), j: name(j) });
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self, i: usize, j: usize) -> &[(u16, u16, Scalar)] {
        &self.q[i][j]
    }

    pub fn coeff(&self, i: usize, j: usize, p: u16, q: u16) -> Scalar {
        self.q[i][j].iter().find(|(a, b, _)| *a == p && *b == q).map(|t| t.2.clone()).unwrap_or_else(Scalar::zero)
    }

    /// `Q_ij(x_u, x_v)`, 0-based positions.
    pub fn poly(&self, i: usize, j: usize, u: usize, v: usize) -> Poly {
        let mut p = Poly::zero();
        for (a, b, c) in &self.q[i][j] {
            let mut e = [0u16; MAX_N];
            e[u] += a;
            e[v] += b;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Flat canonical listing `(i, j, p, q, t)` over ordered pairs, for hashing.
    pub fn listing(&self) -> Vec<(usize, usize, u16, u16, Scalar)> {
        let mut out = vec![];
        for (i, row) in self.q.iter().enumerate() {
            for (j, ts) in row.iter().enumerate() {
                for (p, q, c) in ts {
                    out.push((i, j, *p, *q, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_standard(&self, datum: &CartanDatum) -> bool {
        *self == QSpec::standard(datum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::scalar;

    fn a2() -> CartanDatum {
        CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    #[test]
    fn standard_pairs() {
        let d = a2();
        let q = QSpec::standard(&d);
        assert_eq!(q.terms(0, 1), &[(0, 1, scalar(1)), (1, 0, scalar(1))]);
        assert!(q.terms(0, 0).is_empty());
        let aff = CartanDatum::build(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        let qa = QSpec::standard(&aff);
        assert_eq!(qa.terms(0, 1), &[(0, 2, scalar(1)), (2, 0, scalar(1))]);
        assert!(q.validate(&d).is_ok());
    }

    #[test]
    fn b2_standard_is_homogeneous() {
        let d = CartanDatum::build(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        let q = QSpec::standard(&d);
        assert!(q.validate(&d).is_ok());
        assert_eq!(q.terms(0, 1), &[(0, 1, scalar(1)), (2, 0, scalar(1))]);
    }

    #[test]
    fn override_rejections() {
        let d = a2();
        let mut o = BTreeMap::new();
        o.insert((0, 1), vec![(2, 0, scalar(1))]);
        let err = QSpec::with_overrides(&d, &o).unwrap_err();
        assert_eq!(err, QSpecError::Homogeneity { i: "1".into(), j: "2".into(), p: 2, q: 0 });
        let mut o = BTreeMap::new();
        o.insert((0, 1), vec![(0, 1, scalar(1))]);
        assert!(matches!(QSpec::with_overrides(&d, &o), Err(QSpecError::Leading { .. })));
        let mut o = BTreeMap::new();
        o.insert((0, 1), vec![(1, 0, scalar(2)), (0, 1, scalar(-3))]);
        let q = QSpec::with_overrides(&d, &o).unwrap();
        assert_eq!(q.coeff(1, 0, 1, 0), scalar(-3));
    }
}
