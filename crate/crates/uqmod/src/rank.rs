//! Rank over `ℚ(q)` of a matrix of Laurent polynomials by fraction-free
//! elimination.

use cartan_core::LaurentPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Dense polynomial in `q`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct P(Vec<BigInt>);

impl P {
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut v: Vec<BigInt>) -> P {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        P(v)
    }

    fn mul(&self, o: &P) -> P {
        if self.is_zero() || o.is_zero() {
            return P(vec![]);
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, y) in o.0.iter().enumerate() {
                v[a + b] += x * y;
            }
        }
        P::trim(v)
    }

    fn sub(&self, o: &P) -> P {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|k| self.0.get(k).cloned().unwrap_or_default() - o.0.get(k).cloned().unwrap_or_default())
            .collect();
        P::trim(v)
    }

    /// Exact quotient; the division is known to be exact.
    fn div_exact(&self, d: &P) -> P {
        let mut rem: Vec<BigRational> = self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let dl = d.0.len();
        let lead = BigRational::from_integer(d.0[dl - 1].clone());
        if rem.len() < dl {
            assert!(self.is_zero(), "inexact division");
            return P(vec![]);
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dl + 1];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + dl - 1] / &lead;
            for (j, dj) in d.0.iter().enumerate() {
                rem[k + j] -= &c * BigRational::from_integer(dj.clone());
            }
            quo[k] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
        P::trim(quo.into_iter().map(|c| {
            assert!(c.is_integer(), "non-integral quotient");
            c.to_integer()
        }).collect())
    }
}

/// Rank of a matrix of Laurent polynomials over the field `ℚ(q)`.
pub fn poly_rank(m: &[Vec<LaurentPoly>]) -> usize {
    let low = m.iter().flatten().filter_map(|p| p.min_exp()).min().unwrap_or(0);
    let mut a: Vec<Vec<P>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    let mut v = vec![];
                    for (e, c) in p.terms() {
                        let k = (e - low) as usize;
                        if v.len() <= k {
                            v.resize(k + 1, BigInt::zero());
                        }
                        v[k] = BigInt::from(c);
                    }
                    P::trim(v)
                })
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev = P(vec![BigInt::one()]);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(r, p);
        for k in r + 1..rows {
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[k][j]).sub(&a[k][c].mul(&a[r][j]));
                a[k][j] = v.div_exact(&prev);
            }
            a[k][c] = P(vec![]);
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn singular_over_the_function_field() {
        // [[q, q^2], [1, q]] has determinant 0
        let m = vec![vec![lp(&[(1, 1)]), lp(&[(2, 1)])], vec![lp(&[(0, 1)]), lp(&[(1, 1)])]];
        assert_eq!(poly_rank(&m), 1);
        let id = vec![vec![lp(&[(-1, 1)]), LaurentPoly::zero()], vec![LaurentPoly::zero(), lp(&[(0, 1), (2, 1)])]];
        assert_eq!(poly_rank(&id), 2);
        assert_eq!(poly_rank(&[vec![LaurentPoly::zero()]]), 0);
        assert_eq!(poly_rank(&[]), 0);
    }

    #[test]
    fn three_by_three() {
        // rows 1 and 2 independent, row 3 = (q+1) row1 - row2
        let r1 = [lp(&[(0, 1)]), lp(&[(1, 1)]), lp(&[(0, 2)])];
        let r2 = [lp(&[(2, 1)]), lp(&[(0, 1)]), lp(&[(1, -1)])];
        let k = lp(&[(0, 1), (1, 1)]);
        let r3: Vec<LaurentPoly> = r1.iter().zip(&r2).map(|(a, b)| &(&k * a) - b).collect();
        assert_eq!(poly_rank(&[r1.to_vec(), r2.to_vec(), r3]), 2);
    }
}
