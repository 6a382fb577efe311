use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("diagonal entry a_{i}{i} = {value}, expected 2")]
    Diagonal { i: usize, value: i64 },
    #[error("off-diagonal entry a_{i}{j} = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("a_{i}{j} = {aij} but a_{j}{i} = {aji}: a_ij = 0 iff a_ji = 0 violated")]
    ZeroPattern { i: usize, j: usize, aij: i64, aji: i64 },
    #[error("matrix is not symmetrizable (conflict at ({i},{j}))")]
    NotSymmetrizable { i: usize, j: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("level for {label:?} is negative ({level})")]
    NegativeLevel { label: String, level: i64 },
    #[error("root coefficient for {label:?} is negative ({count})")]
    NegativeRoot { label: String, count: i64 },
    #[error("vector has length {got}, rank is {expected}")]
    Rank { expected: usize, got: usize },
}

/// A symmetrizable generalized Cartan matrix together with its minimal
/// symmetrizers `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    labels: Vec<String>,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CartanDatum {
    /// Validates the GCM axioms and solves `d_i a_ij = d_j a_ji` for the
    /// minimal positive integer symmetrizers. Labels default to `1..=n`.
    pub fn build(matrix: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let labels = (1..=matrix.len()).map(|k| k.to_string()).collect();
        Self::with_labels(labels, matrix)
    }

    pub fn with_labels(labels: Vec<String>, a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = a.len();
        if n == 0 {
            return Err(CartanError::Empty);
        }
        if labels.len() != n {
            return Err(CartanError::LabelCount { expected: n, got: labels.len() });
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(CartanError::DuplicateLabel(l.clone()));
            }
        }
        for (row, r) in a.iter().enumerate() {
            if r.len() != n {
                return Err(CartanError::NotSquare { row, len: r.len(), n });
            }
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CartanError::Diagonal { i: i + 1, value: a[i][i] });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(CartanError::PositiveOffDiagonal { i: i + 1, j: j + 1, value: a[i][j] });
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CartanError::ZeroPattern { i: i + 1, j: j + 1, aij: a[i][j], aji: a[j][i] });
                }
            }
        }
        let d = symmetrize(&a)?;
        Ok(CartanDatum { labels, a, d })
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// `(α_i | α_j) = d_i a_ij`.
    pub fn pair(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// `(β₁ | β₂)`, bilinear in both arguments.
    pub fn sym_form(&self, b1: &RootCombo, b2: &RootCombo) -> i64 {
        let mut s = 0;
        for (i, &ki) in b1.coeffs().iter().enumerate() {
            if ki == 0 {
                continue;
            }
            for (j, &kj) in b2.coeffs().iter().enumerate() {
                s += ki * kj * self.pair(i, j);
            }
        }
        s
    }

    /// `<h_i, Λ - β> = <h_i, Λ> - Σ_j k_j a_ij`.
    pub fn coroot_pair(&self, i: usize, lambda: &DominantWeight, beta: &RootCombo) -> i64 {
        let mut s = lambda.level(i);
        for (j, &kj) in beta.coeffs().iter().enumerate() {
            s -= kj * self.a[i][j];
        }
        s
    }

    /// `(α_i | Λ - β) = d_i <h_i, Λ - β>`.
    pub fn alpha_weight_pair(&self, i: usize, lambda: &DominantWeight, beta: &RootCombo) -> i64 {
        self.d[i] * self.coroot_pair(i, lambda, beta)
    }

    /// `(Λ | β) = Σ_i k_i d_i <h_i, Λ>`.
    pub fn weight_root_pair(&self, lambda: &DominantWeight, beta: &RootCombo) -> i64 {
        beta.coeffs().iter().enumerate().map(|(i, &k)| k * self.d[i] * lambda.level(i)).sum()
    }

    /// Simple root `α_i` as a combination.
    pub fn simple_root(&self, i: usize) -> RootCombo {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        RootCombo { coeffs: c }
    }

    pub fn fundamental_weight(&self, i: usize) -> DominantWeight {
        let mut l = vec![0; self.rank()];
        l[i] = 1;
        DominantWeight { levels: l }
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

// Propagate d along the graph of nonzero entries, one connected component at
// a time, then clear denominators and divide out the gcd.
fn symmetrize(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = a.len();
    // rationals as (num, den)
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..n {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                // d_j = d_i a_ij / a_ji
                let (mut nj, mut dj) = (ni * a[i][j], di * a[j][i]);
                if dj < 0 {
                    nj = -nj;
                    dj = -dj;
                }
                let g = gcd(nj, dj);
                let (nj, dj) = (nj / g, dj / g);
                match d[j] {
                    None => {
                        d[j] = Some((nj, dj));
                        stack.push(j);
                    }
                    Some((pn, pd)) => {
                        if pn * dj != nj * pd {
                            return Err(CartanError::NotSymmetrizable { i: i + 1, j: j + 1 });
                        }
                    }
                }
            }
        }
    }
    // Each component was normalized independently; scale per component so
    // the whole tuple is coprime with minimal entries.
    let mut comp = vec![usize::MAX; n];
    let mut out = vec![0i64; n];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut members = vec![];
        let mut stack = vec![start];
        comp[start] = start;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if j != i && a[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = start;
                    stack.push(j);
                }
            }
        }
        let lcm = members.iter().fold(1i64, |l, &i| {
            let den = d[i].unwrap().1;
            l / gcd(l, den) * den
        });
        let vals: Vec<i64> = members.iter().map(|&i| {
            let (nu, de) = d[i].unwrap();
            nu * (lcm / de)
        }).collect();
        if vals.iter().any(|&v| v <= 0) {
            return Err(CartanError::NotSymmetrizable { i: start + 1, j: start + 1 });
        }
        let g = vals.iter().fold(0, |g, &v| gcd(g, v));
        for (&i, &v) in members.iter().zip(&vals) {
            out[i] = v / g;
        }
    }
    Ok(out)
}

/// Dominant integral weight, stored through its levels `<h_i, Λ>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    levels: Vec<i64>,
}

impl DominantWeight {
    pub fn new(levels: Vec<i64>) -> Result<Self, CartanError> {
        if let Some((i, &l)) = levels.iter().enumerate().find(|(_, &l)| l < 0) {
            return Err(CartanError::NegativeLevel { label: (i + 1).to_string(), level: l });
        }
        Ok(DominantWeight { levels })
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight { levels: vec![0; rank] }
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> i64 {
        self.levels.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|&l| l == 0)
    }
}

/// Element of the positive root cone `Q⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootCombo {
    coeffs: Vec<i64>,
}

impl RootCombo {
    pub fn new(coeffs: Vec<i64>) -> Result<Self, CartanError> {
        if let Some((i, &c)) = coeffs.iter().enumerate().find(|(_, &c)| c < 0) {
            return Err(CartanError::NegativeRoot { label: (i + 1).to_string(), count: c });
        }
        Ok(RootCombo { coeffs })
    }

    pub fn zero(rank: usize) -> Self {
        RootCombo { coeffs: vec![0; rank] }
    }

    /// Weight of a residue sequence.
    pub fn of_seq(rank: usize, seq: &[u8]) -> Self {
        let mut c = vec![0; rank];
        for &s in seq {
            c[s as usize] += 1;
        }
        RootCombo { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn height(&self) -> usize {
        self.coeffs.iter().sum::<i64>() as usize
    }

    pub fn plus(&self, i: usize) -> RootCombo {
        let mut c = self.coeffs.clone();
        c[i] += 1;
        RootCombo { coeffs: c }
    }

    /// `β - α_i`, or `None` when it leaves `Q⁺`.
    pub fn minus(&self, i: usize) -> Option<RootCombo> {
        if self.coeffs[i] == 0 {
            return None;
        }
        let mut c = self.coeffs.clone();
        c[i] -= 1;
        Some(RootCombo { coeffs: c })
    }

    /// All residue sequences of this weight, lexicographically ordered.
    pub fn sequences(&self) -> Vec<Vec<u8>> {
        let mut out = vec![];
        let mut cur = vec![];
        let mut left = self.coeffs.clone();
        fn rec(left: &mut Vec<i64>, cur: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                if left[i] > 0 {
                    left[i] -= 1;
                    cur.push(i as u8);
                    rec(left, cur, n, out);
                    cur.pop();
                    left[i] += 1;
                }
            }
        }
        let n = self.height();
        rec(&mut left, &mut cur, n, &mut out);
        out
    }

    /// Every element of `Q⁺` of height at most `h`, by height then lex.
    pub fn all_up_to(rank: usize, h: usize) -> Vec<RootCombo> {
        let mut out = vec![];
        for height in 0..=h {
            let mut cur = vec![0i64; rank];
            fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<RootCombo>) {
                if pos + 1 == cur.len() {
                    cur[pos] = left;
                    out.push(RootCombo { coeffs: cur.clone() });
                    return;
                }
                for k in (0..=left).rev() {
                    cur[pos] = k;
                    rec(pos + 1, left - k, cur, out);
                }
            }
            rec(0, height as i64, &mut cur, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers_of_small_types() {
        assert_eq!(CartanDatum::build(vec![vec![2]]).unwrap().symmetrizers(), &[1]);
        let a2 = CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.symmetrizers(), &[1, 1]);
        let aff = CartanDatum::build(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(aff.symmetrizers(), &[1, 1]);
        // B2: a12 = -2, a21 = -1 gives d = (1, 2)
        let b2 = CartanDatum::build(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(b2.symmetrizers(), &[1, 2]);
        let g2 = CartanDatum::build(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(g2.symmetrizers(), &[3, 1]);
        // disconnected components are normalized separately
        let a1a1 = CartanDatum::build(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a1a1.symmetrizers(), &[1, 1]);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(matches!(
            CartanDatum::build(vec![vec![2, -1], vec![0, 2]]),
            Err(CartanError::ZeroPattern { .. })
        ));
        assert!(matches!(CartanDatum::build(vec![vec![1]]), Err(CartanError::Diagonal { .. })));
        assert!(matches!(
            CartanDatum::build(vec![vec![2, 1], vec![1, 2]]),
            Err(CartanError::PositiveOffDiagonal { .. })
        ));
        // a 3-cycle with inconsistent ratios
        let m = vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]];
        assert!(matches!(CartanDatum::build(m), Err(CartanError::NotSymmetrizable { .. })));
        assert!(CartanDatum::build(vec![]).is_err());
        assert!(CartanDatum::build(vec![vec![2, -1]]).is_err());
    }

    #[test]
    fn pairings() {
        let a1 = CartanDatum::build(vec![vec![2]]).unwrap();
        let al = RootCombo::new(vec![1]).unwrap();
        assert_eq!(a1.sym_form(&al, &al), 2);
        let lam = DominantWeight::new(vec![2]).unwrap();
        assert_eq!(a1.coroot_pair(0, &lam, &al), 0);
        let a2 = CartanDatum::build(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.sym_form(&a2.simple_root(0), &a2.simple_root(1)), -1);
        assert_eq!(a2.weight_root_pair(&a2.fundamental_weight(0), &RootCombo::new(vec![1, 1]).unwrap()), 1);
    }

    #[test]
    fn sequences_are_lex_ordered() {
        let b = RootCombo::new(vec![2, 1]).unwrap();
        assert_eq!(b.sequences(), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(RootCombo::zero(2).sequences(), vec![Vec::<u8>::new()]);
        assert_eq!(RootCombo::all_up_to(2, 2).len(), 1 + 2 + 3);
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(DominantWeight::new(vec![1, -1]).is_err());
        assert!(RootCombo::new(vec![-1]).is_err());
    }
}
