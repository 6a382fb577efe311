//! Symmetric groups with canonical reduced words.
//!
//! Permutations of `{0..n}` are stored in a per-`n` table sorted by
//! (length, canonical word), so a table index doubles as the basis order.
//! The canonical word of `w` is its lexicographically smallest reduced
//! word; it starts with the smallest left descent and every suffix is again
//! canonical.

use std::collections::HashMap;
use std::sync::OnceLock;

pub const MAX_N: usize = 6;

pub const NONE: u8 = u8::MAX;

#[derive(Clone, Debug)]
pub struct PermInfo {
    /// `map[p] = w(p)`.
    pub map: [u8; MAX_N],
    pub inv: [u8; MAX_N],
    pub word: Vec<u8>,
    /// Index of `s_k w` for `k < n-1`.
    pub left: [u16; MAX_N],
    /// First letter of the canonical word, `NONE` for the identity.
    pub first: u8,
}

impl PermInfo {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `ℓ(s_k w) < ℓ(w)`.
    pub fn left_descent(&self, k: usize) -> bool {
        self.inv[k] > self.inv[k + 1]
    }
}

pub struct PermTable {
    pub n: usize,
    pub perms: Vec<PermInfo>,
    index: HashMap<[u8; MAX_N], u16>,
}

impl PermTable {
    pub fn get(&self, w: u16) -> &PermInfo {
        &self.perms[w as usize]
    }

    pub fn index_of(&self, map: &[u8; MAX_N]) -> u16 {
        self.index[map]
    }

    pub fn identity(&self) -> u16 {
        0
    }

    /// Permutation of a word of simple reflections (leftmost acts last).
    pub fn from_word(&self, word: &[u8]) -> u16 {
        let mut w = self.identity();
        for &k in word.iter().rev() {
            w = self.get(w).left[k as usize];
        }
        w
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }
}

fn build(n: usize) -> PermTable {
    let mut maps: Vec<[u8; MAX_N]> = vec![];
    let mut cur = [0u8; MAX_N];
    let mut used = [false; MAX_N];
    fn rec(pos: usize, n: usize, cur: &mut [u8; MAX_N], used: &mut [bool; MAX_N], out: &mut Vec<[u8; MAX_N]>) {
        if pos == n {
            out.push(*cur);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[pos] = v as u8;
                rec(pos + 1, n, cur, used, out);
                used[v] = false;
            }
        }
    }
    rec(0, n, &mut cur, &mut used, &mut maps);
    let inv_of = |m: &[u8; MAX_N]| {
        let mut inv = [0u8; MAX_N];
        for p in 0..n {
            inv[m[p] as usize] = p as u8;
        }
        inv
    };
    let length = |m: &[u8; MAX_N]| {
        let mut l = 0;
        for p in 0..n {
            for q in p + 1..n {
                if m[p] > m[q] {
                    l += 1;
                }
            }
        }
        l
    };
    maps.sort_by_key(length);
    // canonical words, increasing length
    let mut words: HashMap<[u8; MAX_N], Vec<u8>> = HashMap::new();
    for m in &maps {
        let inv = inv_of(m);
        let j = (0..n.saturating_sub(1)).find(|&k| inv[k] > inv[k + 1]);
        let word = match j {
            None => vec![],
            Some(j) => {
                let mut sm = *m;
                for p in 0..n {
                    sm[p] = swap(sm[p], j as u8);
                }
                let mut w = vec![j as u8];
                w.extend_from_slice(&words[&sm]);
                w
            }
        };
        words.insert(*m, word);
    }
    maps.sort_by(|a, b| {
        let (wa, wb) = (&words[a], &words[b]);
        wa.len().cmp(&wb.len()).then_with(|| wa.cmp(wb))
    });
    let index: HashMap<[u8; MAX_N], u16> = maps.iter().enumerate().map(|(k, m)| (*m, k as u16)).collect();
    let perms = maps
        .iter()
        .map(|m| {
            let mut left = [0u16; MAX_N];
            for k in 0..n.saturating_sub(1) {
                let mut sm = *m;
                for p in 0..n {
                    sm[p] = swap(sm[p], k as u8);
                }
                left[k] = index[&sm];
            }
            let word = words[m].clone();
            PermInfo { map: *m, inv: inv_of(m), first: word.first().copied().unwrap_or(NONE), word, left }
        })
        .collect();
    PermTable { n, perms, index }
}

fn swap(v: u8, k: u8) -> u8 {
    if v == k {
        k + 1
    } else if v == k + 1 {
        k
    } else {
        v
    }
}

/// Shared table for `S_n`, built on first use.
pub fn table(n: usize) -> &'static PermTable {
    static TABLES: [OnceLock<PermTable>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    assert!(n <= MAX_N, "rank {n} exceeds MAX_N = {MAX_N}");
    TABLES[n].get_or_init(|| build(n))
}

/// `s_k(p)` on positions.
pub fn reflect(p: usize, k: usize) -> usize {
    swap(p as u8, k as u8) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_reduced_lexmin(t: &PermTable, w: u16) -> bool {
        // brute force: every reduced word of the same length, compare lex
        let target = t.get(w);
        let len = target.len();
        let mut best: Option<Vec<u8>> = None;
        fn rec(t: &PermTable, cur: &mut Vec<u8>, len: usize, target: u16, best: &mut Option<Vec<u8>>) {
            if cur.len() == len {
                if t.from_word(cur) == target && best.as_ref().is_none_or(|b| cur[..] < b[..]) {
                    *best = Some(cur.clone());
                }
                return;
            }
            for k in 0..t.n - 1 {
                cur.push(k as u8);
                rec(t, cur, len, target, best);
                cur.pop();
            }
        }
        rec(t, &mut vec![], len, w, &mut best);
        best.as_deref() == Some(&target.word[..])
    }

    #[test]
    fn canonical_words_are_lexmin() {
        for n in 1..=4 {
            let t = table(n);
            let fact: usize = (1..=n).product();
            assert_eq!(t.len(), fact);
            for w in 0..t.len() as u16 {
                assert!(is_reduced_lexmin(t, w));
                assert_eq!(t.from_word(&t.get(w).word), w);
            }
        }
    }

    #[test]
    fn suffixes_stay_canonical() {
        let t = table(5);
        for info in &t.perms {
            if info.is_empty() {
                continue;
            }
            let rest = t.get(info.left[info.first as usize]);
            assert_eq!(&rest.word[..], &info.word[1..]);
        }
    }

    #[test]
    fn longest_element() {
        let t = table(3);
        assert_eq!(t.perms.last().unwrap().word, vec![0, 1, 0]);
        let t4 = table(4);
        assert_eq!(t4.perms.last().unwrap().len(), 6);
    }
}
