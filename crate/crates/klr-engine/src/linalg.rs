//! Sparse row echelon over the rationals.
//!
//! Rows are sparse maps keyed by any ordered basis label. The pivot of a row
//! is its largest key; pivots are normalized to 1. Reduction walks keys in
//! descending order, so the remainder of a vector is canonical for the
//! spanned subspace given the key order.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::mono::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, x: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, a) in x {
        let slot = v.entry(k.clone()).or_insert_with(Scalar::zero);
        *slot += c * a;
        if slot.is_zero() {
            v.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    v: SparseVec<K>,
    tag: SparseVec<usize>,
}

/// Echelonized span, optionally tracking each row as a combination of
/// the inserted vectors ("tags").
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: vec![], pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.pivots.contains_key(k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    /// Rows in pivot order (ascending).
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.pivots.values().map(|&r| &self.rows[r].v)
    }

    fn reduce_inner(&self, v: &mut SparseVec<K>, mut tag: Option<&mut SparseVec<usize>>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &Scalar)>> = match &cursor {
                    None => Box::new(v.iter().rev()),
                    Some(c) => Box::new(v.range(..c.clone()).rev()),
                };
                it.find(|(k, _)| self.pivots.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            let neg = -c;
            axpy(v, &neg, &row.v);
            if let Some(t) = tag.as_deref_mut() {
                axpy(t, &neg, &row.tag);
            }
            cursor = Some(k);
        }
    }

    /// Remainder of `v` modulo the span; zero iff `v` lies in it.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut w = v.clone();
        self.reduce_inner(&mut w, None);
        w
    }

    /// Remainder plus the combination of inserted vectors that was
    /// subtracted: `v = remainder + Σ tag_s · input_s`.
    pub fn reduce_tagged(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut w = v.clone();
        let mut t = SparseVec::new();
        self.reduce_inner(&mut w, Some(&mut t));
        for c in t.values_mut() {
            *c = -c.clone();
        }
        (w, t)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        self.insert_tagged(v, None)
    }

    /// Insert with an identifier; the stored row then remembers how it was
    /// built from identified inputs.
    pub fn insert_tagged(&mut self, mut v: SparseVec<K>, id: Option<usize>) -> bool {
        let mut tag = SparseVec::new();
        if let Some(id) = id {
            tag.insert(id, Scalar::one());
        }
        self.reduce_inner(&mut v, Some(&mut tag));
        let Some((k, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Scalar::one() / lead;
        for c in v.values_mut() {
            *c *= &inv;
        }
        for c in tag.values_mut() {
            *c *= &inv;
        }
        self.pivots.insert(k, self.rows.len());
        self.rows.push(Row { v, tag });
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mono::scalar;

    fn v(items: &[(u32, i64)]) -> SparseVec<u32> {
        items.iter().map(|(k, c)| (*k, scalar(*c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 2)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 4)])));
        assert!(!e.contains(&v(&[(0, 1)])));
    }

    #[test]
    fn tags_reconstruct() {
        let inputs = [v(&[(0, 1), (2, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 3), (1, -1)])];
        let mut e = Echelon::new();
        for (k, x) in inputs.iter().enumerate() {
            e.insert_tagged(x.clone(), Some(k));
        }
        let target = v(&[(0, 5), (1, 7), (2, 2)]);
        let (rem, tag) = e.reduce_tagged(&target);
        let mut rebuilt = rem.clone();
        for (id, c) in &tag {
            axpy(&mut rebuilt, c, &inputs[*id]);
        }
        assert_eq!(rebuilt, target);
        assert!(rem.is_empty());
    }

    #[test]
    fn remainder_is_canonical() {
        let mut e = Echelon::new();
        e.insert(v(&[(1, 1), (3, 1)]));
        let a = e.reduce(&v(&[(3, 2), (0, 1)]));
        let b = e.reduce(&v(&[(1, -2), (0, 1)]));
        assert_eq!(a, b);
    }
}
