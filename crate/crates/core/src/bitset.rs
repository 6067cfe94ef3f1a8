//! Fixed-capacity vertex bitsets.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

/// A set of vertex ids backed by a fixed number of 64-bit words.
///
/// Binary operations between sets of different capacity behave as if the
/// shorter one were padded with zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn with_capacity(bits: usize) -> Self {
        VertexSet {
            words: vec![0; bits.div_ceil(WORD)],
        }
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(bits: usize, it: I) -> Self {
        let mut s = Self::with_capacity(bits);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.words.len() * WORD
    }

    pub fn grow(&mut self, bits: usize) {
        let need = bits.div_ceil(WORD);
        if need > self.words.len() {
            self.words.resize(need, 0);
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD)
            .is_some_and(|w| w >> (v % WORD) & 1 == 1)
    }

    /// Inserts `v`, growing the set if needed. Returns true if `v` was new.
    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        if v / WORD >= self.words.len() {
            self.grow(v + 1);
        }
        let w = &mut self.words[v / WORD];
        let bit = 1u64 << (v % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        match self.words.get_mut(v / WORD) {
            Some(w) => {
                let bit = 1u64 << (v % WORD);
                let had = *w & bit != 0;
                *w &= !bit;
                had
            }
            None => false,
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    /// Equality that ignores trailing capacity.
    pub fn same_members(&self, other: &VertexSet) -> bool {
        let n = self.words.len().max(other.words.len());
        (0..n).all(|i| {
            self.words.get(i).copied().unwrap_or(0) == other.words.get(i).copied().unwrap_or(0)
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Iterates the set bits of a `u128` mask.
pub(crate) fn mask_bits(mut m: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iterate() {
        let mut s = VertexSet::with_capacity(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(130);
        assert!(s.contains(130));
        assert_eq!(s.to_vec(), vec![3, 130]);
        assert!(s.remove(3));
        assert!(!s.contains(3));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn set_algebra_with_mixed_capacity() {
        let a = VertexSet::from_iter_with_capacity(8, [1, 2, 5]);
        let b = VertexSet::from_iter_with_capacity(200, [2, 5, 150]);
        let mut c = a.clone();
        c.intersect_with(&b);
        assert_eq!(c.to_vec(), vec![2, 5]);
        let mut d = a.clone();
        d.union_with(&b);
        assert_eq!(d.to_vec(), vec![1, 2, 5, 150]);
        assert!(c.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(c.same_members(&VertexSet::from_iter_with_capacity(300, [2, 5])));
    }

    #[test]
    fn mask_iteration() {
        let v: Vec<usize> = mask_bits((1u128 << 100) | 0b101).collect();
        assert_eq!(v, vec![0, 2, 100]);
    }
}
