//! Fixed-size bitsets over alternative ids.

use std::fmt;

pub(crate) fn words_for(size: usize) -> usize {
    size.div_ceil(64).max(1)
}

/// A set of alternative ids drawn from `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltSet {
    size: usize,
    words: Vec<u64>,
}

impl AltSet {
    pub fn empty(size: usize) -> Self {
        AltSet {
            size,
            words: vec![0; words_for(size)],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut s = Self::empty(size);
        for a in 0..size {
            s.insert(a);
        }
        s
    }

    pub fn from_ids(size: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(size);
        for a in ids {
            s.insert(a);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.size
    }

    pub fn insert(&mut self, a: usize) {
        debug_assert!(a < self.size);
        self.words[a / 64] |= 1 << (a % 64);
    }

    pub fn remove(&mut self, a: usize) {
        self.words[a / 64] &= !(1 << (a % 64));
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.size && self.words[a / 64] & (1 << (a % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&a| self.contains(a))
    }

    /// True when every member of `self` is set in `row`.
    pub(crate) fn is_subset_of_words(&self, row: &[u64]) -> bool {
        self.words.iter().zip(row).all(|(s, r)| s & !r == 0)
    }
}

impl fmt::Debug for AltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
