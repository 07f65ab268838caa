//! Strict partial orders over alternatives.
//!
//! Both voter preferences and agendas are strict partial orders; they share
//! the [`StrictOrder`] representation, a transitively closed relation stored
//! as one bitset row per alternative. Closure is computed eagerly on every
//! construction or insertion, so pair queries are a single bit test.

use crate::bitset::{words_for, AltSet};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Transitively closed, irreflexive, antisymmetric relation on `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StrictOrder {
    size: usize,
    words: usize,
    // row `a` holds every `b` with `a > b`
    below: Vec<u64>,
}

impl StrictOrder {
    pub fn empty(size: usize) -> Self {
        let words = words_for(size);
        StrictOrder {
            size,
            words,
            below: vec![0; size * words],
        }
    }

    /// Builds the transitive closure of `pairs`; `(a, b)` reads "a above b".
    pub fn from_pairs(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut order = Self::empty(size);
        for (a, b) in pairs {
            order.check(a)?;
            order.check(b)?;
            if a == b {
                return Err(Error::Cycle(a));
            }
            order.set(a, b);
        }
        order.close()?;
        Ok(order)
    }

    /// A chain over the listed alternatives, best first. Unlisted
    /// alternatives stay incomparable to everything.
    pub fn from_ranking(size: usize, ranking: &[usize]) -> Result<Self> {
        Self::from_layers(size, ranking.iter().map(|&a| vec![a]))
    }

    /// Blocks of mutually incomparable alternatives; every member of an
    /// earlier block is above every member of a later one.
    pub fn from_layers<I, L>(size: usize, layers: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[usize]>,
    {
        let mut order = Self::empty(size);
        let mut seen = AltSet::empty(size);
        let mut above = Vec::new();
        for layer in layers {
            let layer = layer.as_ref();
            for &a in layer {
                order.check(a)?;
                if seen.contains(a) {
                    return Err(Error::usage(format!("alternative {a} listed twice")));
                }
                seen.insert(a);
            }
            for &hi in &above {
                for &lo in layer {
                    order.set(hi, lo);
                }
            }
            above.extend_from_slice(layer);
        }
        Ok(order)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::UnknownAlternative(a))
        }
    }

    fn set(&mut self, a: usize, b: usize) {
        self.below[a * self.words + b / 64] |= 1 << (b % 64);
    }

    pub(crate) fn row(&self, a: usize) -> &[u64] {
        &self.below[a * self.words..(a + 1) * self.words]
    }

    fn close(&mut self) -> Result<()> {
        let w = self.words;
        for k in 0..self.size {
            for i in 0..self.size {
                if self.prefers(i, k) {
                    for j in 0..w {
                        let v = self.below[k * w + j];
                        self.below[i * w + j] |= v;
                    }
                }
            }
        }
        match (0..self.size).find(|&a| self.prefers(a, a)) {
            Some(a) => Err(Error::Cycle(a)),
            None => Ok(()),
        }
    }

    /// `a` is strictly above `b`.
    #[inline]
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.below[a * self.words + b / 64] & (1 << (b % 64)) != 0
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.prefers(a, b) || self.prefers(b, a)
    }

    /// `a` is above every member of `set` (members equal to `a` are ignored).
    pub fn above_all(&self, a: usize, set: &AltSet) -> bool {
        if set.contains(a) {
            let mut s = set.clone();
            s.remove(a);
            s.is_subset_of_words(self.row(a))
        } else {
            set.is_subset_of_words(self.row(a))
        }
    }

    /// Adds `a > b` and re-closes. Fails if `b > a` already holds.
    pub fn insert(&mut self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b || self.prefers(b, a) {
            return Err(Error::Cycle(a));
        }
        if self.prefers(a, b) {
            return Ok(());
        }
        let w = self.words;
        let mut lower = self.row(b).to_vec();
        lower[b / 64] |= 1 << (b % 64);
        for x in 0..self.size {
            if x == a || self.prefers(x, a) {
                for (cell, bits) in self.below[x * w..(x + 1) * w].iter_mut().zip(&lower) {
                    *cell |= bits;
                }
            }
        }
        Ok(())
    }

    pub fn pair_count(&self) -> usize {
        self.below.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_linear(&self) -> bool {
        self.pair_count() == self.size * self.size.saturating_sub(1) / 2
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |a| {
            (0..self.size).filter_map(move |b| self.prefers(a, b).then_some((a, b)))
        })
    }

    /// Unordered pairs left open by the relation.
    pub fn incomparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |a| {
            (a + 1..self.size).filter_map(move |b| (!self.comparable(a, b)).then_some((a, b)))
        })
    }

    pub fn below_count(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The ranking best-first, if the relation is linear.
    pub fn linear_ranking(&self) -> Option<Vec<usize>> {
        if !self.is_linear() {
            return None;
        }
        let mut ranking: Vec<usize> = (0..self.size).collect();
        ranking.sort_by_key(|&a| std::cmp::Reverse(self.below_count(a)));
        Some(ranking)
    }

    /// Every pair of `self` also holds in `other`.
    pub fn is_extended_by(&self, other: &StrictOrder) -> bool {
        self.size == other.size
            && self
                .below
                .iter()
                .zip(&other.below)
                .all(|(s, o)| s & !o == 0)
    }

    /// Calls `visit` with every linear extension, in lexicographic order of
    /// the best-first sequence. Stops early when `visit` returns false.
    /// Returns false if the walk was stopped.
    pub fn for_each_linear_extension(&self, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        let mut placed = AltSet::empty(self.size);
        let mut seq = Vec::with_capacity(self.size);
        self.extend_rec(&mut placed, &mut seq, &mut visit)
    }

    fn extend_rec(
        &self,
        placed: &mut AltSet,
        seq: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if seq.len() == self.size {
            return visit(seq);
        }
        for a in 0..self.size {
            if placed.contains(a) {
                continue;
            }
            // `a` is available once everything above it is placed
            let blocked = (0..self.size).any(|x| !placed.contains(x) && self.prefers(x, a));
            if blocked {
                continue;
            }
            placed.insert(a);
            seq.push(a);
            let go_on = self.extend_rec(placed, seq, visit);
            seq.pop();
            placed.remove(a);
            if !go_on {
                return false;
            }
        }
        true
    }

    /// All linear extensions, or `None` if there are more than `limit`.
    pub fn linear_extensions(&self, limit: usize) -> Option<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let complete = self.for_each_linear_extension(|s| {
            if out.len() == limit {
                return false;
            }
            out.push(s.to_vec());
            true
        });
        complete.then_some(out)
    }

    /// Alternatives strictly above `a`.
    pub fn above_set(&self, a: usize) -> AltSet {
        AltSet::from_ids(self.size, (0..self.size).filter(|&x| self.prefers(x, a)))
    }

    /// Alternatives strictly below `a`.
    pub fn below_set(&self, a: usize) -> AltSet {
        AltSet::from_ids(self.size, (0..self.size).filter(|&x| self.prefers(a, x)))
    }

    /// Alternatives other than `a` that the relation leaves unordered with `a`.
    pub fn incomparable_set(&self, a: usize) -> AltSet {
        AltSet::from_ids(
            self.size,
            (0..self.size).filter(|&x| x != a && !self.comparable(a, x)),
        )
    }

    /// The relation on `keep` (in the given order), re-indexed to `0..keep.len()`.
    pub fn restrict(&self, keep: &[usize]) -> StrictOrder {
        let mut out = StrictOrder::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.prefers(a, b) {
                    out.set(i, j);
                }
            }
        }
        out
    }
}

impl fmt::Debug for StrictOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.linear_ranking() {
            Some(r) => write!(f, "Linear{r:?}"),
            None => f.debug_set().entries(self.pairs()).finish(),
        }
    }
}

/// A voter's strict (possibly partial) preference order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PreferenceOrder(pub StrictOrder);

impl PreferenceOrder {
    pub fn empty(m: usize) -> Self {
        PreferenceOrder(StrictOrder::empty(m))
    }

    pub fn linear(m: usize, ranking: &[usize]) -> Result<Self> {
        if ranking.len() != m {
            return Err(Error::usage(format!(
                "a linear order needs all {m} alternatives, got {}",
                ranking.len()
            )));
        }
        Ok(PreferenceOrder(StrictOrder::from_ranking(m, ranking)?))
    }

    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Ok(PreferenceOrder(StrictOrder::from_pairs(m, pairs)?))
    }

    pub fn from_layers<I, L>(m: usize, layers: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<[usize]>,
    {
        Ok(PreferenceOrder(StrictOrder::from_layers(m, layers)?))
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.0.prefers(a, b)
    }

    pub fn is_linear(&self) -> bool {
        self.0.is_linear()
    }

    pub fn relation(&self) -> &StrictOrder {
        &self.0
    }
}

/// A linear agenda: the order in which alternatives are considered.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Agenda(Vec<usize>);

impl Agenda {
    /// Validates that `sequence` is a permutation of `0..sequence.len()`.
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let m = sequence.len();
        let mut seen = AltSet::empty(m);
        for &a in &sequence {
            if a >= m {
                return Err(Error::UnknownAlternative(a));
            }
            if seen.contains(a) {
                return Err(Error::usage(format!(
                    "alternative {a} appears twice on the agenda"
                )));
            }
            seen.insert(a);
        }
        Ok(Agenda(sequence))
    }

    pub fn identity(m: usize) -> Self {
        Agenda((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn position(&self, a: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == a)
    }

    pub fn to_partial(&self) -> PartialAgenda {
        PartialAgenda(
            StrictOrder::from_ranking(self.0.len(), &self.0).expect("agenda is a permutation"),
        )
    }

    /// The agenda restricted to `keep`, re-indexed the same way as
    /// [`crate::Profile::restrict`].
    pub fn restrict(&self, keep: &[usize]) -> Agenda {
        let mut index = vec![usize::MAX; self.0.len()];
        for (i, &a) in keep.iter().enumerate() {
            index[a] = i;
        }
        Agenda(
            self.0
                .iter()
                .filter_map(|&a| (index[a] != usize::MAX).then_some(index[a]))
                .collect(),
        )
    }
}

/// A partial agenda; `prefers(a, b)` reads "a is considered before b".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartialAgenda(pub StrictOrder);

impl PartialAgenda {
    pub fn unconstrained(m: usize) -> Self {
        PartialAgenda(StrictOrder::empty(m))
    }

    pub fn from_pairs(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Ok(PartialAgenda(StrictOrder::from_pairs(m, pairs)?))
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn before(&self, a: usize, b: usize) -> bool {
        self.0.prefers(a, b)
    }

    /// Alternatives fixed in front of `c`.
    pub fn preceding(&self, c: usize) -> AltSet {
        self.0.above_set(c)
    }

    /// Alternatives whose position relative to `c` is open.
    pub fn unordered_with(&self, c: usize) -> AltSet {
        self.0.incomparable_set(c)
    }

    /// Alternatives fixed behind `c`.
    pub fn succeeding(&self, c: usize) -> AltSet {
        self.0.below_set(c)
    }

    pub fn as_agenda(&self) -> Option<Agenda> {
        self.0.linear_ranking().map(Agenda)
    }

    pub fn is_linear(&self) -> bool {
        self.0.is_linear()
    }

    /// Completions in lexicographic order, or `None` beyond `limit`.
    pub fn completions(&self, limit: usize) -> Option<Vec<Agenda>> {
        self.0
            .linear_extensions(limit)
            .map(|v| v.into_iter().map(Agenda).collect())
    }
}
