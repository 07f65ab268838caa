//! Pairwise majority relations.

use crate::bitset::AltSet;
use crate::error::{Error, Result};
use crate::profile::Profile;
use serde::Serialize;

/// Complete weighted digraph: `weight(a, b)` is the total mass of voters
/// strictly preferring `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedMajorityGraph {
    size: usize,
    total: u64,
    weights: Vec<u64>,
}

impl WeightedMajorityGraph {
    pub fn from_profile(profile: &Profile) -> Self {
        let m = profile.num_alternatives();
        let mut weights = vec![0u64; m * m];
        for v in profile.voters() {
            let rel = v.order.relation();
            let mass = v.mass();
            for a in 0..m {
                for (wi, &word) in rel.row(a).iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = wi * 64 + bits.trailing_zeros() as usize;
                        weights[a * m + b] += mass;
                        bits &= bits - 1;
                    }
                }
            }
        }
        WeightedMajorityGraph {
            size: m,
            total: profile.total_weight(),
            weights,
        }
    }

    /// Builds a graph directly from a weight matrix (row-major, `size x size`).
    pub fn from_matrix(size: usize, total: u64, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != size * size {
            return Err(Error::usage("weight matrix has the wrong shape"));
        }
        if (0..size).any(|a| weights[a * size + a] != 0) {
            return Err(Error::usage("weight matrix diagonal must be zero"));
        }
        Ok(WeightedMajorityGraph {
            size,
            total,
            weights,
        })
    }

    /// Unit-weight graph of a tournament given by its arc predicate.
    pub fn from_tournament(size: usize, arc: impl Fn(usize, usize) -> bool) -> Self {
        let mut weights = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                if a != b && arc(a, b) {
                    weights[a * size + b] = 1;
                }
            }
        }
        WeightedMajorityGraph {
            size,
            total: 1,
            weights,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn weight(&self, a: usize, b: usize) -> u64 {
        self.weights[a * self.size + b]
    }

    /// Strictly more than half of the total weight prefers `a` to `b`.
    #[inline]
    pub fn beats(&self, a: usize, b: usize) -> bool {
        2 * self.weight(a, b) > self.total
    }

    /// Arcs of the unweighted majority digraph.
    pub fn majority_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |a| {
            (0..self.size).filter_map(move |b| (a != b && self.beats(a, b)).then_some((a, b)))
        })
    }

    /// Exactly one majority arc between every two distinct alternatives.
    pub fn is_tournament(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.beats(a, b) != self.beats(b, a)))
    }
}

pub fn build_majority_graph(profile: &Profile) -> WeightedMajorityGraph {
    WeightedMajorityGraph::from_profile(profile)
}

/// Strict weighted majority prefers `a` to `b`.
pub fn beats(profile: &Profile, a: usize, b: usize) -> Result<bool> {
    profile.check_alternative(a)?;
    profile.check_alternative(b)?;
    if a == b {
        return Err(Error::usage("beats() needs two distinct alternatives"));
    }
    let w: u64 = profile
        .voters()
        .iter()
        .filter(|v| v.order.prefers(a, b))
        .map(|v| v.mass())
        .sum();
    Ok(2 * w > profile.total_weight())
}

/// `a` is ranked above every other member of `subset` by a strict weight
/// majority. Voters leaving a needed pair open do not count for `a`.
pub fn is_majority_winner(profile: &Profile, a: usize, subset: &[usize]) -> Result<bool> {
    profile.check_alternative(a)?;
    for &x in subset {
        profile.check_alternative(x)?;
    }
    if !subset.contains(&a) {
        return Err(Error::usage("the candidate must belong to the subset"));
    }
    let set = AltSet::from_ids(profile.num_alternatives(), subset.iter().copied());
    Ok(2 * profile.support_over(a, &set) > profile.total_weight())
}

pub fn is_condorcet_winner(profile: &Profile, a: usize) -> Result<bool> {
    profile.check_alternative(a)?;
    let g = WeightedMajorityGraph::from_profile(profile);
    Ok((0..profile.num_alternatives()).all(|x| x == a || g.beats(a, x)))
}
