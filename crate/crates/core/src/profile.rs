//! Preference profiles: alternatives plus grouped, weighted voters.

use crate::bitset::AltSet;
use crate::error::{Error, Result};
use crate::order::{PreferenceOrder, StrictOrder};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alternative {
    pub id: usize,
    pub label: String,
}

/// A group of `multiplicity` identical voters, each carrying `weight`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Voter {
    pub order: PreferenceOrder,
    pub weight: u64,
    pub multiplicity: u64,
}

impl Voter {
    pub fn new(order: PreferenceOrder) -> Self {
        Voter {
            order,
            weight: 1,
            multiplicity: 1,
        }
    }

    pub fn weighted(order: PreferenceOrder, weight: u64) -> Self {
        Voter {
            order,
            weight,
            multiplicity: 1,
        }
    }

    pub fn with_multiplicity(mut self, multiplicity: u64) -> Self {
        self.multiplicity = multiplicity;
        self
    }

    /// Weight contributed by the whole group.
    pub fn mass(&self) -> u64 {
        self.weight * self.multiplicity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    alternatives: Vec<Alternative>,
    voters: Vec<Voter>,
}

impl Profile {
    pub fn new(labels: Vec<String>, voters: Vec<Voter>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::usage("a profile needs at least one alternative"));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for v in &voters {
            if v.order.relation().size() != m {
                return Err(Error::usage(format!(
                    "voter order covers {} alternatives, profile has {m}",
                    v.order.relation().size()
                )));
            }
            if v.weight == 0 || v.multiplicity == 0 {
                return Err(Error::usage(
                    "voter weight and multiplicity must be positive",
                ));
            }
        }
        let alternatives = labels
            .into_iter()
            .enumerate()
            .map(|(id, label)| Alternative { id, label })
            .collect();
        Ok(Profile {
            alternatives,
            voters,
        })
    }

    /// Convenience constructor from chains such as `"a>b>c"`. A chain that
    /// omits alternatives leaves them incomparable to everything; `,`
    /// separates independent chain fragments of one voter
    /// (`"a>b,c>b"`). Each entry carries a weight.
    pub fn from_chains(labels: &[&str], voters: &[(&str, u64)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let m = labels.len();
        let mut out = Vec::new();
        for &(spec, weight) in voters {
            let mut pairs = Vec::new();
            for fragment in spec.split(',') {
                let ids = fragment
                    .split('>')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        index
                            .get(s)
                            .copied()
                            .ok_or_else(|| Error::UnknownLabel(s.into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                pairs.extend(ids.windows(2).map(|w| (w[0], w[1])));
            }
            out.push(Voter::weighted(
                PreferenceOrder::from_pairs(m, pairs)?,
                weight,
            ));
        }
        Profile::new(labels, out)
    }

    pub fn num_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn voters(&self) -> &[Voter] {
        &self.voters
    }

    pub fn label(&self, a: usize) -> &str {
        &self.alternatives[a].label
    }

    pub fn labels(&self) -> Vec<String> {
        self.alternatives.iter().map(|a| a.label.clone()).collect()
    }

    pub fn id_of(&self, label: &str) -> Result<usize> {
        self.alternatives
            .iter()
            .position(|a| a.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn check_alternative(&self, a: usize) -> Result<()> {
        if a < self.num_alternatives() {
            Ok(())
        } else {
            Err(Error::UnknownAlternative(a))
        }
    }

    /// Number of voters counting multiplicities.
    pub fn voter_count(&self) -> u64 {
        self.voters.iter().map(|v| v.multiplicity).sum()
    }

    /// Sum of weight x multiplicity over all voter groups.
    pub fn total_weight(&self) -> u64 {
        self.voters.iter().map(Voter::mass).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.voters.iter().all(|v| v.order.is_linear())
    }

    pub fn is_unweighted(&self) -> bool {
        self.voters.iter().all(|v| v.weight == 1)
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::IncompleteProfile)
        }
    }

    /// Total weight of voters ranking `a` above every other member of `set`.
    pub fn support_over(&self, a: usize, set: &AltSet) -> u64 {
        self.voters
            .iter()
            .filter(|v| v.order.relation().above_all(a, set))
            .map(Voter::mass)
            .sum()
    }

    /// A copy with one more voter group appended.
    pub fn with_voter(&self, voter: Voter) -> Result<Self> {
        let mut voters = self.voters.clone();
        voters.push(voter);
        Profile::new(self.labels(), voters)
    }

    /// A copy with its voter groups replaced.
    pub fn with_voters(&self, voters: Vec<Voter>) -> Result<Self> {
        Profile::new(self.labels(), voters)
    }

    /// Identical `(order, weight)` groups merged, first-occurrence order.
    pub fn grouped(&self) -> Self {
        let mut index: HashMap<(&PreferenceOrder, u64), usize> = HashMap::new();
        let mut voters: Vec<Voter> = Vec::new();
        for v in &self.voters {
            match index.get(&(&v.order, v.weight)) {
                Some(&i) => voters[i].multiplicity += v.multiplicity,
                None => {
                    index.insert((&v.order, v.weight), voters.len());
                    voters.push(v.clone());
                }
            }
        }
        Profile {
            alternatives: self.alternatives.clone(),
            voters,
        }
    }

    /// One weight-1 voter per unit of mass.
    pub fn split_into_units(&self) -> Self {
        let voters = self
            .voters
            .iter()
            .map(|v| Voter::new(v.order.clone()).with_multiplicity(v.mass()))
            .collect();
        Profile {
            alternatives: self.alternatives.clone(),
            voters,
        }
    }

    /// The sub-profile on `keep`; alternative `keep[i]` becomes id `i`.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        for &a in keep {
            self.check_alternative(a)?;
        }
        let labels = keep.iter().map(|&a| self.label(a).to_string()).collect();
        let voters = self
            .voters
            .iter()
            .map(|v| Voter {
                order: PreferenceOrder(v.order.relation().restrict(keep)),
                weight: v.weight,
                multiplicity: v.multiplicity,
            })
            .collect();
        Profile::new(labels, voters)
    }

    /// Rankings (best first) with the group mass, for complete profiles.
    pub fn rankings(&self) -> Result<Vec<(Vec<usize>, u64)>> {
        self.voters
            .iter()
            .map(|v| {
                v.order
                    .relation()
                    .linear_ranking()
                    .map(|r| (r, v.mass()))
                    .ok_or(Error::IncompleteProfile)
            })
            .collect()
    }

    /// Orders of the voter groups, for callers that need raw relations.
    pub fn orders(&self) -> impl Iterator<Item = &StrictOrder> {
        self.voters.iter().map(|v| v.order.relation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Profile::from_chains(&["a", "a"], &[]).is_err());
        assert!(Profile::from_chains(&["a", "b"], &[("a>x", 1)]).is_err());
        assert!(Profile::from_chains(&["a", "b"], &[("a>b", 0)]).is_err());
        assert!(Profile::from_chains(&["a", "b"], &[("a>b,b>a", 1)]).is_err());
    }

    #[test]
    fn counts_and_grouping() {
        let p = Profile::from_chains(&["a", "b", "c"], &[("a>b>c", 2), ("a>b>c", 2), ("b>a", 1)])
            .unwrap();
        assert_eq!(p.total_weight(), 5);
        assert_eq!(p.voter_count(), 3);
        assert!(!p.is_complete());
        let g = p.grouped();
        assert_eq!(g.voters().len(), 2);
        assert_eq!(g.voters()[0].multiplicity, 2);
        assert_eq!(g.total_weight(), 5);
        let u = p.split_into_units();
        assert!(u.is_unweighted());
        assert_eq!(u.voter_count(), 5);
    }

    #[test]
    fn restriction_reindexes() {
        let p = Profile::from_chains(&["a", "b", "c"], &[("c>a>b", 1)]).unwrap();
        let r = p.restrict(&[0, 2]).unwrap();
        assert_eq!(r.labels(), vec!["a", "c"]);
        assert_eq!(r.rankings().unwrap()[0].0, vec![1, 0]);
    }
}
