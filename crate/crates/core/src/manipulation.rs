//! Coalitional manipulation by added voters under a fixed agenda.
//!
//! Every manipulator casts the same canonical ballot. Contests are decided
//! with strict majorities and the incumbent keeps ties, since the enlarged
//! electorate often has an even total weight.

use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;
use crate::order::{Agenda, PreferenceOrder};
use crate::procedure::{winner, Procedure, RankTable, TiePolicy};
use crate::profile::{Profile, Voter};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManipulationWitness {
    pub procedure: Procedure,
    pub target: usize,
    /// Total manipulator weight.
    pub k: u64,
    /// Individual manipulator weights, when they are not all 1.
    pub weights: Option<Vec<u64>>,
    /// The ballot every manipulator casts, best first.
    pub ballot: Vec<usize>,
    /// Amendment only: the round winners realized, in agenda order.
    pub chain: Vec<usize>,
}

impl ManipulationWitness {
    /// The profile with the coalition's ballots appended.
    pub fn apply(&self, profile: &Profile) -> Result<Profile> {
        let m = profile.num_alternatives();
        let order = PreferenceOrder::linear(m, &self.ballot)?;
        let mut voters = profile.voters().to_vec();
        match &self.weights {
            Some(ws) => voters.extend(ws.iter().map(|&w| Voter::weighted(order.clone(), w))),
            None if self.k > 0 => voters.push(Voter::new(order).with_multiplicity(self.k)),
            None => {}
        }
        profile.with_voters(voters)
    }

    /// Re-evaluates the manipulated profile.
    pub fn verify(&self, profile: &Profile, agenda: &Agenda) -> Result<bool> {
        let manipulated = self.apply(profile)?;
        Ok(winner(&manipulated, agenda, self.procedure, TiePolicy::StatusQuo)?.0 == self.target)
    }
}

/// `i`-th-round manipulated winners for a coalition of total weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManipulatedWinnerTable {
    pub k: u64,
    pub total_weight: u64,
    pub agenda: Vec<usize>,
    /// `rounds[i]` lists the members of W_{i+1} with the chain of round
    /// winners that realizes each, ordered by agenda position.
    pub rounds: Vec<Vec<(usize, Vec<usize>)>>,
}

impl ManipulatedWinnerTable {
    /// Members of W_i (1-based round), ordered by agenda position.
    pub fn members(&self, round: usize) -> Vec<usize> {
        self.rounds[round - 1].iter().map(|(c, _)| *c).collect()
    }

    pub fn chain(&self, round: usize, c: usize) -> Option<&[usize]> {
        self.rounds[round - 1]
            .iter()
            .find(|(x, _)| *x == c)
            .map(|(_, ch)| ch.as_slice())
    }

    pub fn final_winners(&self) -> Vec<usize> {
        self.members(self.rounds.len())
    }

    /// The manipulators' order on the first `round` agenda alternatives
    /// that makes `c` the round winner: chain from latest to earliest,
    /// then the other alternatives as one unordered block.
    pub fn order_for(&self, round: usize, c: usize) -> Option<PreferenceOrder> {
        let chain = self.chain(round, c)?;
        let m = self.agenda.len();
        let mut layers: Vec<Vec<usize>> = chain.iter().rev().map(|&x| vec![x]).collect();
        let rest: Vec<usize> = self.agenda[..round]
            .iter()
            .copied()
            .filter(|x| !chain.contains(x))
            .collect();
        if !rest.is_empty() {
            layers.push(rest);
        }
        PreferenceOrder::from_layers(m, layers).ok()
    }
}

/// With `k` extra voters all ranking `b` above `c`, `b` beats incumbent `c`.
pub fn can_enter(g: &WeightedMajorityGraph, k: u64, b: usize, c: usize) -> bool {
    2 * (g.weight(b, c) + k) > g.total_weight() + k
}

/// With `k` extra voters all ranking `c` above `b`, incumbent `c` holds off `b`.
pub fn can_survive(g: &WeightedMajorityGraph, k: u64, c: usize, b: usize) -> bool {
    2 * g.weight(b, c) <= g.total_weight() + k
}

fn check(profile: &Profile, agenda: &Agenda) -> Result<()> {
    profile.require_complete()?;
    if agenda.len() != profile.num_alternatives() {
        return Err(Error::IncompleteAgenda);
    }
    Ok(())
}

fn ballot_with_top(m: usize, top: &[usize]) -> Vec<usize> {
    let mut ballot = top.to_vec();
    ballot.extend((0..m).filter(|a| !top.contains(a)));
    ballot
}

pub fn manipulated_winner_table(
    profile: &Profile,
    k: u64,
    agenda: &Agenda,
) -> Result<ManipulatedWinnerTable> {
    check(profile, agenda)?;
    let g = WeightedMajorityGraph::from_profile(profile);
    Ok(table_in(&g, k, agenda.as_slice()))
}

fn table_in(g: &WeightedMajorityGraph, k: u64, agenda: &[usize]) -> ManipulatedWinnerTable {
    let mut rounds: Vec<Vec<(usize, Vec<usize>)>> = vec![vec![(agenda[0], vec![agenda[0]])]];
    for &b in &agenda[1..] {
        let prev = rounds.last().expect("nonempty");
        let mut next: Vec<(usize, Vec<usize>)> = prev
            .iter()
            .filter(|(c, _)| can_survive(g, k, *c, b))
            .cloned()
            .collect();
        // members stay in agenda order; the newcomer is the latest
        if let Some((_, chain)) = prev.iter().find(|(c, _)| can_enter(g, k, b, *c)) {
            let mut chain = chain.clone();
            chain.push(b);
            next.push((b, chain));
        }
        rounds.push(next);
    }
    ManipulatedWinnerTable {
        k,
        total_weight: g.total_weight(),
        agenda: agenda.to_vec(),
        rounds,
    }
}

pub fn manipulate_successive(
    profile: &Profile,
    k: u64,
    p: usize,
    agenda: &Agenda,
) -> Result<Option<ManipulationWitness>> {
    manipulate(profile, k, p, agenda, Procedure::Successive)
}

pub fn manipulate_amendment(
    profile: &Profile,
    k: u64,
    p: usize,
    agenda: &Agenda,
) -> Result<Option<ManipulationWitness>> {
    manipulate(profile, k, p, agenda, Procedure::Amendment)
}

pub fn manipulate(
    profile: &Profile,
    k: u64,
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> Result<Option<ManipulationWitness>> {
    profile.check_alternative(p)?;
    check(profile, agenda)?;
    let m = profile.num_alternatives();
    let witness = match procedure {
        Procedure::Successive => {
            let w = ManipulationWitness {
                procedure,
                target: p,
                k,
                weights: None,
                ballot: ballot_with_top(m, &[p]),
                chain: Vec::new(),
            };
            w.verify(profile, agenda)?.then_some(w)
        }
        Procedure::Amendment => {
            let table = manipulated_winner_table(profile, k, agenda)?;
            table.chain(m, p).map(|chain| {
                let top: Vec<usize> = chain.iter().rev().copied().collect();
                ManipulationWitness {
                    procedure,
                    target: p,
                    k,
                    weights: None,
                    ballot: ballot_with_top(m, &top),
                    chain: chain.to_vec(),
                }
            })
        }
    };
    Ok(witness)
}

/// Weighted coalition: only the total weight matters.
pub fn manipulate_weighted(
    profile: &Profile,
    weights: &[u64],
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> Result<Option<ManipulationWitness>> {
    if weights.contains(&0) {
        return Err(Error::usage("coalition weights must be positive"));
    }
    let k = weights.iter().sum();
    Ok(manipulate(profile, k, p, agenda, procedure)?.map(|mut w| {
        w.weights = Some(weights.to_vec());
        w
    }))
}

/// Least coalition weight that makes `p` win, found by binary search over
/// `0..=W+1` where `W` is the total profile weight.
pub fn min_coalition_size(
    profile: &Profile,
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> Result<u64> {
    let (mut lo, mut hi) = (0, profile.total_weight() + 1);
    if manipulate(profile, lo, p, agenda, procedure)?.is_some() {
        return Ok(0);
    }
    // invariant: lo fails, hi succeeds
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if manipulate(profile, mid, p, agenda, procedure)?.is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Linear-scan variant of [`min_coalition_size`].
pub fn min_coalition_size_linear(
    profile: &Profile,
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> Result<u64> {
    let cap = profile.total_weight() + 1;
    for k in 0..cap {
        if manipulate(profile, k, p, agenda, procedure)?.is_some() {
            return Ok(k);
        }
    }
    Ok(cap)
}

/// Minimum successive coalition for every alternative at once, indexed by
/// alternative id.
pub fn successive_coalition_sizes(table: &RankTable, agenda: &[usize]) -> Vec<u64> {
    let w = table.total_weight() as i128;
    let f = table.suffix_first_support(agenda);
    let mut out = vec![0; agenda.len()];
    let mut reject_earlier = 0i128;
    for (y, &a) in agenda.iter().enumerate() {
        let accept_here = w - 2 * f[y] as i128 + 1;
        out[a] = reject_earlier.max(accept_here).max(0) as u64;
        reject_earlier = reject_earlier.max(2 * f[y] as i128 - w);
    }
    out
}

/// Minimum amendment coalition for every alternative at once, indexed by
/// alternative id.
pub fn amendment_coalition_sizes(g: &WeightedMajorityGraph, agenda: &[usize]) -> Vec<u64> {
    let w = g.total_weight() as i128;
    const UNSET: i128 = i128::MAX;
    let mut need = vec![UNSET; g.size()];
    need[agenda[0]] = 0;
    for (i, &b) in agenda.iter().enumerate().skip(1) {
        let mut enter = UNSET;
        for &c in &agenda[..i] {
            let wbc = g.weight(b, c) as i128;
            enter = enter.min(need[c].max(w - 2 * wbc + 1));
            need[c] = need[c].max(2 * wbc - w);
        }
        need[b] = enter.max(0);
    }
    need.into_iter().map(|k| k.max(0) as u64).collect()
}
