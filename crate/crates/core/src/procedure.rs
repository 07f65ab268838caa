//! Successive and amendment evaluation with per-round traces.

use crate::bitset::AltSet;
use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;
use crate::order::Agenda;
use crate::profile::Profile;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Procedure {
    Successive,
    Amendment,
}

impl Procedure {
    pub const ALL: [Procedure; 2] = [Procedure::Successive, Procedure::Amendment];

    pub fn name(self) -> &'static str {
        match self {
            Procedure::Successive => "successive",
            Procedure::Amendment => "amendment",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Procedure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "successive" | "s" => Ok(Procedure::Successive),
            "amendment" | "a" => Ok(Procedure::Amendment),
            other => Err(Error::usage(format!("unknown procedure `{other}`"))),
        }
    }
}

/// How an even total weight is handled.
///
/// `Reject` refuses to evaluate. `StatusQuo` evaluates with strict
/// majorities: a successive alternative needs more than half the weight,
/// and an amendment challenger needs more than half to unseat the
/// incumbent, so exact ties keep the incumbent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiePolicy {
    #[default]
    Reject,
    StatusQuo,
}

impl TiePolicy {
    pub(crate) fn admit(self, total: u64) -> Result<()> {
        if total.is_multiple_of(2) && self == TiePolicy::Reject {
            Err(Error::EvenTotalWeight(total))
        } else {
            Ok(())
        }
    }
}

impl FromStr for TiePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reject" | "strict" => Ok(TiePolicy::Reject),
            "status-quo" | "statusquo" | "status_quo" => Ok(TiePolicy::StatusQuo),
            other => Err(Error::usage(format!("unknown tie policy `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    /// Successive: the alternative is a majority winner over itself and all later ones.
    Accepted,
    Rejected,
    /// Amendment: the considered alternative is the round winner.
    Survivor,
    Loser,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub considered: usize,
    /// The incumbent faced in an amendment contest.
    pub opponent: Option<usize>,
    pub decision: Decision,
    /// Successive: weight ranking `considered` above all later alternatives.
    /// Amendment: weight preferring `considered` to `opponent`.
    pub support: u64,
    /// Alternative standing after the round, if any.
    pub standing: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub procedure: Procedure,
    pub total_weight: u64,
    pub rounds: Vec<RoundRecord>,
    pub winner: usize,
}

impl RoundTrace {
    /// Re-checks every recorded amendment contest or successive decision
    /// against `profile`.
    pub fn replays(&self, profile: &Profile) -> bool {
        let total = profile.total_weight();
        if total != self.total_weight {
            return false;
        }
        let Some(last) = self.rounds.last() else {
            return false;
        };
        if last.standing != Some(self.winner) {
            return false;
        }
        let g = WeightedMajorityGraph::from_profile(profile);
        self.rounds.iter().enumerate().all(|(i, r)| {
            if r.round != i + 1 {
                return false;
            }
            match (self.procedure, r.opponent) {
                (Procedure::Amendment, Some(inc)) => {
                    let enters = 2 * g.weight(r.considered, inc) > total;
                    r.support == g.weight(r.considered, inc)
                        && (r.decision == Decision::Survivor) == enters
                }
                (Procedure::Amendment, None) => i == 0 && r.decision == Decision::Survivor,
                (Procedure::Successive, _) => {
                    let accepted = 2 * r.support > total;
                    (r.decision == Decision::Accepted) == accepted
                }
            }
        })
    }
}

fn check_inputs(profile: &Profile, agenda: &Agenda, policy: TiePolicy) -> Result<()> {
    profile.require_complete()?;
    if agenda.len() != profile.num_alternatives() {
        return Err(Error::IncompleteAgenda);
    }
    policy.admit(profile.total_weight())
}

pub fn successive_winner(profile: &Profile, agenda: &Agenda) -> Result<(usize, RoundTrace)> {
    successive_winner_with(profile, agenda, TiePolicy::Reject)
}

pub fn successive_winner_with(
    profile: &Profile,
    agenda: &Agenda,
    policy: TiePolicy,
) -> Result<(usize, RoundTrace)> {
    check_inputs(profile, agenda, policy)?;
    let total = profile.total_weight();
    let m = profile.num_alternatives();
    let order = agenda.as_slice();
    let mut rounds = Vec::new();
    for (i, &c) in order.iter().enumerate() {
        let rest = AltSet::from_ids(m, order[i..].iter().copied());
        let support = profile.support_over(c, &rest);
        let accepted = 2 * support > total;
        rounds.push(RoundRecord {
            round: i + 1,
            considered: c,
            opponent: None,
            decision: if accepted {
                Decision::Accepted
            } else {
                Decision::Rejected
            },
            support,
            standing: accepted.then_some(c),
        });
        if accepted {
            return Ok((
                c,
                RoundTrace {
                    procedure: Procedure::Successive,
                    total_weight: total,
                    rounds,
                    winner: c,
                },
            ));
        }
    }
    unreachable!("the last agenda alternative is always accepted")
}

pub fn amendment_winner(profile: &Profile, agenda: &Agenda) -> Result<(usize, RoundTrace)> {
    amendment_winner_with(profile, agenda, TiePolicy::Reject)
}

pub fn amendment_winner_with(
    profile: &Profile,
    agenda: &Agenda,
    policy: TiePolicy,
) -> Result<(usize, RoundTrace)> {
    check_inputs(profile, agenda, policy)?;
    let g = WeightedMajorityGraph::from_profile(profile);
    let total = g.total_weight();
    let order = agenda.as_slice();
    let mut current = order[0];
    let mut rounds = vec![RoundRecord {
        round: 1,
        considered: current,
        opponent: None,
        decision: Decision::Survivor,
        support: total,
        standing: Some(current),
    }];
    for (i, &c) in order.iter().enumerate().skip(1) {
        let support = g.weight(c, current);
        let enters = 2 * support > total;
        let opponent = current;
        if enters {
            current = c;
        }
        rounds.push(RoundRecord {
            round: i + 1,
            considered: c,
            opponent: Some(opponent),
            decision: if enters {
                Decision::Survivor
            } else {
                Decision::Loser
            },
            support,
            standing: Some(current),
        });
    }
    Ok((
        current,
        RoundTrace {
            procedure: Procedure::Amendment,
            total_weight: total,
            rounds,
            winner: current,
        },
    ))
}

pub fn winner(
    profile: &Profile,
    agenda: &Agenda,
    procedure: Procedure,
    policy: TiePolicy,
) -> Result<(usize, RoundTrace)> {
    match procedure {
        Procedure::Successive => successive_winner_with(profile, agenda, policy),
        Procedure::Amendment => amendment_winner_with(profile, agenda, policy),
    }
}

/// Amendment winner read off a majority graph, with status-quo ties.
pub fn amendment_winner_in(graph: &WeightedMajorityGraph, agenda: &[usize]) -> usize {
    let total = graph.total_weight();
    let mut current = agenda[0];
    for &c in &agenda[1..] {
        if 2 * graph.weight(c, current) > total {
            current = c;
        }
    }
    current
}

/// Rank table of a complete profile, for repeated evaluation over many
/// agendas.
#[derive(Clone, Debug)]
pub struct RankTable {
    size: usize,
    total: u64,
    // per group: rank[a] (0 = best)
    ranks: Vec<Vec<usize>>,
    masses: Vec<u64>,
}

impl RankTable {
    pub fn new(profile: &Profile) -> Result<Self> {
        let m = profile.num_alternatives();
        let mut ranks = Vec::new();
        let mut masses = Vec::new();
        for (ranking, mass) in profile.grouped().rankings()? {
            let mut rank = vec![0; m];
            for (i, &a) in ranking.iter().enumerate() {
                rank[a] = i;
            }
            ranks.push(rank);
            masses.push(mass);
        }
        Ok(RankTable {
            size: m,
            total: profile.total_weight(),
            ranks,
            masses,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    /// Entry `i`: weight of voters whose favourite among `agenda[i..]` is
    /// `agenda[i]`.
    pub fn suffix_first_support(&self, agenda: &[usize]) -> Vec<u64> {
        let mut f = vec![0; agenda.len()];
        for (rank, &mass) in self.ranks.iter().zip(&self.masses) {
            let mut best = usize::MAX;
            for i in (0..agenda.len()).rev() {
                let r = rank[agenda[i]];
                if r < best {
                    best = r;
                    f[i] += mass;
                }
            }
        }
        f
    }

    /// Successive winner with strict majorities.
    pub fn successive_winner(&self, agenda: &[usize]) -> usize {
        let f = self.suffix_first_support(agenda);
        let i = f
            .iter()
            .position(|&s| 2 * s > self.total)
            .expect("the last alternative is always accepted");
        agenda[i]
    }
}
