use super::sampling::AgendaSample;
use crate::control::controllable_set_with;
use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;
use crate::manipulation::{amendment_coalition_sizes, successive_coalition_sizes};
use crate::procedure::{amendment_winner_in, Procedure, RankTable, TiePolicy};
use crate::profile::Profile;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn need_two(profile: &Profile) -> Result<usize> {
    let m = profile.num_alternatives();
    if m < 2 {
        return Err(Error::usage("the ratios need at least two alternatives"));
    }
    Ok(m)
}

/// `(|controllable| - 1) / (m - 1)`.
pub fn control_vulnerability_ratio(profile: &Profile, procedure: Procedure) -> Result<BigRational> {
    control_vulnerability_ratio_with(profile, procedure, TiePolicy::Reject)
}

pub fn control_vulnerability_ratio_with(
    profile: &Profile,
    procedure: Procedure,
    policy: TiePolicy,
) -> Result<BigRational> {
    let m = need_two(profile)?;
    let set = controllable_set_with(profile, procedure, policy)?;
    Ok(ratio(set.len() as u128 - 1, m as u128 - 1))
}

/// The three coalition ratios of one profile over one agenda sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManipulationRatios {
    #[serde(serialize_with = "super::serialize_ratio")]
    pub resistance: BigRational,
    #[serde(serialize_with = "super::serialize_ratio")]
    pub second_winner: BigRational,
    #[serde(serialize_with = "super::serialize_ratio")]
    pub smallest: BigRational,
}

struct AgendaSums {
    all: u128,
    second: u128,
    smallest: u128,
}

/// Coalition sizes are capped at `n + 1`, where `n` is the total voter
/// weight. The sincere winner of each agenda is left out.
pub fn manipulation_ratios(
    profile: &Profile,
    sample: &AgendaSample,
    procedure: Procedure,
    policy: TiePolicy,
) -> Result<ManipulationRatios> {
    let m = need_two(profile)?;
    profile.require_complete()?;
    let n = profile.total_weight();
    policy.admit(n)?;
    if sample.is_empty() {
        return Err(Error::usage("empty agenda sample"));
    }
    let cap = n + 1;
    let table = RankTable::new(profile)?;
    let graph = WeightedMajorityGraph::from_profile(profile);
    let per_agenda: Vec<AgendaSums> = sample
        .agendas
        .par_iter()
        .map(|agenda| {
            let a = agenda.as_slice();
            let (kappa, w) = match procedure {
                Procedure::Successive => (
                    successive_coalition_sizes(&table, a),
                    table.successive_winner(a),
                ),
                Procedure::Amendment => (
                    amendment_coalition_sizes(&graph, a),
                    amendment_winner_in(&graph, a),
                ),
            };
            debug_assert_eq!(kappa[w], 0);
            let rest: Vec<usize> = a.iter().copied().filter(|&c| c != w).collect();
            let second = match procedure {
                Procedure::Successive => table.successive_winner(&rest),
                Procedure::Amendment => amendment_winner_in(&graph, &rest),
            };
            let k = |c: usize| kappa[c].min(cap) as u128;
            AgendaSums {
                all: rest.iter().map(|&c| k(c)).sum(),
                second: k(second),
                smallest: rest.iter().map(|&c| k(c)).min().expect("m >= 2"),
            }
        })
        .collect();
    let x = sample.len() as u128;
    let den = x * (cap as u128);
    Ok(ManipulationRatios {
        resistance: ratio(
            per_agenda.iter().map(|s| s.all).sum(),
            den * (m as u128 - 1),
        ),
        second_winner: ratio(per_agenda.iter().map(|s| s.second).sum(), den),
        smallest: ratio(per_agenda.iter().map(|s| s.smallest).sum(), den),
    })
}

pub fn manipulation_resistance_ratio(
    profile: &Profile,
    sample: &AgendaSample,
    procedure: Procedure,
) -> Result<BigRational> {
    Ok(manipulation_ratios(profile, sample, procedure, TiePolicy::Reject)?.resistance)
}

pub fn second_winner_coalition_ratio(
    profile: &Profile,
    sample: &AgendaSample,
    procedure: Procedure,
) -> Result<BigRational> {
    Ok(manipulation_ratios(profile, sample, procedure, TiePolicy::Reject)?.second_winner)
}

pub fn smallest_coalition_ratio(
    profile: &Profile,
    sample: &AgendaSample,
    procedure: Procedure,
) -> Result<BigRational> {
    Ok(manipulation_ratios(profile, sample, procedure, TiePolicy::Reject)?.smallest)
}
