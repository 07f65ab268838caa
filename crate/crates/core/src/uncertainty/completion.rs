use crate::error::{Error, Result};
use crate::order::{Agenda, PreferenceOrder, StrictOrder};
use crate::profile::{Profile, Voter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionMode {
    /// Open pairs involving the target are decided against it.
    Discriminating,
    /// Open pairs involving the target are decided for it.
    Privileging,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionSpec {
    pub target: usize,
    pub mode: CompletionMode,
    pub fixed_order: Agenda,
}

impl CompletionSpec {
    pub fn apply(&self, profile: &Profile) -> Result<Profile> {
        let m = profile.num_alternatives();
        profile.check_alternative(self.target)?;
        if self.fixed_order.len() != m {
            return Err(Error::usage("the fixed order must cover every alternative"));
        }
        let voters = profile
            .voters()
            .iter()
            .map(|v| {
                let order = complete_order(
                    v.order.relation(),
                    self.target,
                    self.mode,
                    &self.fixed_order,
                );
                Voter {
                    order,
                    weight: v.weight,
                    multiplicity: v.multiplicity,
                }
            })
            .collect();
        profile.with_voters(voters)
    }
}

/// Decides the target's open pairs per `mode`, then builds the linear
/// extension that always takes the earliest available alternative of
/// `fixed`.
pub fn complete_order(
    order: &StrictOrder,
    target: usize,
    mode: CompletionMode,
    fixed: &Agenda,
) -> PreferenceOrder {
    let m = order.size();
    let mut o = order.clone();
    for x in order.incomparable_set(target).iter() {
        let (hi, lo) = match mode {
            CompletionMode::Discriminating => (x, target),
            CompletionMode::Privileging => (target, x),
        };
        o.insert(hi, lo)
            .expect("open pairs of one alternative never close a cycle");
    }
    let mut placed = vec![false; m];
    let mut ranking = Vec::with_capacity(m);
    while ranking.len() < m {
        let next = fixed
            .as_slice()
            .iter()
            .copied()
            .find(|&a| !placed[a] && (0..m).all(|x| placed[x] || !o.prefers(x, a)))
            .expect("a strict order always has a maximal element");
        placed[next] = true;
        ranking.push(next);
    }
    PreferenceOrder::linear(m, &ranking).expect("ranking is a permutation")
}

pub fn discriminating_completion(
    profile: &Profile,
    c: usize,
    fixed_order: &Agenda,
) -> Result<Profile> {
    CompletionSpec {
        target: c,
        mode: CompletionMode::Discriminating,
        fixed_order: fixed_order.clone(),
    }
    .apply(profile)
}

pub fn privileging_completion(
    profile: &Profile,
    c: usize,
    fixed_order: &Agenda,
) -> Result<Profile> {
    CompletionSpec {
        target: c,
        mode: CompletionMode::Privileging,
        fixed_order: fixed_order.clone(),
    }
    .apply(profile)
}
