//! Agenda control: choosing an agenda so that a given alternative wins.

mod hamiltonian;
mod scc;

pub use hamiltonian::{hamiltonian_cycle, is_hamiltonian_cycle};
pub use scc::{scc_decomposition, SccDecomposition};

use crate::bitset::AltSet;
use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;
use crate::order::Agenda;
use crate::procedure::{Procedure, TiePolicy};
use crate::profile::Profile;
use rayon::prelude::*;
use serde::Serialize;

/// Largest alternative count for the exhaustive even-weight amendment search.
pub const EVEN_AMENDMENT_MAX_ALTERNATIVES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlWitness {
    pub procedure: Procedure,
    pub target: usize,
    pub agenda: Agenda,
}

/// Outcome of the back-to-front successive construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuccessiveControl {
    Witness(ControlWitness),
    /// The construction stalled with this agenda tail (front first): every
    /// alternative outside it is a majority winner over itself plus the tail.
    Blocked {
        tail: Vec<usize>,
    },
}

/// Builds the agenda from the back. The tail starts as `p`; any alternative
/// that is not a majority winner over itself plus the current tail is put
/// in front of it. Ascending ids are tried within one pass.
pub fn successive_control_search(profile: &Profile, p: usize) -> Result<SuccessiveControl> {
    profile.check_alternative(p)?;
    profile.require_complete()?;
    let m = profile.num_alternatives();
    let total = profile.total_weight();
    let mut tail = AltSet::from_ids(m, [p]);
    let mut front_first = vec![p];
    while front_first.len() < m {
        let mut progressed = false;
        for c in 0..m {
            if tail.contains(c) {
                continue;
            }
            let mut with_c = tail.clone();
            with_c.insert(c);
            if 2 * profile.support_over(c, &with_c) <= total {
                tail = with_c;
                front_first.push(c);
                progressed = true;
            }
        }
        if !progressed {
            front_first.reverse();
            return Ok(SuccessiveControl::Blocked { tail: front_first });
        }
    }
    front_first.reverse();
    Ok(SuccessiveControl::Witness(ControlWitness {
        procedure: Procedure::Successive,
        target: p,
        agenda: Agenda::new(front_first)?,
    }))
}

pub fn control_successive(profile: &Profile, p: usize) -> Result<Option<ControlWitness>> {
    Ok(match successive_control_search(profile, p)? {
        SuccessiveControl::Witness(w) => Some(w),
        SuccessiveControl::Blocked { .. } => None,
    })
}

pub fn control_amendment(profile: &Profile, p: usize) -> Result<Option<ControlWitness>> {
    control_amendment_with(profile, p, TiePolicy::Reject)
}

/// With an odd total weight, `p` is controllable iff it lies in the top
/// strong component. Under [`TiePolicy::StatusQuo`] an even total weight is
/// decided by exhaustive search over (placed set, incumbent) states, for at
/// most [`EVEN_AMENDMENT_MAX_ALTERNATIVES`] alternatives.
pub fn control_amendment_with(
    profile: &Profile,
    p: usize,
    policy: TiePolicy,
) -> Result<Option<ControlWitness>> {
    profile.check_alternative(p)?;
    profile.require_complete()?;
    let total = profile.total_weight();
    policy.admit(total)?;
    let g = WeightedMajorityGraph::from_profile(profile);
    let order = if total % 2 == 1 {
        top_cycle_agenda(&g, p)?
    } else {
        even_amendment_agenda(&g, p)?
    };
    Ok(match order {
        Some(seq) => Some(ControlWitness {
            procedure: Procedure::Amendment,
            target: p,
            agenda: Agenda::new(seq)?,
        }),
        None => None,
    })
}

fn top_cycle_agenda(g: &WeightedMajorityGraph, p: usize) -> Result<Option<Vec<usize>>> {
    let scc = scc_decomposition(g)?;
    let top = scc.top();
    if !top.contains(&p) {
        return Ok(None);
    }
    let mut seq = Vec::with_capacity(g.size());
    if top.len() > 1 {
        let cycle = hamiltonian_cycle(g, top)?;
        let k = cycle.len();
        let at = cycle.iter().position(|&x| x == p).expect("p on its cycle");
        // walk the cycle backwards from p's predecessor round to p
        for step in 1..=k {
            seq.push(cycle[(at + k - step) % k]);
        }
    } else {
        seq.push(p);
    }
    let in_seq = AltSet::from_ids(g.size(), seq.iter().copied());
    seq.extend((0..g.size()).filter(|&a| !in_seq.contains(a)));
    Ok(Some(seq))
}

/// Exhaustive amendment control with status-quo ties.
pub fn even_amendment_agenda(g: &WeightedMajorityGraph, p: usize) -> Result<Option<Vec<usize>>> {
    let m = g.size();
    if m > EVEN_AMENDMENT_MAX_ALTERNATIVES {
        return Err(Error::Capacity(format!(
            "even-weight amendment control supports at most {EVEN_AMENDMENT_MAX_ALTERNATIVES} alternatives, got {m}"
        )));
    }
    if m == 1 {
        return Ok(Some(vec![p]));
    }
    let total = g.total_weight();
    let states = 1usize << m;
    const NONE: u8 = u8::MAX;
    // parent[(mask, inc)] = (previous incumbent, alternative added)
    let mut parent = vec![(NONE, NONE); states * m];
    let mut reached = vec![false; states * m];
    for a in 0..m {
        reached[(1 << a) * m + a] = true;
    }
    for mask in 1..states {
        for inc in 0..m {
            if !reached[mask * m + inc] {
                continue;
            }
            for b in 0..m {
                if mask & (1 << b) != 0 {
                    continue;
                }
                let next = if 2 * g.weight(b, inc) > total { b } else { inc };
                let idx = (mask | 1 << b) * m + next;
                if !reached[idx] {
                    reached[idx] = true;
                    parent[idx] = (inc as u8, b as u8);
                }
            }
        }
    }
    let full = states - 1;
    if !reached[full * m + p] {
        return Ok(None);
    }
    let mut seq = Vec::with_capacity(m);
    let (mut mask, mut inc) = (full, p);
    while mask.count_ones() > 1 {
        let (prev, b) = parent[mask * m + inc];
        seq.push(b as usize);
        mask &= !(1 << b);
        inc = prev as usize;
    }
    seq.push(inc);
    seq.reverse();
    Ok(Some(seq))
}

/// Alternatives that win under some agenda, ascending.
pub fn controllable_set(profile: &Profile, procedure: Procedure) -> Result<Vec<usize>> {
    controllable_set_with(profile, procedure, TiePolicy::Reject)
}

pub fn controllable_set_with(
    profile: &Profile,
    procedure: Procedure,
    policy: TiePolicy,
) -> Result<Vec<usize>> {
    profile.require_complete()?;
    policy.admit(profile.total_weight())?;
    let m = profile.num_alternatives();
    match procedure {
        Procedure::Successive => {
            let flags: Vec<bool> = (0..m)
                .into_par_iter()
                .map(|p| control_successive(profile, p).map(|w| w.is_some()))
                .collect::<Result<_>>()?;
            Ok((0..m).filter(|&p| flags[p]).collect())
        }
        Procedure::Amendment => {
            let g = WeightedMajorityGraph::from_profile(profile);
            if profile.total_weight() % 2 == 1 {
                Ok(scc_decomposition(&g)?.top().to_vec())
            } else {
                let mut out = Vec::new();
                for p in 0..m {
                    if even_amendment_agenda(&g, p)?.is_some() {
                        out.push(p);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The top strong component of a majority tournament, ascending.
pub fn top_cycle(graph: &WeightedMajorityGraph) -> Result<Vec<usize>> {
    Ok(scc_decomposition(graph)?.top().to_vec())
}
