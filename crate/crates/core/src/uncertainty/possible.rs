use super::feasibility::{solve_feasibility, FeasibilitySystem, Relation};
use super::{PossibleWitness, SearchConfig};
use crate::error::{Error, Result};
use crate::order::{Agenda, PartialAgenda, PreferenceOrder};
use crate::procedure::{winner, Procedure};
use crate::profile::{Profile, Voter};
use rayon::prelude::*;
use serde::Serialize;

/// A completed agenda plus one guessed winner per round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundGuess {
    pub agenda: Agenda,
    /// Position of the target on the agenda (0-based).
    pub target_position: usize,
    /// `winners[i]` is the guessed winner after round `i + 1`.
    pub winners: Vec<usize>,
}

/// Every round-winner sequence that passes the sanity condition: a new
/// round winner is always the alternative just considered, and the target
/// wins its own round and every later one.
pub fn round_guesses(agenda: &Agenda, p: usize) -> Vec<RoundGuess> {
    let y = agenda.position(p).expect("target on agenda");
    let a = agenda.as_slice();
    let mut out = Vec::new();
    let mut winners = vec![a[0]];
    guesses_rec(a, y, &mut winners, &mut |w| {
        out.push(RoundGuess {
            agenda: agenda.clone(),
            target_position: y,
            winners: w.to_vec(),
        });
        true
    });
    out
}

// Extends `winners` (rounds 0..len) up to round y, then fixes p afterwards.
// `visit` returns false to stop.
fn guesses_rec(
    a: &[usize],
    y: usize,
    winners: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let i = winners.len();
    if i > y {
        let mut full = winners.clone();
        full.extend(std::iter::repeat_n(a[y], a.len() - full.len()));
        return visit(&full);
    }
    let prev = winners[i - 1];
    let options: &[usize] = if i == y { &[a[i]] } else { &[prev, a[i]] };
    for &w in options {
        winners.push(w);
        let go = guesses_rec(a, y, winners, visit);
        winners.pop();
        if !go {
            return false;
        }
    }
    true
}

struct Group {
    weight: u64,
    count: u64,
    completions: Vec<Vec<usize>>,
    ranks: Vec<Vec<usize>>,
}

pub(super) struct Completions {
    m: usize,
    total: u64,
    groups: Vec<Group>,
    // max_margin[x * m + y]: best possible (weight x over y) - (weight y over x)
    max_margin: Vec<i128>,
}

impl Completions {
    pub(super) fn new(profile: &Profile, config: &SearchConfig) -> Result<Self> {
        let m = profile.num_alternatives();
        let mut groups = Vec::new();
        let mut variables = 0usize;
        for v in profile.grouped().voters() {
            let budget = config.max_variables.saturating_sub(variables);
            let completions = v
                .order
                .relation()
                .linear_extensions(budget)
                .ok_or_else(|| {
                    Error::Capacity(format!(
                        "more than {} completion variables",
                        config.max_variables
                    ))
                })?;
            variables += completions.len();
            let ranks = completions
                .iter()
                .map(|c| {
                    let mut r = vec![0; m];
                    for (i, &a) in c.iter().enumerate() {
                        r[a] = i;
                    }
                    r
                })
                .collect();
            groups.push(Group {
                weight: v.weight,
                count: v.multiplicity,
                completions,
                ranks,
            });
        }
        let mut max_margin = vec![0i128; m * m];
        for v in profile.voters() {
            let mass = v.mass() as i128;
            for x in 0..m {
                for y in 0..m {
                    if x != y {
                        max_margin[x * m + y] += if v.order.prefers(y, x) { -mass } else { mass };
                    }
                }
            }
        }
        Ok(Completions {
            m,
            total: profile.total_weight(),
            groups,
            max_margin,
        })
    }

    fn system(&self) -> (FeasibilitySystem, Vec<usize>) {
        let mut sys = FeasibilitySystem::new();
        let mut bases = Vec::new();
        for g in &self.groups {
            bases.push(sys.add_group(g.count, g.completions.len()).start);
        }
        (sys, bases)
    }

    fn terms(
        &self,
        bases: &[usize],
        coef: impl Fn(usize, &Group, usize) -> i64,
    ) -> Vec<(usize, i64)> {
        let mut t = Vec::new();
        for (gi, (g, &base)) in self.groups.iter().zip(bases).enumerate() {
            for ci in 0..g.completions.len() {
                let a = coef(gi, g, ci);
                if a != 0 {
                    t.push((base + ci, a));
                }
            }
        }
        t
    }

    fn realize(&self, profile: &Profile, x: &[u64], bases: &[usize]) -> Result<Profile> {
        let mut voters = Vec::new();
        for (g, &base) in self.groups.iter().zip(bases) {
            for (ci, c) in g.completions.iter().enumerate() {
                let n = x[base + ci];
                if n > 0 {
                    let order = PreferenceOrder::linear(self.m, c)?;
                    voters.push(Voter::weighted(order, g.weight).with_multiplicity(n));
                }
            }
        }
        profile.with_voters(voters)
    }

    fn successive_system(&self, agenda: &[usize], y: usize) -> (FeasibilitySystem, Vec<usize>) {
        let (mut sys, bases) = self.system();
        let w = self.total as i64;
        // tops[g][ci][i]: favourite of completion ci among agenda[i..]
        let tops: Vec<Vec<Vec<usize>>> = self
            .groups
            .iter()
            .map(|g| {
                g.ranks
                    .iter()
                    .map(|rank| {
                        let mut top = vec![0; agenda.len()];
                        let mut best = usize::MAX;
                        for i in (0..agenda.len()).rev() {
                            if best == usize::MAX || rank[agenda[i]] < rank[best] {
                                best = agenda[i];
                            }
                            top[i] = best;
                        }
                        top
                    })
                    .collect()
            })
            .collect();
        for (i, &ai) in agenda.iter().enumerate().take(y + 1) {
            let terms = self.terms(&bases, |gi, g, ci| {
                if tops[gi][ci][i] == ai {
                    2 * g.weight as i64
                } else {
                    0
                }
            });
            let rel = if i < y { Relation::Le } else { Relation::Gt };
            sys.add_constraint(terms, rel, w);
        }
        (sys, bases)
    }

    fn amendment_system(
        &self,
        guess: &[usize],
        agenda: &[usize],
    ) -> (FeasibilitySystem, Vec<usize>) {
        let (mut sys, bases) = self.system();
        for i in 1..agenda.len() {
            let (win, lose, margin) = contest(guess, agenda, i);
            let terms = self.terms(&bases, |_, g, ci| {
                let r = &g.ranks[ci];
                let w = g.weight as i64;
                if r[win] < r[lose] {
                    w
                } else {
                    -w
                }
            });
            sys.add_constraint(terms, Relation::Ge, margin);
        }
        (sys, bases)
    }
}

// Round i contest under a guess: (winner, loser, minimum margin).
fn contest(guess: &[usize], agenda: &[usize], i: usize) -> (usize, usize, i64) {
    let (inc, ch) = (guess[i - 1], agenda[i]);
    if guess[i] == ch {
        (ch, inc, 1)
    } else {
        (inc, ch, 0)
    }
}

fn agenda_completions(partial: &PartialAgenda, config: &SearchConfig) -> Result<Vec<Agenda>> {
    partial
        .completions(config.max_agenda_completions)
        .ok_or_else(|| {
            Error::Capacity(format!(
                "the partial agenda has more than {} completions",
                config.max_agenda_completions
            ))
        })
}

pub(super) fn check_instance(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    config: &SearchConfig,
) -> Result<()> {
    profile.check_alternative(p)?;
    if partial.size() != profile.num_alternatives() {
        return Err(Error::usage(
            "the agenda does not cover the profile's alternatives",
        ));
    }
    config.tie_policy.admit(profile.total_weight())
}

pub fn possible_winner(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    procedure: Procedure,
    config: &SearchConfig,
) -> Result<Option<PossibleWitness>> {
    check_instance(profile, p, partial, config)?;
    let agendas = agenda_completions(partial, config)?;
    let comp = Completions::new(profile, config)?;
    let found = agendas
        .par_iter()
        .map(|agenda| match procedure {
            Procedure::Successive => successive_for(&comp, profile, p, agenda),
            Procedure::Amendment => amendment_for(&comp, profile, p, agenda),
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let witness = found.transpose()?.flatten();
    if let Some(w) = &witness {
        debug_assert_eq!(
            winner(&w.profile, &w.agenda, procedure, config.tie_policy).map(|r| r.0),
            Ok(p)
        );
    }
    Ok(witness)
}

fn successive_for(
    comp: &Completions,
    profile: &Profile,
    p: usize,
    agenda: &Agenda,
) -> Result<Option<PossibleWitness>> {
    let y = agenda.position(p).expect("target on agenda");
    let (sys, bases) = comp.successive_system(agenda.as_slice(), y);
    match solve_feasibility(&sys) {
        Some(x) => Ok(Some(PossibleWitness {
            profile: comp.realize(profile, &x, &bases)?,
            agenda: agenda.clone(),
            round_winners: None,
        })),
        None => Ok(None),
    }
}

fn amendment_for(
    comp: &Completions,
    profile: &Profile,
    p: usize,
    agenda: &Agenda,
) -> Result<Option<PossibleWitness>> {
    let a = agenda.as_slice();
    let y = agenda.position(p).expect("target on agenda");
    let m = comp.m;
    let plausible =
        |win: usize, lose: usize, margin: i64| comp.max_margin[win * m + lose] >= margin as i128;
    let mut result = Ok(None);
    let mut winners = vec![a[0]];
    guesses_rec(a, y, &mut winners, &mut |guess| {
        let feasible_pairs = (1..a.len()).all(|i| {
            let (w, l, margin) = contest(guess, a, i);
            plausible(w, l, margin)
        });
        if !feasible_pairs {
            return true;
        }
        let (sys, bases) = comp.amendment_system(guess, a);
        if let Some(x) = solve_feasibility(&sys) {
            result = comp.realize(profile, &x, &bases).map(|prof| {
                Some(PossibleWitness {
                    profile: prof,
                    agenda: agenda.clone(),
                    round_winners: Some(guess.to_vec()),
                })
            });
            return false;
        }
        true
    });
    result
}

pub fn possible_winner_successive(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
) -> Result<Option<PossibleWitness>> {
    possible_winner(
        profile,
        p,
        partial,
        Procedure::Successive,
        &SearchConfig::default(),
    )
}

pub fn possible_winner_amendment(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
) -> Result<Option<PossibleWitness>> {
    possible_winner(
        profile,
        p,
        partial,
        Procedure::Amendment,
        &SearchConfig::default(),
    )
}

/// Possible winner for weighted voters. The same exact search as
/// [`possible_winner`]; the budgets in `config` bound its size.
pub fn weighted_possible_winner(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    procedure: Procedure,
    config: &SearchConfig,
) -> Result<Option<PossibleWitness>> {
    possible_winner(profile, p, partial, procedure, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guesses_respect_sanity() {
        let agenda = Agenda::new(vec![0, 1, 2, 3]).unwrap();
        let g = round_guesses(&agenda, 3);
        // rounds 2 and 3 are free: 4 guesses
        assert_eq!(g.len(), 4);
        for guess in &g {
            let w = &guess.winners;
            assert_eq!(w[0], 0);
            assert_eq!(w[3], 3);
            for i in 1..4 {
                assert!(w[i] == w[i - 1] || w[i] == i);
            }
        }
        assert_eq!(round_guesses(&agenda, 0).len(), 1);
        assert_eq!(round_guesses(&agenda, 0)[0].winners, vec![0; 4]);
    }

    #[test]
    fn complete_profile_matches_evaluation() {
        let p = Profile::from_chains(
            &["a", "b", "c"],
            &[("a>b>c", 1), ("b>a>c", 1), ("c>a>b", 1)],
        )
        .unwrap();
        let agenda = Agenda::identity(3).to_partial();
        let s: Vec<bool> = (0..3)
            .map(|c| {
                possible_winner_successive(&p, c, &agenda)
                    .unwrap()
                    .is_some()
            })
            .collect();
        assert_eq!(s, vec![false, true, false]);
        let a: Vec<bool> = (0..3)
            .map(|c| possible_winner_amendment(&p, c, &agenda).unwrap().is_some())
            .collect();
        assert_eq!(a, vec![true, false, false]);
    }

    #[test]
    fn free_agenda_is_control() {
        let p = Profile::from_chains(
            &["a", "b", "c"],
            &[("a>b>c", 1), ("b>a>c", 1), ("c>a>b", 1)],
        )
        .unwrap();
        let free = PartialAgenda::unconstrained(3);
        let w = possible_winner_successive(&p, 1, &free).unwrap().unwrap();
        assert_eq!(
            crate::successive_winner(&w.profile, &w.agenda).unwrap().0,
            1
        );
        assert!(possible_winner_successive(&p, 2, &free).unwrap().is_none());
    }

    #[test]
    fn capacity_guard() {
        let p = Profile::from_chains(&["a", "b", "c", "d"], &[("a", 1)]).unwrap();
        let config = SearchConfig {
            max_agenda_completions: 5,
            ..SearchConfig::default()
        };
        let err = possible_winner(
            &p,
            0,
            &PartialAgenda::unconstrained(4),
            Procedure::Successive,
            &config,
        );
        assert!(matches!(err, Err(Error::Capacity(_))));
        let config = SearchConfig {
            max_variables: 3,
            ..SearchConfig::default()
        };
        let err = possible_winner(
            &p,
            0,
            &Agenda::identity(4).to_partial(),
            Procedure::Successive,
            &config,
        );
        assert!(matches!(err, Err(Error::Capacity(_))));
    }
}
