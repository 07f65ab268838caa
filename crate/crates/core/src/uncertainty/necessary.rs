use super::completion::{discriminating_completion, privileging_completion};
use super::possible::{check_instance, possible_winner};
use super::SearchConfig;
use crate::bitset::AltSet;
use crate::error::{Error, Result};
use crate::order::{Agenda, PartialAgenda};
use crate::procedure::Procedure;
use crate::profile::Profile;
use rayon::prelude::*;

fn majority_over(profile: &Profile, a: usize, set: &AltSet) -> bool {
    2 * profile.support_over(a, set) > profile.total_weight()
}

fn necessary_successive_with(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    config: &SearchConfig,
) -> Result<bool> {
    check_instance(profile, p, partial, config)?;
    let m = profile.num_alternatives();
    let fixed = Agenda::identity(m);
    let prec = partial.preceding(p);

    let disc = discriminating_completion(profile, p, &fixed)?;
    let mut rest = AltSet::full(m);
    for c in prec.iter() {
        rest.remove(c);
    }
    if !majority_over(&disc, p, &rest) {
        return Ok(false);
    }
    for c in prec.iter() {
        let priv_profile = privileging_completion(profile, c, &fixed)?;
        let mut set = partial.succeeding(c);
        set.insert(c);
        if majority_over(&priv_profile, c, &set) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `p` wins the successive procedure in every joint completion.
pub fn necessary_winner_successive(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
) -> Result<bool> {
    necessary_successive_with(profile, p, partial, &SearchConfig::default())
}

fn necessary_amendment_with(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    config: &SearchConfig,
) -> Result<bool> {
    check_instance(profile, p, partial, config)?;
    let rivals: Vec<usize> = (0..profile.num_alternatives())
        .filter(|&q| q != p)
        .collect();
    let found = rivals
        .par_iter()
        .map(|&q| {
            possible_winner(profile, q, partial, Procedure::Amendment, config).map(|w| w.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(!found.into_iter().any(|b| b))
}

/// `p` wins the amendment procedure in every joint completion, decided by
/// ruling out every other possible winner.
pub fn necessary_winner_amendment(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
) -> Result<bool> {
    necessary_amendment_with(profile, p, partial, &SearchConfig::default())
}

pub fn necessary_winner(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    procedure: Procedure,
    config: &SearchConfig,
) -> Result<bool> {
    match procedure {
        Procedure::Successive => necessary_successive_with(profile, p, partial, config),
        Procedure::Amendment => necessary_amendment_with(profile, p, partial, config),
    }
}

/// Weighted necessary winner. Successive works for any number of
/// alternatives; amendment is decided by case analysis for at most three
/// and reported as undecided beyond that.
pub fn weighted_necessary_winner(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    procedure: Procedure,
    config: &SearchConfig,
) -> Result<bool> {
    match procedure {
        Procedure::Successive => necessary_successive_with(profile, p, partial, config),
        Procedure::Amendment => {
            check_instance(profile, p, partial, config)?;
            if profile.num_alternatives() > 3 {
                return Err(Error::Undecided(
                    "weighted amendment necessary winner with four or more alternatives is coNP-hard"
                        .into(),
                ));
            }
            let agendas = partial
                .completions(6)
                .expect("at most six agendas over three alternatives");
            for agenda in &agendas {
                if !amendment_small_agenda(profile, p, agenda)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

// Weight of voters ranking `a` above `b`.
fn weight(profile: &Profile, a: usize, b: usize) -> u64 {
    profile
        .voters()
        .iter()
        .filter(|v| v.order.prefers(a, b))
        .map(|v| v.mass())
        .sum()
}

fn amendment_small_agenda(profile: &Profile, p: usize, agenda: &Agenda) -> Result<bool> {
    let total = profile.total_weight();
    let fixed = Agenda::identity(profile.num_alternatives());
    let a = agenda.as_slice();
    let y = agenda.position(p).expect("target on agenda");
    if y + 1 < a.len() || a.len() <= 2 {
        // p must win every contest it takes part in, against the worst
        // completion of each pair
        let disc = discriminating_completion(profile, p, &fixed)?;
        let ok = a.iter().enumerate().all(|(i, &x)| {
            if x == p {
                return true;
            }
            if i < y {
                2 * weight(&disc, p, x) > total
            } else {
                2 * weight(&disc, x, p) <= total
            }
        });
        return Ok(ok);
    }
    let (x, z) = (a[0], a[1]);
    let px = privileging_completion(profile, x, &fixed)?;
    if 2 * weight(&px, z, x) <= total && 2 * weight(&px, p, x) <= total {
        return Ok(false);
    }
    let pz = privileging_completion(profile, z, &fixed)?;
    if 2 * weight(&pz, z, x) > total && 2 * weight(&pz, p, z) <= total {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedure::TiePolicy;

    fn three_voters() -> Profile {
        // p, a, b = 0, 1, 2
        Profile::from_chains(&["p", "a", "b"], &[("p>a>b", 1), ("p>a>b", 1), ("a>b", 1)]).unwrap()
    }

    #[test]
    fn successive_examples() {
        let prof = three_voters();
        let abp = Agenda::new(vec![1, 2, 0]).unwrap().to_partial();
        assert!(necessary_winner_successive(&prof, 0, &abp).unwrap());
        // two voters rank p first, so p wins from the front as well
        let pab = Agenda::new(vec![0, 1, 2]).unwrap().to_partial();
        assert!(necessary_winner_successive(&prof, 0, &pab).unwrap());
        assert!(!necessary_winner_successive(&prof, 1, &pab).unwrap());
    }

    #[test]
    fn complete_instance_matches_evaluation() {
        let prof = Profile::from_chains(
            &["a", "b", "c"],
            &[("a>b>c", 1), ("b>a>c", 1), ("c>a>b", 1)],
        )
        .unwrap();
        let agenda = Agenda::identity(3);
        for c in 0..3 {
            let s = crate::successive_winner(&prof, &agenda).unwrap().0 == c;
            let a = crate::amendment_winner(&prof, &agenda).unwrap().0 == c;
            assert_eq!(
                necessary_winner_successive(&prof, c, &agenda.to_partial()).unwrap(),
                s
            );
            assert_eq!(
                necessary_winner_amendment(&prof, c, &agenda.to_partial()).unwrap(),
                a
            );
        }
    }

    #[test]
    fn weighted_amendment_example() {
        let prof = Profile::from_chains(&["p", "a", "b"], &[("a>b>p", 2), ("p>a>b", 3)]).unwrap();
        let agenda = Agenda::new(vec![1, 2, 0]).unwrap().to_partial();
        let cfg = SearchConfig::default();
        assert!(weighted_necessary_winner(&prof, 0, &agenda, Procedure::Amendment, &cfg).unwrap());
        assert!(weighted_necessary_winner(&prof, 0, &agenda, Procedure::Successive, &cfg).unwrap());
        assert!(!weighted_necessary_winner(&prof, 1, &agenda, Procedure::Amendment, &cfg).unwrap());
    }

    #[test]
    fn weighted_two_alternatives_is_beats() {
        let cfg = SearchConfig::default();
        for (wa, wb) in [(1, 2), (3, 2), (4, 1)] {
            let prof = Profile::from_chains(&["a", "b"], &[("a>b", wa), ("b>a", wb)]).unwrap();
            for agenda in [vec![0, 1], vec![1, 0]] {
                let ag = Agenda::new(agenda).unwrap().to_partial();
                let got =
                    weighted_necessary_winner(&prof, 0, &ag, Procedure::Amendment, &cfg).unwrap();
                assert_eq!(got, wa > wb);
            }
        }
    }

    #[test]
    fn weighted_amendment_rejects_four() {
        let prof = Profile::from_chains(&["a", "b", "c", "d"], &[("a>b>c>d", 1)]).unwrap();
        let err = weighted_necessary_winner(
            &prof,
            0,
            &PartialAgenda::unconstrained(4),
            Procedure::Amendment,
            &SearchConfig::default(),
        );
        assert!(matches!(err, Err(Error::Undecided(_))));
    }

    #[test]
    fn even_weight_needs_policy() {
        let prof = Profile::from_chains(&["a", "b"], &[("a>b", 1), ("b", 1)]).unwrap();
        let ag = Agenda::identity(2).to_partial();
        assert!(matches!(
            necessary_winner_successive(&prof, 0, &ag),
            Err(Error::EvenTotalWeight(2))
        ));
        let cfg = SearchConfig {
            tie_policy: TiePolicy::StatusQuo,
            ..SearchConfig::default()
        };
        assert!(!necessary_winner(&prof, 0, &ag, Procedure::Successive, &cfg).unwrap());
    }
}
