//! Brute-force oracles and random instance builders shared by the
//! integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use seqvote::uncertainty::Graph;
use seqvote::{
    manipulate, winner, Agenda, PartialAgenda, PreferenceOrder, Procedure, Profile, StrictOrder,
    TiePolicy, Voter,
};

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("x{i}")).collect()
}

/// All rankings of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for a in 0..used.len() {
            if !used[a] {
                used[a] = true;
                prefix.push(a);
                rec(prefix, used, out);
                prefix.pop();
                used[a] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

pub fn random_ranking(rng: &mut impl Rng, m: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (0..m).collect();
    r.shuffle(rng);
    r
}

/// `n` unit voters with uniform random rankings.
pub fn random_profile(rng: &mut impl Rng, m: usize, n: usize) -> Profile {
    let voters = (0..n)
        .map(|_| Voter::new(PreferenceOrder::linear(m, &random_ranking(rng, m)).unwrap()))
        .collect();
    Profile::new(labels(m), voters).unwrap()
}

/// The chain `perm` with the adjacent pairs marked in `open` left unordered.
pub fn open_ranking(m: usize, perm: &[usize], open: &[bool]) -> StrictOrder {
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if !(j == i + 1 && open[i]) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    StrictOrder::from_pairs(m, pairs).unwrap()
}

/// A random ranking with up to `free` adjacent pairs left open.
pub fn random_open_ranking(rng: &mut impl Rng, m: usize, free: usize) -> StrictOrder {
    let perm = random_ranking(rng, m);
    let mut open = vec![false; m];
    for _ in 0..rng.random_range(0..=free) {
        open[rng.random_range(0..m - 1)] = true;
    }
    open_ranking(m, &perm, &open)
}

/// Every joint completion of a partial profile and a partial agenda.
pub fn all_completions(profile: &Profile, partial: &PartialAgenda) -> Vec<(Profile, Agenda)> {
    let m = profile.num_alternatives();
    let mut profiles = vec![Vec::<Voter>::new()];
    for v in profile.voters() {
        let exts = v.order.relation().linear_extensions(usize::MAX).unwrap();
        let mut next = Vec::new();
        for prefix in &profiles {
            for e in &exts {
                let mut p = prefix.clone();
                p.push(
                    Voter::weighted(PreferenceOrder::linear(m, e).unwrap(), v.weight)
                        .with_multiplicity(v.multiplicity),
                );
                next.push(p);
            }
        }
        profiles = next;
    }
    let agendas = partial.completions(usize::MAX).unwrap();
    let mut out = Vec::new();
    for voters in profiles {
        let complete = Profile::new(profile.labels(), voters).unwrap();
        for a in &agendas {
            out.push((complete.clone(), a.clone()));
        }
    }
    out
}

/// (possible, necessary) by enumeration.
pub fn uncertainty_oracle(
    profile: &Profile,
    p: usize,
    partial: &PartialAgenda,
    procedure: Procedure,
    policy: TiePolicy,
) -> (bool, bool) {
    let wins: Vec<bool> = all_completions(profile, partial)
        .iter()
        .map(|(prof, ag)| winner(prof, ag, procedure, policy).unwrap().0 == p)
        .collect();
    (wins.iter().any(|&w| w), wins.iter().all(|&w| w))
}

/// Alternatives that win under at least one of the `m!` agendas.
pub fn brute_controllable(profile: &Profile, procedure: Procedure) -> Vec<usize> {
    let m = profile.num_alternatives();
    let mut hit = vec![false; m];
    for perm in permutations(m) {
        let agenda = Agenda::new(perm).unwrap();
        hit[winner(profile, &agenda, procedure, TiePolicy::Reject)
            .unwrap()
            .0] = true;
    }
    (0..m).filter(|&a| hit[a]).collect()
}

/// Tries every tuple of manipulator ballots (as a multiset when the
/// weights are equal).
pub fn brute_manipulable(
    profile: &Profile,
    weights: &[u64],
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> bool {
    let m = profile.num_alternatives();
    let perms = permutations(m);
    let uniform = weights.windows(2).all(|w| w[0] == w[1]);
    fn rec(
        weights: &[u64],
        perms: &[Vec<usize>],
        start: usize,
        uniform: bool,
        chosen: &mut Vec<usize>,
        check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == weights.len() {
            return check(chosen);
        }
        let from = if uniform { start } else { 0 };
        for i in from..perms.len() {
            chosen.push(i);
            if rec(weights, perms, i, uniform, chosen, check) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let check = |chosen: &[usize]| {
        let mut voters = profile.voters().to_vec();
        for (&i, &w) in chosen.iter().zip(weights) {
            voters.push(Voter::weighted(
                PreferenceOrder::linear(m, &perms[i]).unwrap(),
                w,
            ));
        }
        let q = profile.with_voters(voters).unwrap();
        winner(&q, agenda, procedure, TiePolicy::StatusQuo)
            .unwrap()
            .0
            == p
    };
    rec(weights, &perms, 0, uniform, &mut Vec::new(), &check)
}

/// Smallest unit coalition found by scanning `k = 0, 1, ...`.
pub fn linear_min_coalition(
    profile: &Profile,
    p: usize,
    agenda: &Agenda,
    procedure: Procedure,
) -> u64 {
    let cap = profile.total_weight() + 1;
    (0..cap)
        .find(|&k| {
            manipulate(profile, k, p, agenda, procedure)
                .unwrap()
                .is_some()
        })
        .unwrap_or(cap)
}

pub fn max_independent_set(g: &Graph) -> usize {
    let r = g.num_vertices();
    (0u32..1 << r)
        .filter(|&s| {
            g.edges()
                .iter()
                .all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0)
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn min_vertex_cover(g: &Graph) -> usize {
    g.num_vertices() - max_independent_set(g)
}

pub fn has_perfect_partition(xs: &[u64]) -> bool {
    let total: u64 = xs.iter().sum();
    if total % 2 == 1 {
        return false;
    }
    (0u32..1 << xs.len()).any(|s| {
        let part: u64 = (0..xs.len())
            .filter(|&i| s >> i & 1 == 1)
            .map(|i| xs[i])
            .sum();
        2 * part == total
    })
}

/// Multisets of positive integers with sum at most `max_sum`, as
/// non-increasing sequences.
pub fn multisets_up_to(max_sum: u64) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        for x in (1..=cap.min(remaining)).rev() {
            prefix.push(x);
            rec(remaining - x, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, max_sum, &mut Vec::new(), &mut out);
    out
}
