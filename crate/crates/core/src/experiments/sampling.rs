use crate::order::{Agenda, PartialAgenda};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

/// 8!, the sample-size cap.
pub const MAX_SAMPLE: usize = 40_320;

/// Largest `m` for which every agenda is used.
pub const EXHAUSTIVE_MAX_ALTERNATIVES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgendaSample {
    pub seed: u64,
    pub exhaustive: bool,
    pub agendas: Vec<Agenda>,
}

impl AgendaSample {
    pub fn len(&self) -> usize {
        self.agendas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agendas.is_empty()
    }
}

/// All `m!` agendas when `m <= 8`, in lexicographic order. Otherwise
/// `min(n^2, 8!)` distinct agendas drawn uniformly.
pub fn sample_agendas(m: usize, n: u64, seed: u64) -> AgendaSample {
    sample_agendas_capped(m, n, seed, MAX_SAMPLE)
}

pub fn sample_agendas_capped(m: usize, n: u64, seed: u64, cap: usize) -> AgendaSample {
    if m <= EXHAUSTIVE_MAX_ALTERNATIVES {
        let agendas = PartialAgenda::unconstrained(m)
            .completions(usize::MAX)
            .expect("no limit");
        return AgendaSample {
            seed,
            exhaustive: true,
            agendas,
        };
    }
    let want = usize::try_from(n.saturating_mul(n))
        .unwrap_or(usize::MAX)
        .min(cap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(want);
    let mut agendas = Vec::with_capacity(want);
    let mut perm: Vec<usize> = (0..m).collect();
    while agendas.len() < want {
        perm.shuffle(&mut rng);
        if seen.insert(perm.clone()) {
            agendas.push(Agenda::new(perm.clone()).expect("permutation"));
        }
    }
    AgendaSample {
        seed,
        exhaustive: false,
        agendas,
    }
}
