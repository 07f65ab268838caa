//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report always prints. The
//! optional snapshot comparison of criterion 10 runs when
//! `SEQVOTE_PREFLIB_2015` names a directory holding the August 2015 Preflib
//! complete-order files.

mod common;

use common::*;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqvote::experiments::{run_experiment, ExperimentConfig, Metric};
use seqvote::uncertainty::{
    discriminating_completion, generate_is_reduction, generate_partition_reduction,
    generate_vc_reduction, privileging_completion, Graph,
};
use seqvote::{
    build_majority_graph, controllable_set, hamiltonian_cycle, is_condorcet_winner, manipulate,
    min_coalition_size, necessary_winner, possible_winner, scc_decomposition,
    weighted_necessary_winner, weighted_possible_winner, winner, Agenda, PartialAgenda,
    PreferenceOrder, Procedure, Profile, SearchConfig, TiePolicy, Voter, WeightedMajorityGraph,
};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    ensure(elapsed <= limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn example_one() -> Profile {
    Profile::from_chains(
        &["a", "b", "c"],
        &[("a>b>c", 1), ("b>a>c", 1), ("c>a>b", 1)],
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    let p = example_one();
    let agenda = Agenda::identity(3);
    let limit = Duration::from_millis(1);
    let t = Instant::now();
    let cw: Vec<usize> = (0..3)
        .filter(|&a| is_condorcet_winner(&p, a).unwrap())
        .collect();
    within(t.elapsed(), limit)?;
    ensure(cw == [0], || format!("Condorcet winner {cw:?}"))?;
    let t = Instant::now();
    let s = winner(&p, &agenda, Procedure::Successive, TiePolicy::Reject)
        .unwrap()
        .0;
    within(t.elapsed(), limit)?;
    ensure(s == 1, || format!("successive winner {s}"))?;
    let t = Instant::now();
    let a = winner(&p, &agenda, Procedure::Amendment, TiePolicy::Reject)
        .unwrap()
        .0;
    within(t.elapsed(), limit)?;
    ensure(a == 0, || format!("amendment winner {a}"))
}

fn rankings(p: &Profile) -> Vec<Vec<usize>> {
    p.voters()
        .iter()
        .map(|v| v.order.relation().linear_ranking().unwrap())
        .collect()
}

fn criterion_2() -> Outcome {
    let p = Profile::from_chains(&["a", "b", "c", "d"], &[("b>c>d", 1), ("d>b", 1)]).unwrap();
    let fixed = Agenda::identity(4);
    let disc = rankings(&discriminating_completion(&p, 2, &fixed).unwrap());
    ensure(disc == [vec![0, 1, 2, 3], vec![0, 3, 1, 2]], || {
        format!("discriminating {disc:?}")
    })?;
    let priv_ = rankings(&privileging_completion(&p, 2, &fixed).unwrap());
    ensure(priv_ == [vec![1, 2, 0, 3], vec![2, 0, 3, 1]], || {
        format!("privileging {priv_:?}")
    })
}

fn control_corpus() -> Vec<Profile> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..200)
        .map(|_| {
            let m = rng.random_range(3..=6);
            let n = 2 * rng.random_range(1..=4) + 1;
            random_profile(&mut rng, m, n)
        })
        .collect()
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    for (i, p) in control_corpus().iter().enumerate() {
        for proc_ in Procedure::ALL {
            let got = controllable_set(p, proc_).map_err(|e| e.to_string())?;
            let want = brute_controllable(p, proc_);
            ensure(got == want, || {
                format!("profile {i} {proc_:?}: {got:?} vs {want:?}")
            })?;
        }
    }
    within(t.elapsed(), Duration::from_secs(30))
}

fn criterion_4() -> Outcome {
    for (i, p) in control_corpus().iter().enumerate() {
        let scc = scc_decomposition(&build_majority_graph(p)).map_err(|e| e.to_string())?;
        let mut top = scc.top().to_vec();
        top.sort();
        let got = controllable_set(p, Procedure::Amendment).map_err(|e| e.to_string())?;
        ensure(got == top, || {
            format!("profile {i}: {got:?} vs top {top:?}")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(1..=5);
        let k = rng.random_range(0..=2u64);
        let p = random_profile(&mut rng, m, n);
        let agenda = Agenda::new(random_ranking(&mut rng, m)).unwrap();
        for proc_ in Procedure::ALL {
            for c in 0..m {
                let got = manipulate(&p, k, c, &agenda, proc_).map_err(|e| e.to_string())?;
                let want = brute_manipulable(&p, &vec![1; k as usize], c, &agenda, proc_);
                ensure(got.is_some() == want, || {
                    format!("instance {i} {proc_:?} target {c} k={k}")
                })?;
                if let Some(w) = got {
                    ensure(w.verify(&p, &agenda).unwrap(), || {
                        format!("instance {i}: witness fails")
                    })?;
                }
            }
        }
    }
    for i in 0..100 {
        let m = rng.random_range(2..=5);
        let n = rng.random_range(1..=9);
        let p = random_profile(&mut rng, m, n);
        let agenda = Agenda::new(random_ranking(&mut rng, m)).unwrap();
        for proc_ in Procedure::ALL {
            for c in 0..m {
                let got = min_coalition_size(&p, c, &agenda, proc_).map_err(|e| e.to_string())?;
                let want = linear_min_coalition(&p, c, &agenda, proc_);
                ensure(got == want, || {
                    format!("min instance {i} {proc_:?} target {c}: {got} vs {want}")
                })?;
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(60))
}

fn partial_instance(rng: &mut ChaCha8Rng) -> (Profile, PartialAgenda) {
    let m = rng.random_range(3..=5);
    let partial = rng.random_range(1..=3);
    let complete = rng.random_range(0..=2);
    let mut voters: Vec<Voter> = (0..partial)
        .map(|_| Voter::new(PreferenceOrder(random_open_ranking(rng, m, 2))))
        .collect();
    voters.extend(
        (0..complete)
            .map(|_| Voter::new(PreferenceOrder::linear(m, &random_ranking(rng, m)).unwrap())),
    );
    if voters.len().is_multiple_of(2) {
        voters.pop();
    }
    let agenda = PartialAgenda(random_open_ranking(rng, m, 2));
    (Profile::new(labels(m), voters).unwrap(), agenda)
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = SearchConfig::default();
    for i in 0..150 {
        let (p, agenda) = partial_instance(&mut rng);
        for proc_ in Procedure::ALL {
            for c in 0..p.num_alternatives() {
                let (poss, nec) = uncertainty_oracle(&p, c, &agenda, proc_, TiePolicy::Reject);
                let w = possible_winner(&p, c, &agenda, proc_, &cfg).map_err(|e| e.to_string())?;
                let n = necessary_winner(&p, c, &agenda, proc_, &cfg).map_err(|e| e.to_string())?;
                ensure(w.is_some() == poss, || {
                    format!("instance {i} {proc_:?} possible({c})")
                })?;
                ensure(n == nec, || {
                    format!("instance {i} {proc_:?} necessary({c})")
                })?;
                ensure(!n || w.is_some(), || {
                    format!("instance {i}: necessary but not possible")
                })?;
                if let Some(w) = w {
                    let got = winner(&w.profile, &w.agenda, proc_, TiePolicy::Reject)
                        .unwrap()
                        .0;
                    ensure(got == c, || format!("instance {i}: witness elects {got}"))?;
                }
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(60))
}

fn graph_set() -> Vec<(String, Graph)> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures().join("graphs"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|f| {
            let g = Graph::parse(&std::fs::read_to_string(&f).unwrap()).unwrap();
            (f.file_stem().unwrap().to_string_lossy().into_owned(), g)
        })
        .collect()
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let cfg = SearchConfig::default();
    let k24 = Graph::complete_bipartite(2, 4);
    let is4 = generate_is_reduction(&k24, 4).map_err(|e| e.to_string())?;
    ensure(
        is4.profile.voter_count() == 9 && is4.profile.num_alternatives() == 10,
        || {
            format!(
                "IS instance has {} voters, {} alternatives",
                is4.profile.voter_count(),
                is4.profile.num_alternatives()
            )
        },
    )?;
    let vc2 = generate_vc_reduction(&k24, 2).map_err(|e| e.to_string())?;
    ensure(
        vc2.profile.voter_count() == 11 && vc2.profile.num_alternatives() == 11,
        || {
            format!(
                "VC instance has {} voters, {} alternatives",
                vc2.profile.voter_count(),
                vc2.profile.num_alternatives()
            )
        },
    )?;
    let graphs = graph_set();
    ensure(graphs.iter().any(|(_, g)| g.edges() == k24.edges()), || {
        "K(2,4) missing from the graph set".into()
    })?;
    for (name, g) in &graphs {
        let r = g.num_vertices();
        for h in 2..r {
            let inst = generate_is_reduction(g, h).map_err(|e| e.to_string())?;
            let got = possible_winner(
                &inst.profile,
                inst.target,
                &inst.agenda.to_partial(),
                Procedure::Successive,
                &cfg,
            )
            .map_err(|e| e.to_string())?
            .is_some();
            ensure(got == (max_independent_set(g) >= h), || {
                format!("IS {name} h={h}: got {got}")
            })?;
        }
        for h in 1..r {
            let inst = generate_vc_reduction(g, h).map_err(|e| e.to_string())?;
            let got = possible_winner(
                &inst.profile,
                inst.target,
                &inst.agenda.to_partial(),
                Procedure::Amendment,
                &cfg,
            )
            .map_err(|e| e.to_string())?
            .is_some();
            ensure(got == (min_vertex_cover(g) <= h), || {
                format!("VC {name} h={h}: got {got}")
            })?;
        }
    }
    for xs in multisets_up_to(16) {
        let want = has_perfect_partition(&xs);
        let got = match generate_partition_reduction(&xs) {
            Ok(inst) => weighted_possible_winner(
                &inst.profile,
                inst.target,
                &inst.agenda.to_partial(),
                Procedure::Successive,
                &cfg,
            )
            .map_err(|e| e.to_string())?
            .is_some(),
            Err(_) => {
                ensure(xs.iter().sum::<u64>() % 2 == 1, || {
                    format!("partition {xs:?} rejected")
                })?;
                false
            }
        };
        ensure(got == want, || format!("partition {xs:?}: got {got}"))?;
    }
    within(t.elapsed(), Duration::from_secs(120))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 500 {
        let m = rng.random_range(3..=50);
        let coins: Vec<bool> = (0..m * m).map(|_| rng.random()).collect();
        let arc = |a: usize, b: usize| {
            if a < b {
                coins[a * m + b]
            } else {
                !coins[b * m + a]
            }
        };
        let g = WeightedMajorityGraph::from_tournament(m, arc);
        if scc_decomposition(&g).unwrap().components.len() != 1 {
            continue;
        }
        done += 1;
        let all: Vec<usize> = (0..m).collect();
        let cycle = hamiltonian_cycle(&g, &all).map_err(|e| e.to_string())?;
        let mut seen = vec![false; m];
        for &v in &cycle {
            ensure(v < m && !seen[v], || {
                format!("m={m}: vertex {v} repeated or invalid")
            })?;
            seen[v] = true;
        }
        ensure(cycle.len() == m, || {
            format!("m={m}: cycle has {} vertices", cycle.len())
        })?;
        for i in 0..m {
            let (a, b) = (cycle[i], cycle[(i + 1) % m]);
            ensure(arc(a, b), || format!("m={m}: {a} -> {b} is not an arc"))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(10))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = SearchConfig::default();
    for i in 0..100 {
        let m = rng.random_range(2..=3);
        let count = rng.random_range(1..=4);
        let mut voters: Vec<Voter> = (0..count)
            .map(|_| {
                Voter::weighted(
                    PreferenceOrder(random_open_ranking(&mut rng, m, 2)),
                    rng.random_range(1..=5),
                )
            })
            .collect();
        if voters.iter().map(|v| v.weight).sum::<u64>() % 2 == 0 {
            voters.push(Voter::weighted(
                PreferenceOrder(random_open_ranking(&mut rng, m, 2)),
                1,
            ));
        }
        let p = Profile::new(labels(m), voters).unwrap();
        let agenda = PartialAgenda(random_open_ranking(&mut rng, m, 2));
        for c in 0..m {
            let (_, nec) =
                uncertainty_oracle(&p, c, &agenda, Procedure::Amendment, TiePolicy::Reject);
            let got = weighted_necessary_winner(&p, c, &agenda, Procedure::Amendment, &cfg)
                .map_err(|e| e.to_string())?;
            ensure(got == nec, || format!("instance {i} target {c}: got {got}"))?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let dir = fixtures();
    let cfg =
        ExperimentConfig::from_file(&dir.join("experiment.cfg")).map_err(|e| e.to_string())?;
    let a = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_experiment(&cfg))
        .map_err(|e| e.to_string())?;
    ensure(a.to_csv() == b.to_csv(), || {
        "CSV differs between runs".into()
    })?;
    ensure(a.rows.len() == 20, || format!("{} rows", a.rows.len()))?;
    for row in &a.rows {
        for metric in Metric::ALL {
            if let Some(r) = metric.of(row) {
                ensure(
                    *r >= BigRational::zero() && *r <= BigRational::one(),
                    || format!("{} {}: {r}", row.profile, metric.name()),
                )?;
            }
        }
        if let Some(man) = &row.manipulation {
            ensure(man.smallest <= man.second_winner, || {
                format!("{}: smallest > second winner", row.profile)
            })?;
        }
    }
    for agg in &a.aggregates {
        let low = agg.bucket.starts_with("m<=");
        let split = match agg.metric {
            Metric::ControlVulnerability => cfg.control_split,
            _ => cfg.manipulation_split,
        };
        let any_zero = a
            .rows
            .iter()
            .filter(|r| r.procedure == agg.procedure && (r.m <= split) == low)
            .filter_map(|r| agg.metric.of(r))
            .any(Zero::is_zero);
        ensure(!any_zero || agg.means.geometric == 0.0, || {
            format!(
                "{} {} {}: geometric mean nonzero",
                agg.procedure.name(),
                agg.metric.name(),
                agg.bucket
            )
        })?;
    }
    Ok(())
}

// Published aggregates: (procedure, metric, bucket, value, geometric?).
const PUBLISHED: [(&str, &str, &str, f64, bool); 16] = [
    ("successive", "control_vulnerability", "m<=4", 0.157, false),
    ("successive", "control_vulnerability", "m>=5", 0.081, false),
    ("amendment", "control_vulnerability", "m<=4", 0.000, false),
    ("amendment", "control_vulnerability", "m>=5", 0.035, false),
    ("successive", "manipulation_resistance", "m<=8", 0.455, true),
    ("successive", "manipulation_resistance", "m>=9", 0.945, true),
    ("amendment", "manipulation_resistance", "m<=8", 0.402, true),
    ("amendment", "manipulation_resistance", "m>=9", 0.924, true),
    ("successive", "second_winner_coalition", "m<=8", 0.288, true),
    ("successive", "second_winner_coalition", "m>=9", 0.523, true),
    ("amendment", "second_winner_coalition", "m<=8", 0.222, true),
    ("amendment", "second_winner_coalition", "m>=9", 0.468, true),
    ("successive", "smallest_coalition", "m<=8", 0.263, true),
    ("successive", "smallest_coalition", "m>=9", 0.386, true),
    ("amendment", "smallest_coalition", "m<=8", 0.221, true),
    ("amendment", "smallest_coalition", "m>=9", 0.385, true),
];

fn snapshot(corpus: &Path) -> Outcome {
    let cfg = ExperimentConfig {
        corpus: corpus.to_path_buf(),
        ..ExperimentConfig::default()
    };
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    for (procedure, metric, bucket, value, geometric) in PUBLISHED {
        let agg = report
            .aggregates
            .iter()
            .find(|a| {
                a.procedure.name() == procedure && a.metric.name() == metric && a.bucket == bucket
            })
            .ok_or_else(|| format!("no aggregate for {procedure} {metric} {bucket}"))?;
        let got = if geometric {
            agg.means.geometric
        } else {
            agg.means.arithmetic.to_f64().unwrap()
        };
        ensure((got - value).abs() <= 0.001 + 1e-9, || {
            format!("{procedure} {metric} {bucket}: {got:.4} vs published {value:.3}")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("example goldens", criterion_1),
        ("completion goldens", criterion_2),
        ("agenda control vs brute force", criterion_3),
        ("amendment control equals top cycle", criterion_4),
        ("manipulation vs exhaustive search", criterion_5),
        ("possible/necessary vs enumeration", criterion_6),
        ("reduction round trips", criterion_7),
        ("hamiltonian cycles", criterion_8),
        ("weighted necessary amendment, m <= 3", criterion_9),
        ("fixture corpus pipeline", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    match std::env::var_os("SEQVOTE_PREFLIB_2015") {
        Some(dir) => match snapshot(Path::new(&dir)) {
            Ok(()) => println!("criterion 10 (snapshot): PASS  published tables from the 2015 snapshot"),
            Err(e) => {
                failed += 1;
                println!("criterion 10 (snapshot): FAIL  published tables from the 2015 snapshot: {e}");
            }
        },
        None => println!("criterion 10 (snapshot): SKIP  published tables (set SEQVOTE_PREFLIB_2015 to a snapshot directory)"),
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
