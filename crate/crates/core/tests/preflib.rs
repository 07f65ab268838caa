use proptest::prelude::*;
use seqvote::{parse_preflib, write_preflib, Dialect, PreferenceOrder, Profile, Voter};
use std::collections::BTreeMap;

// Multiset of relations, ignoring how voters are grouped.
fn ballots(p: &Profile) -> BTreeMap<Vec<(usize, usize)>, u64> {
    let mut out = BTreeMap::new();
    for v in p.voters() {
        let mut pairs: Vec<_> = v.order.relation().pairs().collect();
        pairs.sort();
        *out.entry(pairs).or_insert(0) += v.multiplicity * v.weight;
    }
    out
}

/// A ranked prefix of a shuffled `0..m`, cut into tie layers.
fn layered(m: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (
        Just((0..m).collect::<Vec<usize>>()).prop_shuffle(),
        1..=m,
        proptest::collection::vec(any::<bool>(), m),
    )
        .prop_map(|(perm, ranked, cuts)| {
            let mut layers: Vec<Vec<usize>> = vec![Vec::new()];
            for (i, &a) in perm[..ranked].iter().enumerate() {
                if i > 0 && cuts[i] {
                    layers.push(Vec::new());
                }
                layers.last_mut().unwrap().push(a);
            }
            layers
        })
}

fn profile() -> impl Strategy<Value = Profile> {
    (2usize..=6)
        .prop_flat_map(|m| {
            (
                Just(m),
                proptest::collection::vec((layered(m), 1u64..=3), 1..=6),
            )
        })
        .prop_map(|(m, vs)| {
            let labels = (0..m).map(|i| format!("alt {i}")).collect();
            let voters = vs
                .into_iter()
                .map(|(layers, count)| {
                    Voter::new(PreferenceOrder::from_layers(m, layers).unwrap())
                        .with_multiplicity(count)
                })
                .collect();
            Profile::new(labels, voters).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn write_then_parse_is_identity(p in profile()) {
        let text = write_preflib(&p).unwrap();
        let q = parse_preflib(&text).unwrap();
        prop_assert_eq!(q.labels(), p.labels());
        prop_assert_eq!(ballots(&q), ballots(&p));
        prop_assert_eq!(write_preflib(&q).unwrap(), text);
    }

    #[test]
    fn parser_never_panics(lines in proptest::collection::vec("[0-9,{} a-c#:-]{0,12}", 0..10)) {
        if let Ok(p) = parse_preflib(&lines.join("\n")) {
            for v in p.voters() {
                let r = v.order.relation();
                for (a, b) in r.pairs() {
                    prop_assert!(a != b && !r.prefers(b, a));
                }
            }
        }
    }

    #[test]
    fn corrupted_headers_are_rejected(p in profile(), bump in 1u64..3) {
        let text = write_preflib(&p).unwrap();
        let m = p.num_alternatives();
        let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
        let header: Vec<u64> = lines[m + 1].split(',').map(|x| x.trim().parse().unwrap()).collect();
        lines[m + 1] = format!("{},{},{}", header[0] + bump, header[1], header[2]);
        prop_assert!(parse_preflib(&lines.join("\n")).is_err());
        lines[m + 1] = format!("{},{},{}", header[0], header[1], header[2] + bump);
        prop_assert!(parse_preflib(&lines.join("\n")).is_err());
    }
}

#[test]
fn dialect_of_written_files() {
    let p = Profile::from_chains(&["a", "b", "c"], &[("a>b>c", 1), ("c>a>b", 1)]).unwrap();
    assert!(write_preflib(&p).unwrap().starts_with("3\n1,a\n"));
    assert_eq!(Dialect::from_extension("toi"), Some(Dialect::Toi));
    let weighted = Profile::from_chains(&["a", "b"], &[("a>b", 2)]).unwrap();
    assert!(write_preflib(&weighted).is_err());
}

#[test]
fn example_fixture() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/example1.soc"
    ))
    .unwrap();
    let p = parse_preflib(&text).unwrap();
    assert_eq!(p.labels(), ["a", "b", "c"]);
    assert_eq!(p.voter_count(), 3);
    assert!(p.is_complete());
}
