//! Preflib preference files and agenda files.
//!
//! The classic layout is
//!
//! ```text
//! 3
//! 1,a
//! 2,b
//! 3,c
//! 3,3,3
//! 1,1,2,3
//! 1,2,{1,3}
//! ```
//!
//! A ranking line is a count followed by alternative ids (1-based); `{..}`
//! groups tied alternatives, which stay mutually incomparable. Alternatives
//! absent from a line are incomparable to every other one. Lines starting
//! with `#` are metadata. The newer layout, where the header lives in
//! `# NUMBER ALTERNATIVES` / `# ALTERNATIVE NAME i` comments and ranking
//! lines read `count: ids`, is accepted too.

use crate::error::{Error, Result};
use crate::instance::order_to_chains;
use crate::order::{PartialAgenda, PreferenceOrder, StrictOrder};
use crate::profile::{Profile, Voter};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Preflib file variants, by what their orders may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// Strict complete orders.
    Soc,
    /// Strict incomplete (truncated) orders.
    Soi,
    /// Complete orders with ties.
    Toc,
    /// Incomplete orders with ties.
    Toi,
}

impl Dialect {
    pub fn extension(self) -> &'static str {
        match self {
            Dialect::Soc => "soc",
            Dialect::Soi => "soi",
            Dialect::Toc => "toc",
            Dialect::Toi => "toi",
        }
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "soc" => Some(Dialect::Soc),
            "soi" => Some(Dialect::Soi),
            "toc" => Some(Dialect::Toc),
            "toi" => Some(Dialect::Toi),
            _ => None,
        }
    }
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let it = self.items.get(self.pos).copied();
        self.pos += 1;
        it
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
}

fn number<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a number, found `{}`", s.trim())))
}

// Layers of one ranking line, as 0-based ids.
fn ranking_layers(line: usize, text: &str, m: usize) -> Result<Vec<Vec<usize>>> {
    let mut layers = Vec::new();
    let mut group: Option<Vec<usize>> = None;
    let mut seen = vec![false; m];
    for raw in text.split(',') {
        let mut tok = raw.trim();
        if tok.is_empty() && group.is_none() {
            continue;
        }
        let opens = tok.starts_with('{');
        if opens {
            if group.is_some() {
                return Err(Error::parse(line, "nested `{`"));
            }
            group = Some(Vec::new());
            tok = tok[1..].trim();
        }
        let closes = tok.ends_with('}');
        if closes {
            tok = tok[..tok.len() - 1].trim();
        }
        let mut id = None;
        if !tok.is_empty() {
            let i: usize = number(line, tok)?;
            if i == 0 || i > m {
                return Err(Error::parse(
                    line,
                    format!("alternative id {i} is not in 1..={m}"),
                ));
            }
            if std::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::parse(
                    line,
                    format!("alternative id {i} ranked twice"),
                ));
            }
            id = Some(i - 1);
        }
        match (&mut group, id) {
            (Some(g), Some(i)) => g.push(i),
            (None, Some(i)) => layers.push(vec![i]),
            (None, None) => return Err(Error::parse(line, "empty ranking entry")),
            (Some(_), None) => {}
        }
        if closes {
            match group.take() {
                Some(g) if !g.is_empty() => layers.push(g),
                Some(_) => return Err(Error::parse(line, "empty tie group")),
                None => return Err(Error::parse(line, "unmatched `}`")),
            }
        }
    }
    if group.is_some() {
        return Err(Error::parse(line, "unclosed `{`"));
    }
    Ok(layers)
}

fn order_from_layers(m: usize, layers: &[Vec<usize>]) -> Result<PreferenceOrder> {
    Ok(PreferenceOrder(StrictOrder::from_layers(m, layers)?))
}

pub fn parse_preflib(text: &str) -> Result<Profile> {
    let mut meta_m = None;
    let mut meta_labels: HashMap<usize, String> = HashMap::new();
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            if let Some(rest) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
                meta_m = Some(number::<usize>(i + 1, rest)?);
            } else if let Some(rest) = meta.strip_prefix("ALTERNATIVE NAME") {
                if let Some((id, name)) = rest.split_once(':') {
                    meta_labels.insert(number(i + 1, id)?, name.trim().to_string());
                }
            }
            continue;
        }
        items.push((i + 1, line));
    }
    let mut lines = Lines { items, pos: 0 };
    let newer = lines.peek().is_some_and(|(_, l)| l.contains(':'));

    let (m, labels, declared) = if newer {
        let m = meta_m.ok_or_else(|| Error::parse(1, "missing `# NUMBER ALTERNATIVES`"))?;
        let labels = (1..=m)
            .map(|i| {
                meta_labels
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| i.to_string())
            })
            .collect::<Vec<_>>();
        (m, labels, None)
    } else {
        let (ln, first) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let m: usize = number(ln, first)?;
        let mut labels = vec![String::new(); m];
        for _ in 0..m {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, "missing alternative lines"))?;
            let (id, name) = l
                .split_once(',')
                .ok_or_else(|| Error::parse(ln, "expected `id,label`"))?;
            let id: usize = number(ln, id)?;
            if id == 0 || id > m {
                return Err(Error::parse(
                    ln,
                    format!("alternative id {id} is not in 1..={m}"),
                ));
            }
            if !labels[id - 1].is_empty() {
                return Err(Error::parse(
                    ln,
                    format!("alternative id {id} listed twice"),
                ));
            }
            labels[id - 1] = name.trim().to_string();
        }
        let (ln, counts) = lines
            .next()
            .ok_or_else(|| Error::parse(ln, "missing the voter count line"))?;
        let c: Vec<u64> = counts
            .split(',')
            .map(|s| number(ln, s))
            .collect::<Result<_>>()?;
        if c.len() != 3 {
            return Err(Error::parse(ln, "expected `voters,sum,unique`"));
        }
        (m, labels, Some((ln, c[0], c[1], c[2])))
    };

    let mut voters = Vec::new();
    let mut sum = 0u64;
    while let Some((ln, l)) = lines.next() {
        let (count, rest) = if newer {
            l.split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected `count: ranking`"))?
        } else {
            l.split_once(',').unwrap_or((l, ""))
        };
        let count: u64 = number(ln, count)?;
        if count == 0 {
            return Err(Error::parse(ln, "zero count"));
        }
        let layers = ranking_layers(ln, rest, m)?;
        let order = order_from_layers(m, &layers).map_err(|e| Error::parse(ln, e.to_string()))?;
        voters.push(Voter::new(order).with_multiplicity(count));
        sum += count;
    }
    if let Some((ln, n, total, unique)) = declared {
        if total != sum {
            return Err(Error::parse(
                ln,
                format!("declared vote sum {total}, found {sum}"),
            ));
        }
        if n != sum {
            return Err(Error::parse(
                ln,
                format!("declared {n} voters, found {sum}"),
            ));
        }
        if unique != voters.len() as u64 {
            return Err(Error::parse(
                ln,
                format!("declared {unique} distinct orders, found {}", voters.len()),
            ));
        }
    }
    Profile::new(labels, voters)
}

/// Splits an order into preference layers, if it has that shape: ranked
/// alternatives form blocks stacked above each other and every unranked
/// alternative is incomparable to all others.
fn layers_of(order: &StrictOrder) -> Option<Vec<Vec<usize>>> {
    let m = order.size();
    let ranked: Vec<usize> = (0..m)
        .filter(|&a| (0..m).any(|b| order.comparable(a, b)))
        .collect();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut placed = vec![false; m];
    let mut remaining = ranked.len();
    while remaining > 0 {
        let top: Vec<usize> = ranked
            .iter()
            .copied()
            .filter(|&a| !placed[a] && ranked.iter().all(|&b| placed[b] || !order.prefers(b, a)))
            .collect();
        for &a in &top {
            placed[a] = true;
        }
        remaining -= top.len();
        layers.push(top);
    }
    let rebuilt = StrictOrder::from_layers(m, &layers).ok()?;
    (rebuilt == *order).then_some(layers)
}

/// The narrowest dialect that can hold every voter of `profile`.
pub fn dialect_of(profile: &Profile) -> Result<Dialect> {
    let m = profile.num_alternatives();
    let mut ties = false;
    let mut partial = false;
    for v in profile.voters() {
        let layers = layers_of(v.order.relation()).ok_or_else(|| {
            Error::usage("a preference order is not layered; Preflib cannot hold it")
        })?;
        let covered: usize = layers.iter().map(Vec::len).sum();
        ties |= layers.iter().any(|l| l.len() > 1);
        partial |= covered < m && m > 1;
    }
    Ok(match (ties, partial) {
        (false, false) => Dialect::Soc,
        (false, true) => Dialect::Soi,
        (true, false) => Dialect::Toc,
        (true, true) => Dialect::Toi,
    })
}

/// Serializes in the classic layout. Weighted voters cannot be expressed.
pub fn write_preflib(profile: &Profile) -> Result<String> {
    if !profile.is_unweighted() {
        return Err(Error::usage("Preflib files cannot carry voter weights"));
    }
    dialect_of(profile)?;
    let grouped = profile.grouped();
    let m = profile.num_alternatives();
    let mut out = String::new();
    writeln!(out, "{m}").unwrap();
    for a in 0..m {
        writeln!(out, "{},{}", a + 1, profile.label(a)).unwrap();
    }
    let n = profile.voter_count();
    writeln!(out, "{n},{n},{}", grouped.voters().len()).unwrap();
    for v in grouped.voters() {
        let layers = layers_of(v.order.relation()).expect("checked above");
        let mut line = v.multiplicity.to_string();
        for layer in layers {
            line.push(',');
            if layer.len() == 1 {
                write!(line, "{}", layer[0] + 1).unwrap();
            } else {
                let ids: Vec<String> = layer.iter().map(|a| (a + 1).to_string()).collect();
                write!(line, "{{{}}}", ids.join(",")).unwrap();
            }
        }
        writeln!(out, "{line}").unwrap();
    }
    Ok(out)
}

/// Reads chains of labels such as `a>b>c`; separate lines (or `,`
/// separated fragments) combine into one partial agenda.
pub fn parse_agenda(text: &str, profile: &Profile) -> Result<PartialAgenda> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        for fragment in line.split(',') {
            let ids = fragment
                .split('>')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| profile.id_of(s))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
            pairs.extend(ids.windows(2).map(|w| (w[0], w[1])));
        }
    }
    PartialAgenda::from_pairs(profile.num_alternatives(), pairs)
}

/// Chain text of an agenda, readable by [`parse_agenda`].
pub fn write_agenda(agenda: &PartialAgenda, profile: &Profile) -> String {
    order_to_chains(&agenda.0, |a| profile.label(a).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "3\n1,a\n2,b\n3,c\n3,3,3\n1,1,2,3\n1,2,1,3\n1,3,1,2\n";

    #[test]
    fn example_one_round_trip() {
        let p = parse_preflib(EXAMPLE).unwrap();
        let expected = Profile::from_chains(
            &["a", "b", "c"],
            &[("a>b>c", 1), ("b>a>c", 1), ("c>a>b", 1)],
        )
        .unwrap();
        assert_eq!(p, expected);
        let text = write_preflib(&p).unwrap();
        assert_eq!(text, EXAMPLE);
        assert_eq!(dialect_of(&p).unwrap(), Dialect::Soc);
    }

    #[test]
    fn tie_block() {
        let p = parse_preflib("3\n1,a\n2,b\n3,c\n2,2,1\n2, 1, {2,3}\n").unwrap();
        assert_eq!(p.voters().len(), 1);
        let v = &p.voters()[0];
        assert_eq!(v.multiplicity, 2);
        assert!(v.order.prefers(0, 1) && v.order.prefers(0, 2));
        assert!(!v.order.relation().comparable(1, 2));
        assert_eq!(dialect_of(&p).unwrap(), Dialect::Toc);
        assert_eq!(parse_preflib(&write_preflib(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn truncated_orders() {
        let p = parse_preflib("4\n1,a\n2,b\n3,c\n4,d\n1,1,1\n1,3,1\n").unwrap();
        let v = &p.voters()[0].order;
        assert!(v.prefers(2, 0));
        assert!(!v.relation().comparable(1, 3));
        assert!(!v.relation().comparable(0, 1));
        assert_eq!(dialect_of(&p).unwrap(), Dialect::Soi);
    }

    #[test]
    fn grouped_voters_share_a_line() {
        let p = Profile::from_chains(&["a", "b"], &[("a>b", 1); 5]).unwrap();
        let text = write_preflib(&p).unwrap();
        assert!(text.ends_with("5,5,1\n5,1,2\n"));
    }

    #[test]
    fn header_errors() {
        let bad_sum = "2\n1,a\n2,b\n3,3,1\n2,1,2\n";
        assert!(matches!(
            parse_preflib(bad_sum),
            Err(Error::Parse { line: 4, .. })
        ));
        let bad_unique = "2\n1,a\n2,b\n2,2,2\n2,1,2\n";
        assert!(matches!(
            parse_preflib(bad_unique),
            Err(Error::Parse { .. })
        ));
        let bad_id = "2\n1,a\n2,b\n1,1,1\n1,1,3\n";
        assert!(matches!(
            parse_preflib(bad_id),
            Err(Error::Parse { line: 5, .. })
        ));
        let twice = "2\n1,a\n2,b\n1,1,1\n1,1,1\n";
        assert!(parse_preflib(twice).is_err());
        assert!(parse_preflib("2\n1,a\n2,b\n1,1,1\n1,{1,2\n").is_err());
        assert!(parse_preflib("x\n").is_err());
    }

    #[test]
    fn comments_and_newer_layout() {
        let classic = "# FILE NAME: x.soc\n3\n1,a\n2,b\n# inline\n3,c\n1,1,1\n1,3,2,1\n";
        assert_eq!(parse_preflib(classic).unwrap().voters().len(), 1);
        let newer =
            "# NUMBER ALTERNATIVES: 2\n# ALTERNATIVE NAME 1: x\n# ALTERNATIVE NAME 2: y\n3: 2,1\n";
        let p = parse_preflib(newer).unwrap();
        assert_eq!(p.labels(), vec!["x", "y"]);
        assert_eq!(p.voters()[0].multiplicity, 3);
        assert!(p.voters()[0].order.prefers(1, 0));
    }

    #[test]
    fn non_layered_orders_are_rejected() {
        let p = Profile::from_chains(&["a", "b", "c", "d"], &[("a>b,c>d", 1)]).unwrap();
        assert!(write_preflib(&p).is_err());
        let w = Profile::from_chains(&["a", "b"], &[("a>b", 2)]).unwrap();
        assert!(write_preflib(&w).is_err());
    }

    #[test]
    fn agendas() {
        let p = Profile::from_chains(&["a", "b", "c"], &[("a>b>c", 1)]).unwrap();
        let lin = parse_agenda("a>b>c", &p).unwrap();
        assert_eq!(lin.as_agenda().unwrap().as_slice(), &[0, 1, 2]);
        assert_eq!(write_agenda(&lin, &p), "a>b>c");
        let part = parse_agenda("a>c\nb>c\n", &p).unwrap();
        assert!(part.before(0, 2) && part.before(1, 2));
        assert!(!part.before(0, 1) && !part.before(1, 0));
        assert_eq!(parse_agenda(&write_agenda(&part, &p), &p).unwrap(), part);
        assert!(matches!(parse_agenda("a>b\nb>a", &p), Err(Error::Cycle(_))));
        assert!(matches!(
            parse_agenda("a>z", &p),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
