//! Instance generators for the hardness constructions.

use crate::error::{Error, Result};
use crate::order::{Agenda, PreferenceOrder};
use crate::profile::{Profile, Voter};

/// Simple undirected graph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices || u == v {
                return Err(Error::usage(format!("bad edge {u}-{v}")));
            }
            if edges[..i]
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            {
                return Err(Error::usage(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(Graph { vertices, edges })
    }

    /// `K_{a,b}` on vertices `0..a` and `a..a+b`, edges listed by right
    /// vertex: `(0, a), (1, a), ..., (0, a+1), ...`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (a..a + b)
            .flat_map(|x| (0..a).map(move |u| (u, x)))
            .collect();
        Graph::new(a + b, edges).expect("valid graph")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of the edges touching `u`, ascending.
    pub fn incident(&self, u: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&j| self.edges[j].0 == u || self.edges[j].1 == u)
            .collect()
    }

    /// Reads `u v` pairs, one per line; `#` starts a comment. The vertex
    /// count is one more than the largest id unless a `vertices N` line
    /// says otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut declared = None;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(no + 1, format!("not a vertex id: {s}")))
            };
            match fields.as_slice() {
                ["vertices", n] => declared = Some(num(n)?),
                [u, v] => edges.push((num(u)?, num(v)?)),
                _ => return Err(Error::parse(no + 1, "expected `u v`")),
            }
        }
        let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::new(declared.unwrap_or(implied), edges)
    }
}

/// A generated instance: profile, target and agenda.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub profile: Profile,
    pub target: usize,
    pub agenda: Agenda,
}

fn chain(seq: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    seq.windows(2).map(|w| (w[0], w[1]))
}

fn edge_labels(s: usize) -> Vec<String> {
    (1..=s).map(|j| format!("c{j}")).collect()
}

/// Successive possible-winner instance from an independent-set question.
/// Alternatives are `c1..cs, p, d`; agenda `c1 > ... > cs > p > d`.
pub fn generate_is_reduction(graph: &Graph, h: usize) -> Result<ReducedInstance> {
    let r = graph.num_vertices();
    if r < 3 || h < 2 || h > r - 1 {
        return Err(Error::usage("need r >= 3 and 2 <= h <= r - 1"));
    }
    let s = graph.edges().len();
    let (p, d) = (s, s + 1);
    let m = s + 2;
    let mut labels = edge_labels(s);
    labels.extend(["p".to_string(), "d".to_string()]);

    let mut voters = Vec::new();
    for u in 0..r {
        let inc = graph.incident(u);
        let rest: Vec<usize> = (0..s).filter(|j| !inc.contains(j)).collect();
        let mut top: Vec<usize> = inc.clone();
        top.push(p);
        top.extend(&rest);
        let mut pairs: Vec<(usize, usize)> = chain(&top).collect();
        if let Some(&first) = rest.first() {
            pairs.push((d, first));
        }
        pairs.extend(chain(&rest));
        voters.push(Voter::new(PreferenceOrder::from_pairs(m, pairs)?));
    }
    let edges_first: Vec<usize> = (0..s).collect();
    let with_tail = |tail: [usize; 2]| {
        let mut seq = edges_first.clone();
        seq.extend(tail);
        PreferenceOrder::linear(m, &seq)
    };
    if h > 2 {
        voters.push(Voter::new(with_tail([d, p])?).with_multiplicity((h - 2) as u64));
    }
    if r - h - 1 > 0 {
        voters.push(Voter::new(with_tail([p, d])?).with_multiplicity((r - h - 1) as u64));
    }
    let mut agenda: Vec<usize> = (0..s).collect();
    agenda.extend([p, d]);
    Ok(ReducedInstance {
        profile: Profile::new(labels, voters)?,
        target: p,
        agenda: Agenda::new(agenda)?,
    })
}

/// Amendment possible-winner instance from a vertex-cover question.
/// Alternatives are `c1..cs, p, d, b`; agenda `b > d > p > cs > ... > c1`.
pub fn generate_vc_reduction(graph: &Graph, h: usize) -> Result<ReducedInstance> {
    let r = graph.num_vertices();
    if r < 1 || h < 1 || h > r - 1 {
        return Err(Error::usage("need r >= 1 and 1 <= h <= r - 1"));
    }
    let s = graph.edges().len();
    let (p, d, b) = (s, s + 1, s + 2);
    let m = s + 3;
    let mut labels = edge_labels(s);
    labels.extend(["p".to_string(), "d".to_string(), "b".to_string()]);

    let mut voters = Vec::new();
    for u in 0..r {
        let inc = graph.incident(u);
        let mut left: Vec<usize> = (0..s).filter(|j| !inc.contains(j)).collect();
        let mut right = left.clone();
        left.extend(&inc);
        left.push(d);
        right.extend([b, p]);
        let pairs: Vec<(usize, usize)> = chain(&left).chain(chain(&right)).collect();
        voters.push(Voter::new(PreferenceOrder::from_pairs(m, pairs)?));
    }
    let edges_in_order: Vec<usize> = (0..s).collect();
    let mut first = vec![p];
    first.extend(&edges_in_order);
    first.extend([b, d]);
    let mut second = vec![p, d];
    second.extend(&edges_in_order);
    second.push(b);
    if r - h - 1 > 0 {
        voters.push(
            Voter::new(PreferenceOrder::linear(m, &first)?).with_multiplicity((r - h - 1) as u64),
        );
    }
    voters.push(Voter::new(PreferenceOrder::linear(m, &second)?).with_multiplicity(h as u64));
    let mut agenda = vec![b, d, p];
    agenda.extend((0..s).rev());
    Ok(ReducedInstance {
        profile: Profile::new(labels, voters)?,
        target: p,
        agenda: Agenda::new(agenda)?,
    })
}

/// Weighted successive instance from a partition question. Alternatives
/// are `p, a, b`; agenda `a > b > p`.
pub fn generate_partition_reduction(numbers: &[u64]) -> Result<ReducedInstance> {
    if numbers.is_empty() || numbers.contains(&0) {
        return Err(Error::usage("partition needs positive integers"));
    }
    if numbers.iter().sum::<u64>() % 2 != 0 {
        return Err(Error::usage("partition needs an even sum"));
    }
    let (p, a, b) = (0, 1, 2);
    let mut voters: Vec<Voter> = numbers
        .iter()
        .map(|&x| PreferenceOrder::from_pairs(3, [(a, p)]).map(|o| Voter::weighted(o, x)))
        .collect::<Result<_>>()?;
    voters.push(Voter::weighted(PreferenceOrder::linear(3, &[p, b, a])?, 1));
    let labels = ["p", "a", "b"].map(String::from).to_vec();
    Ok(ReducedInstance {
        profile: Profile::new(labels, voters)?,
        target: p,
        agenda: Agenda::new(vec![a, b, p])?,
    })
}
