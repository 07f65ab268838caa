use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;
use serde::Serialize;

/// Strong components of a majority tournament, top component first. Every
/// arc between two components points from the earlier to the later one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub fn top(&self) -> &[usize] {
        &self.components[0]
    }

    pub fn component_of(&self, a: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&a))
    }
}

pub fn scc_decomposition(graph: &WeightedMajorityGraph) -> Result<SccDecomposition> {
    if !graph.is_tournament() {
        return Err(Error::usage(
            "the majority relation is not a tournament (incomplete profile or even total weight)",
        ));
    }
    let mut components = tarjan(graph.size(), |a, b| graph.beats(a, b));
    components.reverse();
    for c in &mut components {
        c.sort_unstable();
    }
    Ok(SccDecomposition { components })
}

// Components come out sinks first.
pub(crate) fn tarjan(n: usize, arc: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // explicit call stack of (vertex, next successor to try)
        let mut calls = vec![(root, 0usize)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut succ)) = calls.last_mut() {
            if *succ < n {
                let w = *succ;
                *succ += 1;
                if w == v || !arc(v, w) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_tournament_splits_fully() {
        let g = WeightedMajorityGraph::from_tournament(3, |a, b| a < b);
        let d = scc_decomposition(&g).unwrap();
        assert_eq!(d.components, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cycle_above_sink() {
        // 0->1->2->0, all beat 3
        let g = WeightedMajorityGraph::from_tournament(4, |a, b| {
            b == 3 || (a + 1) % 3 == b && a < 3 && b < 3
        });
        let d = scc_decomposition(&g).unwrap();
        assert_eq!(d.components, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(d.component_of(3), Some(1));
    }

    #[test]
    fn sink_cycle_below_source() {
        // 3 beats everyone, 0->1->2->0 below
        let g = WeightedMajorityGraph::from_tournament(4, |a, b| {
            a == 3 || (a < 3 && b < 3 && (a + 1) % 3 == b)
        });
        let d = scc_decomposition(&g).unwrap();
        assert_eq!(d.components, vec![vec![3], vec![0, 1, 2]]);
    }

    #[test]
    fn non_tournament_rejected() {
        let g = WeightedMajorityGraph::from_matrix(2, 2, vec![0, 1, 1, 0]).unwrap();
        assert!(scc_decomposition(&g).is_err());
    }
}
