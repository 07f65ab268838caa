use crate::error::{Error, Result};
use crate::majority::WeightedMajorityGraph;

/// A Hamiltonian cycle of the sub-tournament on `vertices`, which must be
/// strongly connected with at least three members. Consecutive entries,
/// and the last and first, are majority arcs.
pub fn hamiltonian_cycle(graph: &WeightedMajorityGraph, vertices: &[usize]) -> Result<Vec<usize>> {
    let k = vertices.len();
    if k < 3 {
        return Err(Error::usage(format!(
            "a component with {k} vertices has no Hamiltonian cycle"
        )));
    }
    let arc = |a: usize, b: usize| graph.beats(a, b);
    let mut cycle = initial_triangle(vertices, &arc)
        .ok_or_else(|| Error::usage("the vertex set is not strongly connected"))?;
    let mut outside: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|v| !cycle.contains(v))
        .collect();

    while !outside.is_empty() {
        if let Some((idx, pos)) = outside
            .iter()
            .enumerate()
            .find_map(|(idx, &v)| insertion_point(&cycle, v, &arc).map(|pos| (idx, pos)))
        {
            let v = outside.remove(idx);
            cycle.insert(pos, v);
            continue;
        }
        // every outside vertex beats the whole cycle or loses to all of it
        let c0 = cycle[0];
        let bridge = outside.iter().find_map(|&b| {
            if !arc(c0, b) {
                return None;
            }
            outside
                .iter()
                .find(|&&a| arc(a, c0) && arc(b, a))
                .map(|&a| (b, a))
        });
        let (b, a) =
            bridge.ok_or_else(|| Error::usage("the vertex set is not strongly connected"))?;
        cycle.insert(1, a);
        cycle.insert(1, b);
        outside.retain(|&x| x != a && x != b);
    }
    Ok(cycle)
}

fn initial_triangle(vertices: &[usize], arc: &impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let (x, y) = if arc(a, b) { (a, b) } else { (b, a) };
            if let Some(&z) = vertices.iter().find(|&&z| arc(y, z) && arc(z, x)) {
                return Some(vec![x, y, z]);
            }
        }
    }
    None
}

// Index at which `v` fits between some c_i -> v -> c_{i+1}.
fn insertion_point(
    cycle: &[usize],
    v: usize,
    arc: &impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let k = cycle.len();
    (0..k).find_map(|i| (arc(cycle[i], v) && arc(v, cycle[(i + 1) % k])).then_some(i + 1))
}

/// True when `cycle` is a Hamiltonian cycle of `vertices` in `graph`.
pub fn is_hamiltonian_cycle(
    graph: &WeightedMajorityGraph,
    vertices: &[usize],
    cycle: &[usize],
) -> bool {
    let mut a = vertices.to_vec();
    let mut b = cycle.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || b.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let k = cycle.len();
    (0..k).all(|i| graph.beats(cycle[i], cycle[(i + 1) % k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycle() {
        let g = WeightedMajorityGraph::from_tournament(3, |a, b| (a + 1) % 3 == b);
        let c = hamiltonian_cycle(&g, &[0, 1, 2]).unwrap();
        assert_eq!(c, vec![0, 1, 2]);
    }

    #[test]
    fn five_vertex_strong_tournament() {
        // rotational tournament: i beats i+1 and i+2 (mod 5)
        let g = WeightedMajorityGraph::from_tournament(5, |a, b| {
            let d = (b + 5 - a) % 5;
            d == 1 || d == 2
        });
        let all: Vec<usize> = (0..5).collect();
        let c = hamiltonian_cycle(&g, &all).unwrap();
        assert!(is_hamiltonian_cycle(&g, &all, &c));
    }

    #[test]
    fn bridge_step_needed() {
        // cycle 0->1->2->0; 3 beats all of it, the cycle beats 4, 4 beats 3
        let g = WeightedMajorityGraph::from_tournament(5, |a, b| match (a, b) {
            (0, 1) | (1, 2) | (2, 0) => true,
            (3, x) if x < 3 => true,
            (x, 4) if x < 3 => true,
            (4, 3) => true,
            _ => false,
        });
        let all: Vec<usize> = (0..5).collect();
        let c = hamiltonian_cycle(&g, &all).unwrap();
        assert!(is_hamiltonian_cycle(&g, &all, &c));
    }

    #[test]
    fn small_or_disconnected_sets_rejected() {
        let g = WeightedMajorityGraph::from_tournament(3, |a, b| a < b);
        assert!(hamiltonian_cycle(&g, &[0]).is_err());
        assert!(hamiltonian_cycle(&g, &[0, 1, 2]).is_err());
    }
}
