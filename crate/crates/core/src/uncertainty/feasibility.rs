//! Exact integer feasibility for the completion-count systems.
//!
//! Variables are nonnegative integers partitioned into groups whose sums
//! are fixed. The solver merges identical columns inside a group and runs a
//! depth-first search with interval bounds on every constraint.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    fn bounds(&self) -> (i128, i128) {
        let r = self.rhs as i128;
        match self.relation {
            Relation::Le => (i128::MIN, r),
            Relation::Lt => (i128::MIN, r - 1),
            Relation::Ge => (r, i128::MAX),
            Relation::Gt => (r + 1, i128::MAX),
            Relation::Eq => (r, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGroup {
    /// The variables of this group sum to exactly `count`.
    pub count: u64,
    pub variables: Range<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FeasibilitySystem {
    num_variables: usize,
    groups: Vec<VariableGroup>,
    constraints: Vec<Constraint>,
}

impl FeasibilitySystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `size` fresh variables summing to `count`.
    pub fn add_group(&mut self, count: u64, size: usize) -> Range<usize> {
        let vars = self.num_variables..self.num_variables + size;
        self.num_variables += size;
        self.groups.push(VariableGroup {
            count,
            variables: vars.clone(),
        });
        vars
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        self.constraints.push(Constraint {
            terms,
            relation,
            rhs,
        });
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn groups(&self) -> &[VariableGroup] {
        &self.groups
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_satisfied_by(&self, x: &[u64]) -> bool {
        if x.len() != self.num_variables {
            return false;
        }
        let sums_ok = self
            .groups
            .iter()
            .all(|g| x[g.variables.clone()].iter().sum::<u64>() == g.count);
        sums_ok
            && self.constraints.iter().all(|c| {
                let s: i128 = c.terms.iter().map(|&(v, a)| a as i128 * x[v] as i128).sum();
                let (lo, hi) = c.bounds();
                lo <= s && s <= hi
            })
    }
}

struct MergedGroup {
    count: u64,
    // representative variable and its column, per distinct column
    reps: Vec<(usize, Vec<i128>)>,
    // suffix minima / maxima of the columns from rep j onwards
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
}

struct Search<'a> {
    groups: &'a [MergedGroup],
    lo: Vec<i128>,
    hi: Vec<i128>,
    // bounds contributed by groups g.. (index g)
    rest_min: Vec<Vec<i128>>,
    rest_max: Vec<Vec<i128>>,
    values: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, g: usize, j: usize, left: u64, sums: &mut Vec<i128>) -> bool {
        if g == self.groups.len() {
            return (0..sums.len()).all(|c| self.lo[c] <= sums[c] && sums[c] <= self.hi[c]);
        }
        let group = &self.groups[g];
        let l = left as i128;
        for (c, &sum) in sums.iter().enumerate() {
            let min = sum + l * group.suffix_min[j][c] + self.rest_min[g + 1][c];
            let max = sum + l * group.suffix_max[j][c] + self.rest_max[g + 1][c];
            if min > self.hi[c] || max < self.lo[c] {
                return false;
            }
        }
        let (var, ref col) = group.reps[j];
        let last = j + 1 == group.reps.len();
        let choices: Box<dyn Iterator<Item = u64>> = if last {
            Box::new(std::iter::once(left))
        } else {
            Box::new((0..=left).rev())
        };
        for v in choices {
            let vi = v as i128;
            for c in 0..sums.len() {
                sums[c] += vi * col[c];
            }
            self.values[var] = v;
            let ok = if last || v == left {
                let next_count = self.groups.get(g + 1).map_or(0, |n| n.count);
                self.run(g + 1, 0, next_count, sums)
            } else {
                self.run(g, j + 1, left - v, sums)
            };
            for c in 0..sums.len() {
                sums[c] -= vi * col[c];
            }
            if ok {
                return true;
            }
            self.values[var] = 0;
        }
        false
    }
}

/// Finds a nonnegative integer assignment meeting every group sum and
/// constraint, or `None` if none exists.
pub fn solve_feasibility(system: &FeasibilitySystem) -> Option<Vec<u64>> {
    let nc = system.constraints.len();
    let mut columns = vec![vec![0i128; nc]; system.num_variables];
    for (ci, c) in system.constraints.iter().enumerate() {
        for &(v, a) in &c.terms {
            columns[v][ci] += a as i128;
        }
    }
    let (lo, hi): (Vec<i128>, Vec<i128>) =
        system.constraints.iter().map(Constraint::bounds).unzip();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return None;
    }

    let mut merged = Vec::new();
    for g in &system.groups {
        if g.variables.is_empty() {
            if g.count > 0 {
                return None;
            }
            continue;
        }
        let mut reps: Vec<(usize, Vec<i128>)> = Vec::new();
        for v in g.variables.clone() {
            if !reps.iter().any(|(_, col)| *col == columns[v]) {
                reps.push((v, columns[v].clone()));
            }
        }
        let r = reps.len();
        let mut suffix_min = vec![vec![i128::MAX; nc]; r];
        let mut suffix_max = vec![vec![i128::MIN; nc]; r];
        for j in (0..r).rev() {
            for c in 0..nc {
                let (mn, mx) = if j + 1 < r {
                    (suffix_min[j + 1][c], suffix_max[j + 1][c])
                } else {
                    (i128::MAX, i128::MIN)
                };
                suffix_min[j][c] = mn.min(reps[j].1[c]);
                suffix_max[j][c] = mx.max(reps[j].1[c]);
            }
        }
        merged.push(MergedGroup {
            count: g.count,
            reps,
            suffix_min,
            suffix_max,
        });
    }

    let ng = merged.len();
    let mut rest_min = vec![vec![0i128; nc]; ng + 1];
    let mut rest_max = vec![vec![0i128; nc]; ng + 1];
    for g in (0..ng).rev() {
        let n = merged[g].count as i128;
        for c in 0..nc {
            rest_min[g][c] = rest_min[g + 1][c] + n * merged[g].suffix_min[0][c];
            rest_max[g][c] = rest_max[g + 1][c] + n * merged[g].suffix_max[0][c];
        }
    }
    let mut search = Search {
        groups: &merged,
        lo,
        hi,
        rest_min,
        rest_max,
        values: vec![0; system.num_variables],
    };
    let first = merged.first().map_or(0, |g| g.count);
    let mut sums = vec![0i128; nc];
    if search.run(0, 0, first, &mut sums) {
        Some(search.values)
    } else {
        None
    }
}
