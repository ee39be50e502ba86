//! Representations, resolving-set verification, a greedy upper bound and the
//! exact metric dimension.
//!
//! The exact solver works on the hitting-set form of the problem: `W`
//! resolves `G` iff, for every vertex pair `{u, v}`, `W` contains a vertex `w`
//! with `d(w, u) != d(w, v)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Distances, UNREACHABLE};

/// Largest graph the exact solver accepts (rows are `u64` masks).
pub const MAX_EXACT_ORDER: usize = 64;

/// Default cap on branch-and-bound node expansions.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("graph is disconnected; resolving sets need finite distances")]
    DisconnectedGraph,
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("exact solver supports at most {max} vertices (got {order})")]
    TooManyVertices { order: usize, max: usize },
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExceeded { budget: u64 },
}

fn check_ids<D: Distances + ?Sized>(d: &D, ids: &[usize]) -> Result<(), ResolveError> {
    match ids.iter().find(|&&v| v >= d.order()) {
        Some(&vertex) => Err(ResolveError::VertexOutOfRange {
            vertex,
            order: d.order(),
        }),
        None => Ok(()),
    }
}

/// `r(v | W)`: distances from `v` to each landmark, in landmark order.
pub fn representation<D: Distances + ?Sized>(
    d: &D,
    v: usize,
    landmarks: &[usize],
) -> Result<Vec<u8>, ResolveError> {
    check_ids(d, &[v])?;
    check_ids(d, landmarks)?;
    let rep: Vec<u8> = landmarks.iter().map(|&w| d.distance(v, w)).collect();
    if rep.contains(&UNREACHABLE) {
        return Err(ResolveError::DisconnectedGraph);
    }
    Ok(rep)
}

/// Verdict of [`verify_resolving`].
///
/// Serializes as `{"resolving": bool, "witness": [u, v]?, "landmarks": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvingReport {
    pub resolving: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[usize; 2]>,
    pub landmarks: Vec<usize>,
}

/// Checks whether `landmarks` resolves the graph. On failure the witness is
/// the lexicographically smallest pair `(u, v)`, `u < v`, with equal
/// representations.
pub fn verify_resolving<D: Distances + ?Sized>(
    d: &D,
    landmarks: &[usize],
) -> Result<ResolvingReport, ResolveError> {
    check_ids(d, landmarks)?;
    if !d.is_connected() {
        return Err(ResolveError::DisconnectedGraph);
    }
    let n = d.order();
    let k = landmarks.len();
    let mut reps = vec![0u8; n * k];
    if k > 0 {
        reps.par_chunks_mut(k).enumerate().for_each(|(v, row)| {
            for (slot, &w) in row.iter_mut().zip(landmarks) {
                *slot = d.distance(v, w);
            }
        });
    }
    // first two members of each representation class, in ascending id order
    let mut classes: HashMap<&[u8], (usize, Option<usize>)> = HashMap::with_capacity(n);
    for v in 0..n {
        let rep = &reps[v * k..(v + 1) * k];
        classes
            .entry(rep)
            .and_modify(|(_, second)| {
                second.get_or_insert(v);
            })
            .or_insert((v, None));
    }
    let witness = classes
        .values()
        .filter_map(|&(first, second)| second.map(|s| [first, s]))
        .min();
    Ok(ResolvingReport {
        resolving: witness.is_none(),
        witness,
        landmarks: landmarks.to_vec(),
    })
}

/// For each unordered pair `{u, v}`, the bitmask of vertices `w` with
/// `d(w, u) != d(w, v)`.
#[derive(Clone, Debug)]
pub struct PairResolverTable {
    order: usize,
    pairs: Vec<(usize, usize)>,
    rows: Vec<u64>,
}

impl PairResolverTable {
    pub fn build<D: Distances + ?Sized>(d: &D) -> Result<Self, ResolveError> {
        let order = d.order();
        if order > MAX_EXACT_ORDER {
            return Err(ResolveError::TooManyVertices {
                order,
                max: MAX_EXACT_ORDER,
            });
        }
        if !d.is_connected() {
            return Err(ResolveError::DisconnectedGraph);
        }
        let pairs: Vec<(usize, usize)> = (0..order)
            .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
            .collect();
        let rows = pairs
            .par_iter()
            .map(|&(u, v)| {
                (0..order)
                    .filter(|&w| d.distance(w, u) != d.distance(w, v))
                    .fold(0u64, |mask, w| mask | 1 << w)
            })
            .collect();
        Ok(PairResolverTable { order, pairs, rows })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Resolvers of `{u, v}` as a mask.
    pub fn row(&self, u: usize, v: usize) -> u64 {
        let (a, b) = (u.min(v), u.max(v));
        // pairs are listed row-major over the upper triangle
        let index = a * (2 * self.order - a - 1) / 2 + (b - a - 1);
        self.rows[index]
    }

    /// True iff the landmark mask intersects every row.
    pub fn is_hit_by(&self, landmarks: u64) -> bool {
        self.rows.iter().all(|&row| row & landmarks != 0)
    }
}

/// Bitmask of a landmark list (ids below 64).
pub fn mask_of(ids: &[usize]) -> u64 {
    ids.iter().fold(0u64, |m, &v| m | 1 << v)
}

fn pairs_within(size: usize) -> usize {
    size * size.saturating_sub(1) / 2
}

/// Greedy upper bound: repeatedly add the vertex that splits the most
/// still-unresolved pairs (ties go to the smallest id). Returns a sorted,
/// resolving landmark list.
pub fn greedy_resolving<D: Distances + ?Sized>(d: &D) -> Result<Vec<usize>, ResolveError> {
    if !d.is_connected() {
        return Err(ResolveError::DisconnectedGraph);
    }
    let n = d.order();
    let mut classes: Vec<Vec<usize>> = if n >= 2 { vec![(0..n).collect()] } else { vec![] };
    let mut chosen = Vec::new();
    let mut is_chosen = vec![false; n];
    let split = |class: &[usize], w: usize| -> Vec<Vec<usize>> {
        let mut keyed: Vec<(u8, usize)> = class.iter().map(|&v| (d.distance(w, v), v)).collect();
        keyed.sort_unstable();
        keyed
            .chunk_by(|a, b| a.0 == b.0)
            .map(|run| run.iter().map(|&(_, v)| v).collect())
            .collect()
    };
    while !classes.is_empty() {
        let unresolved: usize = classes.iter().map(|c| pairs_within(c.len())).sum();
        let (best, _) = (0..n)
            .filter(|&w| !is_chosen[w])
            .map(|w| {
                let remaining: usize = classes
                    .iter()
                    .flat_map(|c| split(c, w))
                    .map(|sub| pairs_within(sub.len()))
                    .sum();
                (w, unresolved - remaining)
            })
            // max gain, then smallest id
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("an unresolved pair implies an unchosen vertex");
        is_chosen[best] = true;
        chosen.push(best);
        classes = classes
            .iter()
            .flat_map(|c| split(c, best))
            .filter(|c| c.len() >= 2)
            .collect();
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Exact solver settings.
#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub node_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Minimum resolving set found by the exact solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSolution {
    pub beta: usize,
    pub basis: Vec<usize>,
    /// Branch-and-bound nodes expanded across all size levels.
    pub nodes: u64,
}

/// Drops duplicate rows and rows that contain another row; hitting the
/// remaining rows is equivalent. Smaller rows first.
fn minimal_rows(rows: &[u64]) -> Vec<u64> {
    let mut sorted: Vec<u64> = rows.to_vec();
    sorted.sort_unstable_by_key(|r| (r.count_ones(), *r));
    sorted.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for r in sorted {
        if !kept.iter().any(|&k| k & !r == 0) {
            kept.push(r);
        }
    }
    kept
}

/// Number of pairwise-disjoint rows picked greedily; a lower bound on any
/// hitting set restricted to `candidates`.
fn packing_bound(rows: &[u64], candidates: u64) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    for &r in rows {
        let rc = r & candidates;
        if rc & used == 0 {
            used |= rc;
            count += 1;
        }
    }
    count
}

struct Search {
    budget: u64,
    nodes: u64,
    collect_all: bool,
    chosen: Vec<usize>,
    found: Vec<Vec<usize>>,
    order: usize,
}

impl Search {
    /// Explores supersets of `chosen` that add vertices `>= next` in
    /// ascending order, at most `remaining` of them. Returns true to stop.
    fn dfs(&mut self, unhit: &[u64], next: usize, remaining: usize) -> Result<bool, ResolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ResolveError::BudgetExceeded {
                budget: self.budget,
            });
        }
        if unhit.is_empty() {
            self.found.push(self.chosen.clone());
            return Ok(!self.collect_all);
        }
        if remaining == 0 || next >= self.order {
            return Ok(false);
        }
        let candidates = !0u64 << next & (u64::MAX >> (64 - self.order));
        // the next pick must not overshoot the largest candidate of any row
        let mut last = usize::MAX;
        for &r in unhit {
            let rc = r & candidates;
            if rc == 0 {
                return Ok(false);
            }
            last = last.min(63 - rc.leading_zeros() as usize);
        }
        if packing_bound(unhit, candidates) > remaining {
            return Ok(false);
        }
        let mut rest = Vec::with_capacity(unhit.len());
        for v in next..=last {
            let bit = 1u64 << v;
            rest.clear();
            rest.extend(unhit.iter().copied().filter(|&r| r & bit == 0));
            self.chosen.push(v);
            let stop = self.dfs(&rest, v + 1, remaining - 1)?;
            self.chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search_level(
    table: &PairResolverTable,
    rows: &[u64],
    size: usize,
    collect_all: bool,
    budget: u64,
) -> Result<(Vec<Vec<usize>>, u64), ResolveError> {
    let mut search = Search {
        budget,
        nodes: 0,
        collect_all,
        chosen: Vec::with_capacity(size),
        found: Vec::new(),
        order: table.order(),
    };
    search.dfs(rows, 0, size)?;
    Ok((search.found, search.nodes))
}

/// Minimum resolving set. Deterministic: the reported basis is the
/// lexicographically smallest sorted id list among all minimum ones.
pub fn exact_metric_dimension<D: Distances + ?Sized>(
    d: &D,
    config: &SolverConfig,
) -> Result<ExactSolution, ResolveError> {
    let table = PairResolverTable::build(d)?;
    let rows = minimal_rows(table.rows());
    let all = if table.order() == 0 { 0 } else { u64::MAX >> (64 - table.order()) };
    let lower = packing_bound(&rows, all);
    let upper = greedy_resolving(d)?.len();
    let mut nodes = 0;
    for size in lower..=upper {
        let (found, used) = search_level(&table, &rows, size, false, config.node_budget.saturating_sub(nodes))?;
        nodes += used;
        if let Some(basis) = found.into_iter().next() {
            debug_assert!(verify_resolving(d, &basis)?.resolving);
            return Ok(ExactSolution {
                beta: basis.len(),
                basis,
                nodes,
            });
        }
    }
    unreachable!("the greedy set has size {upper} and resolves the graph")
}

/// Every minimum resolving set, each sorted, in lexicographic order.
pub fn all_minimum_bases<D: Distances + ?Sized>(
    d: &D,
    config: &SolverConfig,
) -> Result<(usize, Vec<Vec<usize>>), ResolveError> {
    let solution = exact_metric_dimension(d, config)?;
    let table = PairResolverTable::build(d)?;
    let rows = minimal_rows(table.rows());
    let budget = config.node_budget.saturating_sub(solution.nodes);
    let (bases, _) = search_level(&table, &rows, solution.beta, true, budget)?;
    Ok((solution.beta, bases))
}

/// Landmark ids of a mask, ascending.
pub fn mask_ids(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}
