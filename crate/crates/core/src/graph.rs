//! Immutable undirected graphs with optional bipartition labels, BFS
//! distances and the JSON edge-list format.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Distance value recorded for unreachable pairs.
pub const UNREACHABLE: u8 = u8::MAX;

/// One of the two independent sets of a bipartite graph.
///
/// `X` is side 1 (the `x_i` vertices), `Y` is side 2 (the `y_i` vertices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::X => f.write_str("x"),
            Side::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    OutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} joins two vertices of the same part")]
    EdgeWithinOnePart(usize, usize),
    #[error("bipartition must assign each of the {order} vertices exactly once")]
    BadParts { order: usize },
}

/// Simple undirected graph on vertices `0..order`.
///
/// Adjacency is stored as one bitset row per vertex. The graph is immutable
/// once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<FixedBitSet>,
    parts: Option<Vec<Side>>,
}

impl Graph {
    /// Builds a graph, validating ids, loops, duplicates and (if given) the
    /// bipartition.
    pub fn new(
        order: usize,
        edges: &[(usize, usize)],
        parts: Option<Vec<Side>>,
    ) -> Result<Self, GraphError> {
        if let Some(p) = &parts {
            if p.len() != order {
                return Err(GraphError::BadParts { order });
            }
        }
        let mut adjacency = vec![FixedBitSet::with_capacity(order); order];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::OutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adjacency[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            if let Some(p) = &parts {
                if p[u] == p[v] {
                    return Err(GraphError::EdgeWithinOnePart(u.min(v), u.max(v)));
                }
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph { adjacency, parts })
    }

    /// Graph with the given bipartition expressed as two id lists.
    pub fn with_part_lists(
        order: usize,
        edges: &[(usize, usize)],
        side_x: &[usize],
        side_y: &[usize],
    ) -> Result<Self, GraphError> {
        let mut parts: Vec<Option<Side>> = vec![None; order];
        for (list, side) in [(side_x, Side::X), (side_y, Side::Y)] {
            for &v in list {
                if v >= order {
                    return Err(GraphError::OutOfRange { vertex: v, order });
                }
                if parts[v].replace(side).is_some() {
                    return Err(GraphError::BadParts { order });
                }
            }
        }
        let parts = parts
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or(GraphError::BadParts { order })?;
        Graph::new(order, edges, Some(parts))
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].ones()
    }

    pub fn adjacency_row(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn parts(&self) -> Option<&[Side]> {
        self.parts.as_deref()
    }

    pub fn side(&self, v: usize) -> Option<Side> {
        self.parts.as_ref().map(|p| p[v])
    }

    /// Same adjacency without the bipartition labels.
    pub fn without_parts(&self) -> Graph {
        Graph {
            adjacency: self.adjacency.clone(),
            parts: None,
        }
    }

    /// True iff a BFS from vertex 0 reaches every vertex. The empty graph and
    /// the single vertex are connected.
    pub fn is_connected(&self) -> bool {
        if self.order() <= 1 {
            return true;
        }
        bfs_row(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Regularity degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.order()).all(|v| self.degree(v) == d).then_some(d)
    }
}

/// Read-only pairwise distances over vertices `0..order`.
///
/// Implemented by the BFS matrix and by closed-form family rules.
pub trait Distances: Sync {
    fn order(&self) -> usize;

    fn distance(&self, u: usize, v: usize) -> u8;

    /// True iff no pair is unreachable.
    fn is_connected(&self) -> bool {
        (1..self.order()).all(|v| self.distance(0, v) != UNREACHABLE)
    }
}

/// All-pairs distance table, row-major, `UNREACHABLE` for disconnected pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    pub fn row(&self, u: usize) -> &[u8] {
        &self.dist[u * self.order..(u + 1) * self.order]
    }

    pub fn diameter(&self) -> Option<u8> {
        let max = self.dist.iter().copied().max().unwrap_or(0);
        (max != UNREACHABLE).then_some(max)
    }
}

impl Distances for DistanceMatrix {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn distance(&self, u: usize, v: usize) -> u8 {
        self.dist[u * self.order + v]
    }

    fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }
}

fn bfs_row(g: &Graph, source: usize) -> Vec<u8> {
    let mut dist = vec![UNREACHABLE; g.order()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        assert!(next < UNREACHABLE, "graph eccentricity exceeds 254");
        for v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Exact BFS distances between all vertex pairs. Rows are computed
/// independently (in parallel) and assembled in vertex order.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let order = g.order();
    let rows: Vec<Vec<u8>> = (0..order).into_par_iter().map(|s| bfs_row(g, s)).collect();
    DistanceMatrix {
        order,
        dist: rows.concat(),
    }
}

/// JSON edge-list: `{"n": int, "parts": [[ids],[ids]]?, "edges": [[u,v],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<[Vec<usize>; 2]>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeListJson {
    fn from(g: &Graph) -> Self {
        let parts = g.parts().map(|p| {
            let pick = |s: Side| (0..g.order()).filter(|&v| p[v] == s).collect::<Vec<_>>();
            [pick(Side::X), pick(Side::Y)]
        });
        EdgeListJson {
            n: g.order(),
            parts,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<EdgeListJson> for Graph {
    type Error = GraphError;

    fn try_from(json: EdgeListJson) -> Result<Self, Self::Error> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        match &json.parts {
            Some([xs, ys]) => Graph::with_part_lists(json.n, &edges, xs, ys),
            None => Graph::new(json.n, &edges, None),
        }
    }
}
