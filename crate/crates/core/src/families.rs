//! Generators for the three regular bipartite families and their closed-form
//! distance rule.
//!
//! Every family lives on `2n` vertices: side X holds `x_1..x_n` as ids
//! `0..n`, side Y holds `y_1..y_n` as ids `n..2n`. Complement families remove
//! disjoint even cycles from `K_{n,n}`; cycle `i` uses its own block of
//! consecutive x/y indices and is laid out as `x_1 y_1 x_2 y_2 ... x_m y_m`
//! relative to that block.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Distances, Graph, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("crown graphs need n >= 3 (got {0})")]
    NTooSmall(usize),
    #[error("Hamiltonian-cycle complements need m >= {min} (got {m})")]
    MTooSmall { m: usize, min: usize },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("partition {0:?} yields a disconnected graph")]
    Disconnected(Vec<usize>),
    #[error("cannot parse family spec {0:?} (expected crown:n=N, hamcomp:m=M or multi:m=A,B,...)")]
    Parse(String),
    #[error("{0} is outside the closed-form distance range (diameter exceeds 3)")]
    SpecOutOfClosedFormRange(FamilySpec),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
}

/// A vertex named by side and 1-based index, e.g. `x3` or `y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub side: Side,
    pub index: usize,
}

impl VertexLabel {
    pub fn x(index: usize) -> Self {
        VertexLabel { side: Side::X, index }
    }

    pub fn y(index: usize) -> Self {
        VertexLabel { side: Side::Y, index }
    }

    /// Canonical id inside a bipartite graph with `half` vertices per side.
    pub fn id(self, half: usize) -> Option<usize> {
        if self.index == 0 || self.index > half {
            return None;
        }
        Some(match self.side {
            Side::X => self.index - 1,
            Side::Y => half + self.index - 1,
        })
    }

    /// Inverse of [`VertexLabel::id`].
    pub fn from_id(id: usize, half: usize) -> Option<Self> {
        match id {
            _ if id < half => Some(VertexLabel::x(id + 1)),
            _ if id < 2 * half => Some(VertexLabel::y(id - half + 1)),
            _ => None,
        }
    }

    /// Shifts the index by a block offset (component-local to host labels).
    pub fn offset(self, by: usize) -> Self {
        VertexLabel {
            side: self.side,
            index: self.index + by,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side, self.index)
    }
}

impl FromStr for VertexLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let side = match s.chars().next().map(|c| c.to_ascii_lowercase()) {
            Some('x') => Side::X,
            Some('y') => Side::Y,
            _ => return Err(format!("bad vertex label {s:?}")),
        };
        let index: usize = s[1..].parse().map_err(|_| format!("bad vertex label {s:?}"))?;
        if index == 0 {
            return Err(format!("vertex labels are 1-based: {s:?}"));
        }
        Ok(VertexLabel { side, index })
    }
}

/// Labels for a sorted id list, e.g. `["x1", "x2", "y4"]`.
pub fn labels_of(ids: &[usize], half: usize) -> Vec<String> {
    ids.iter()
        .map(|&v| VertexLabel::from_id(v, half).map_or_else(|| v.to_string(), |l| l.to_string()))
        .collect()
}

/// A family instance description.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum FamilySpec {
    /// `K_{n,n}` minus a perfect matching.
    Crown { n: usize },
    /// `K_{m,m}` minus a Hamiltonian cycle.
    HamComp { m: usize },
    /// `K_{n,n}` minus disjoint even cycles of half-lengths `parts`.
    MultiCycle { parts: Vec<usize> },
}

impl FamilySpec {
    /// Vertices per side.
    pub fn half_order(&self) -> usize {
        match self {
            FamilySpec::Crown { n } => *n,
            FamilySpec::HamComp { m } => *m,
            FamilySpec::MultiCycle { parts } => parts.iter().sum(),
        }
    }

    pub fn order(&self) -> usize {
        2 * self.half_order()
    }

    /// Removed-cycle half-lengths, or `None` for crown graphs.
    pub fn cycle_parts(&self) -> Option<Vec<usize>> {
        match self {
            FamilySpec::Crown { .. } => None,
            FamilySpec::HamComp { m } => Some(vec![*m]),
            FamilySpec::MultiCycle { parts } => Some(parts.clone()),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::Crown { n } if *n < 3 => Err(FamilyError::NTooSmall(*n)),
            FamilySpec::HamComp { m } if *m < 4 => Err(FamilyError::MTooSmall { m: *m, min: 4 }),
            FamilySpec::MultiCycle { parts } => validate_partition(parts),
            _ => Ok(()),
        }
    }

    /// True iff the family has diameter at most 3, so distances follow the
    /// side/adjacency rule.
    pub fn has_closed_form(&self) -> bool {
        match self {
            FamilySpec::Crown { n } => *n >= 3,
            FamilySpec::HamComp { m } => *m >= 5,
            FamilySpec::MultiCycle { parts } => parts.iter().sum::<usize>() >= 5,
        }
    }

    /// Builds the graph and its removed-cycle layouts.
    pub fn generate(&self) -> Result<FamilyInstance, FamilyError> {
        let (graph, layouts) = match self {
            FamilySpec::Crown { n } => (gen_crown(*n)?.0, Vec::new()),
            FamilySpec::HamComp { m } => {
                let (g, layout) = gen_hamcomp(*m)?;
                (g, vec![layout])
            }
            FamilySpec::MultiCycle { parts } => gen_multicycle(parts)?,
        };
        Ok(FamilyInstance {
            spec: self.clone(),
            graph,
            layouts,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Crown { n } => write!(f, "crown:n={n}"),
            FamilySpec::HamComp { m } => write!(f, "hamcomp:m={m}"),
            FamilySpec::MultiCycle { parts } => {
                let list: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "multi:m={}", list.join(","))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `crown:n=5`, `hamcomp:m=7` or `multi:m=2,3,5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let (key, value) = rest.split_once('=').ok_or_else(bad)?;
        let number = |v: &str| v.trim().parse::<usize>().map_err(|_| bad());
        match (kind.trim(), key.trim()) {
            ("crown", "n") => Ok(FamilySpec::Crown { n: number(value)? }),
            ("hamcomp", "m") => Ok(FamilySpec::HamComp { m: number(value)? }),
            ("multi", "m") => Ok(FamilySpec::MultiCycle {
                parts: value.split(',').map(number).collect::<Result<_, _>>()?,
            }),
            _ => Err(bad()),
        }
    }
}

fn validate_partition(parts: &[usize]) -> Result<(), FamilyError> {
    if parts.is_empty() {
        return Err(FamilyError::BadPartition("empty partition".into()));
    }
    if let Some(&p) = parts.iter().find(|&&p| p < 2) {
        return Err(FamilyError::BadPartition(format!("part {p} < 2")));
    }
    let n: usize = parts.iter().sum();
    // m_i = 2 blocks only connect through other blocks; K_{3,3} minus C_6 is a
    // perfect matching.
    if n < 4 || (parts.contains(&2) && n < 5) {
        return Err(FamilyError::Disconnected(parts.to_vec()));
    }
    Ok(())
}

/// Cyclic vertex order of one removed cycle: `x_1 y_1 x_2 y_2 ... x_m y_m`
/// as global ids. Even positions are side X, odd positions side Y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleLayout {
    pub vertices: Vec<usize>,
}

impl CycleLayout {
    /// Half-length `m` of the cycle.
    pub fn half_len(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn side_at(position: usize) -> Side {
        if position.is_multiple_of(2) {
            Side::X
        } else {
            Side::Y
        }
    }

    /// Consecutive pairs around the cycle, including the closing pair.
    pub fn consecutive_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }
}

/// A generated instance with its removed cycles (empty for crown graphs).
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub spec: FamilySpec,
    pub graph: Graph,
    pub layouts: Vec<CycleLayout>,
}

fn bipartite_parts(half: usize) -> Vec<Side> {
    let mut parts = vec![Side::X; half];
    parts.resize(2 * half, Side::Y);
    parts
}

fn layouts_for(parts: &[usize]) -> Vec<CycleLayout> {
    let half: usize = parts.iter().sum();
    let mut offset = 0;
    parts
        .iter()
        .map(|&m| {
            let vertices = (0..m)
                .flat_map(|i| [offset + i, half + offset + i])
                .collect();
            offset += m;
            CycleLayout { vertices }
        })
        .collect()
}

/// `K_{n,n}` minus the pairs selected by `removed`. Not validated.
fn bipartite_complement(half: usize, removed: &RemovedPairs) -> Graph {
    let mut edges = Vec::with_capacity(half * half);
    for i in 0..half {
        for j in 0..half {
            if !removed.contains(i, j) {
                edges.push((i, half + j));
            }
        }
    }
    Graph::new(2 * half, &edges, Some(bipartite_parts(half)))
        .expect("complement construction yields a valid bipartite graph")
}

/// The `(n-1)`-regular crown graph and its removed perfect matching
/// `{(x_i, y_i)}`.
pub fn gen_crown(n: usize) -> Result<(Graph, Vec<(usize, usize)>), FamilyError> {
    FamilySpec::Crown { n }.validate()?;
    let graph = bipartite_complement(n, &RemovedPairs::Matching);
    Ok((graph, (0..n).map(|i| (i, n + i)).collect()))
}

/// `K_{m,m}` minus the Hamiltonian cycle `x_1 y_1 ... x_m y_m x_1`.
pub fn gen_hamcomp(m: usize) -> Result<(Graph, CycleLayout), FamilyError> {
    FamilySpec::HamComp { m }.validate()?;
    let graph = bipartite_complement(m, &RemovedPairs::blocks(&[m]));
    Ok((graph, layouts_for(&[m]).remove(0)))
}

/// `K_{n,n}` minus `r` disjoint even cycles with half-lengths `parts`.
pub fn gen_multicycle(parts: &[usize]) -> Result<(Graph, Vec<CycleLayout>), FamilyError> {
    validate_partition(parts)?;
    let half = parts.iter().sum();
    let graph = bipartite_complement(half, &RemovedPairs::blocks(parts));
    Ok((graph, layouts_for(parts)))
}

/// Which `(x_i, y_j)` pairs (0-based side indices) are missing from `K_{n,n}`.
#[derive(Clone, Debug)]
enum RemovedPairs {
    Matching,
    /// `(offset, m)` for the block containing each x index.
    Blocks(Vec<(usize, usize)>),
}

impl RemovedPairs {
    fn blocks(parts: &[usize]) -> Self {
        let mut offset = 0;
        let mut block_of = Vec::with_capacity(parts.iter().sum());
        for &m in parts {
            block_of.extend(std::iter::repeat_n((offset, m), m));
            offset += m;
        }
        RemovedPairs::Blocks(block_of)
    }

    /// Cycle `x_1 y_1 ... x_m y_m` removes `x_i y_i` and `x_{i+1} y_i`.
    #[inline]
    fn contains(&self, i: usize, j: usize) -> bool {
        match self {
            RemovedPairs::Matching => i == j,
            RemovedPairs::Blocks(block_of) => {
                let (offset, m) = block_of[i];
                if j < offset || j >= offset + m {
                    return false;
                }
                let (li, lj) = (i - offset, j - offset);
                lj == li || lj == (li + m - 1) % m
            }
        }
    }
}

/// Distance rule for diameter-3 family members: 0 on the diagonal, 2 within a
/// side, and across sides 3 for a removed pair, 1 otherwise.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    half: usize,
    removed: RemovedPairs,
}

impl ClosedForm {
    pub fn new(spec: &FamilySpec) -> Result<Self, FamilyError> {
        spec.validate()?;
        if !spec.has_closed_form() {
            return Err(FamilyError::SpecOutOfClosedFormRange(spec.clone()));
        }
        let removed = match spec {
            FamilySpec::Crown { .. } => RemovedPairs::Matching,
            FamilySpec::HamComp { m } => RemovedPairs::blocks(&[*m]),
            FamilySpec::MultiCycle { parts } => RemovedPairs::blocks(parts),
        };
        Ok(ClosedForm {
            half: spec.half_order(),
            removed,
        })
    }
}

impl Distances for ClosedForm {
    fn order(&self) -> usize {
        2 * self.half
    }

    #[inline]
    fn distance(&self, u: usize, v: usize) -> u8 {
        if u == v {
            return 0;
        }
        let (a, b) = (u.min(v), u.max(v));
        if b < self.half || a >= self.half {
            return 2;
        }
        if self.removed.contains(a, b - self.half) {
            3
        } else {
            1
        }
    }

    fn is_connected(&self) -> bool {
        true
    }
}

/// One-shot closed-form distance between two vertices of a family instance.
pub fn closed_form_distance(spec: &FamilySpec, u: usize, v: usize) -> Result<u8, FamilyError> {
    let cf = ClosedForm::new(spec)?;
    for w in [u, v] {
        if w >= cf.order() {
            return Err(FamilyError::VertexOutOfRange {
                vertex: w,
                order: cf.order(),
            });
        }
    }
    Ok(cf.distance(u, v))
}

/// Distances inside one cycle-complement component `K_{m,m} \ C_{2m}` as seen
/// from a host of order at least 5: 1 if adjacent, 2 on the same side, 3 for a
/// removed pair. Ids follow the component's own layout (`x_i -> i-1`,
/// `y_i -> m+i-1`).
#[derive(Clone, Debug)]
pub struct ComponentMetric {
    inner: ClosedForm,
}

impl ComponentMetric {
    pub fn new(m: usize) -> Self {
        ComponentMetric {
            inner: ClosedForm {
                half: m,
                removed: RemovedPairs::blocks(&[m]),
            },
        }
    }
}

impl Distances for ComponentMetric {
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn distance(&self, u: usize, v: usize) -> u8 {
        self.inner.distance(u, v)
    }

    fn is_connected(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_pairs_distances;

    #[test]
    fn spec_strings_round_trip() {
        for s in ["crown:n=5", "hamcomp:m=7", "multi:m=2,3,5"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "multi:m=2, 3".parse::<FamilySpec>().unwrap(),
            FamilySpec::MultiCycle { parts: vec![2, 3] }
        );
        for bad in ["crown", "crown:m=3", "wheel:n=4", "multi:m=2,,3", "hamcomp:m=x"] {
            assert!(matches!(bad.parse::<FamilySpec>(), Err(FamilyError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(gen_crown(2).unwrap_err(), FamilyError::NTooSmall(2));
        assert_eq!(gen_hamcomp(3).unwrap_err(), FamilyError::MTooSmall { m: 3, min: 4 });
        assert!(matches!(gen_multicycle(&[2]), Err(FamilyError::Disconnected(_))));
        assert!(matches!(gen_multicycle(&[2, 2]), Err(FamilyError::Disconnected(_))));
        assert!(matches!(gen_multicycle(&[3]), Err(FamilyError::Disconnected(_))));
        assert!(matches!(gen_multicycle(&[1, 4]), Err(FamilyError::BadPartition(_))));
        assert!(matches!(gen_multicycle(&[]), Err(FamilyError::BadPartition(_))));
        assert!(gen_multicycle(&[2, 3]).is_ok());
    }

    #[test]
    fn vertex_labels() {
        assert_eq!(VertexLabel::x(1).id(4), Some(0));
        assert_eq!(VertexLabel::y(4).id(4), Some(7));
        assert_eq!(VertexLabel::y(5).id(4), None);
        assert_eq!(VertexLabel::from_id(5, 4), Some(VertexLabel::y(2)));
        assert_eq!("Y12".parse::<VertexLabel>().unwrap(), VertexLabel::y(12));
        assert!("x0".parse::<VertexLabel>().is_err());
        assert!("z1".parse::<VertexLabel>().is_err());
        assert_eq!(labels_of(&[0, 1, 7], 4), ["x1", "x2", "y4"]);
    }

    #[test]
    fn crown_distances() {
        let (g, matching) = gen_crown(3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(matching, vec![(0, 3), (1, 4), (2, 5)]);
        let dm = all_pairs_distances(&g);
        assert_eq!(dm.distance(0, 3), 3);
        assert_eq!(dm.distance(0, 4), 1);
        assert_eq!(dm.distance(0, 1), 2);

        let (g4, _) = gen_crown(4).unwrap();
        assert_eq!(g4.regular_degree(), Some(3));
        assert_eq!(all_pairs_distances(&g4).distance(0, 4), 3);
        let spec = FamilySpec::Crown { n: 4 };
        assert_eq!(closed_form_distance(&spec, 1, 3), Ok(2));
        assert_eq!(closed_form_distance(&spec, 5, 5), Ok(0));
    }

    #[test]
    fn hamcomp_structure() {
        let (g, layout) = gen_hamcomp(5).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(layout.vertices, vec![0, 5, 1, 6, 2, 7, 3, 8, 4, 9]);
        assert!(layout.consecutive_pairs().all(|(u, v)| !g.has_edge(u, v)));
        assert_eq!(all_pairs_distances(&g).distance(0, 5), 3);
    }

    #[test]
    fn closed_form_range() {
        for spec in [
            FamilySpec::HamComp { m: 4 },
            FamilySpec::MultiCycle { parts: vec![4] },
        ] {
            assert_eq!(
                closed_form_distance(&spec, 0, 1),
                Err(FamilyError::SpecOutOfClosedFormRange(spec.clone()))
            );
        }
        let spec = FamilySpec::MultiCycle { parts: vec![2, 3] };
        assert_eq!(closed_form_distance(&spec, 0, 5), Ok(3));
        assert!(matches!(
            closed_form_distance(&spec, 0, 10),
            Err(FamilyError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn two_block_removes_all_four_pairs() {
        let (g, layouts) = gen_multicycle(&[2, 3]).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(layouts[0].vertices, vec![0, 5, 1, 6]);
        assert_eq!(layouts[1].vertices, vec![2, 7, 3, 8, 4, 9]);
        for (x, y) in [(0, 5), (0, 6), (1, 5), (1, 6)] {
            assert!(!g.has_edge(x, y));
        }
        assert!(g.is_connected());
    }
}
