//! Gap calculus on removed cycles.
//!
//! For a landmark set `S` and a removed cycle `C`, the landmarks on `C` cut it
//! into arcs. The interior of each arc (between two cyclically consecutive
//! landmarks) is a gap; the two landmarks are its end points, and gaps sharing
//! an end point are neighbours. In the diameter-3 hosts, a non-landmark vertex
//! is told apart from same-side vertices only by which landmarks are its cycle
//! neighbours, which is what the facts below control.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::families::CycleLayout;
use crate::graph::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("gap decomposition needs at least 2 landmarks on the cycle (found {found})")]
    TooFewLandmarksOnCycle { found: usize },
    #[error("counting bound is defined for m >= 5 (got {0})")]
    MTooSmall(usize),
}

/// Interior vertices between two cyclically consecutive landmarks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub start: usize,
    pub end: usize,
    pub interior: Vec<usize>,
    /// Side of the `start` end point.
    pub start_side: Side,
}

impl Gap {
    pub fn size(&self) -> usize {
        self.interior.len()
    }
}

/// Gaps of one cycle, in cyclic order starting from the first landmark in
/// layout order. Gap `j` and gap `j + 1` (cyclically) are neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapStructure {
    pub cycle: CycleLayout,
    pub landmarks: Vec<usize>,
    pub gaps: Vec<Gap>,
}

impl GapStructure {
    pub fn sizes(&self) -> Vec<usize> {
        self.gaps.iter().map(Gap::size).collect()
    }
}

/// Splits `layout` at the landmarks lying on it. Landmarks elsewhere are
/// ignored.
pub fn gap_decompose(layout: &CycleLayout, landmarks: &[usize]) -> Result<GapStructure, GapError> {
    let wanted: HashSet<usize> = landmarks.iter().copied().collect();
    let positions: Vec<usize> = (0..layout.len())
        .filter(|&p| wanted.contains(&layout.vertices[p]))
        .collect();
    if positions.len() < 2 {
        return Err(GapError::TooFewLandmarksOnCycle {
            found: positions.len(),
        });
    }
    let len = layout.len();
    let gaps = positions
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            let q = positions[(j + 1) % positions.len()];
            let steps = (q + len - p) % len;
            Gap {
                start: layout.vertices[p],
                end: layout.vertices[q],
                interior: (1..steps).map(|s| layout.vertices[(p + s) % len]).collect(),
                start_side: CycleLayout::side_at(p),
            }
        })
        .collect();
    Ok(GapStructure {
        cycle: layout.clone(),
        landmarks: positions.iter().map(|&p| layout.vertices[p]).collect(),
        gaps,
    })
}

/// Per-fact verdicts for a landmark set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactFlags {
    /// Every gap has at most four vertices.
    #[serde(rename = "i")]
    pub gaps_at_most_four: bool,
    /// At most one gap has four vertices.
    #[serde(rename = "ii")]
    pub single_four_gap: bool,
    /// Every gap with at least two vertices has neighbours of size at most one.
    #[serde(rename = "iii")]
    pub large_gap_neighbours_small: bool,
    /// Any two 3-gaps have end points on opposite sides.
    #[serde(rename = "iv")]
    pub three_gaps_opposite_sides: bool,
    /// 3-gaps and 4-gaps do not coexist.
    #[serde(rename = "v")]
    pub three_and_four_exclusive: bool,
}

impl FactFlags {
    pub fn all(&self) -> bool {
        self.gaps_at_most_four
            && self.single_four_gap
            && self.large_gap_neighbours_small
            && self.three_gaps_opposite_sides
            && self.three_and_four_exclusive
    }
}

/// Cross-cycle verdicts for hosts with two or more removed cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionFlags {
    /// At most one 4-gap over all cycles.
    pub a: bool,
    /// Any two 3-gaps (any cycles) have end points on opposite sides.
    pub b: bool,
    /// No 3-gap and 4-gap coexist anywhere.
    pub c: bool,
}

impl ConditionFlags {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapAudit {
    pub facts: FactFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionFlags>,
    /// gap size -> number of gaps
    pub histogram: BTreeMap<usize, usize>,
    pub four_gaps: usize,
    /// End-point side of each 3-gap, in cycle order.
    pub three_gap_sides: Vec<Side>,
    pub violations: Vec<String>,
}

impl GapAudit {
    /// All facts, and all cross-cycle conditions when present.
    pub fn passes(&self) -> bool {
        self.facts.all() && self.conditions.is_none_or(|c| c.all())
    }
}

fn global_flags(four_gaps: usize, three_sides: &[Side], violations: &mut Vec<String>) -> (bool, bool, bool) {
    let single_four = four_gaps <= 1;
    if !single_four {
        violations.push(format!("{four_gaps} gaps have four vertices"));
    }
    let opposite = match three_sides {
        [] | [_] => true,
        [a, b] => a != b,
        _ => false,
    };
    if !opposite {
        let sides: Vec<String> = three_sides.iter().map(Side::to_string).collect();
        violations.push(format!("3-gap end points on sides [{}] are not pairwise opposite", sides.join(", ")));
    }
    let exclusive = three_sides.is_empty() || four_gaps == 0;
    if !exclusive {
        violations.push("a 3-gap and a 4-gap coexist".to_string());
    }
    (single_four, opposite, exclusive)
}

/// Evaluates the five facts over the given cycles. With several structures,
/// the counting facts (4-gaps, 3-gap sides, coexistence) are taken over all
/// of them together.
pub fn check_facts(structures: &[GapStructure]) -> GapAudit {
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    let mut four_gaps = 0;
    let mut three_gap_sides = Vec::new();
    let mut at_most_four = true;
    let mut neighbours_small = true;
    for gs in structures {
        let sizes = gs.sizes();
        let count = sizes.len();
        for (j, gap) in gs.gaps.iter().enumerate() {
            let size = gap.size();
            *histogram.entry(size).or_insert(0) += 1;
            match size {
                3 => three_gap_sides.push(gap.start_side),
                4 => four_gaps += 1,
                s if s > 4 => {
                    at_most_four = false;
                    violations.push(format!("gap {}..{} has {s} vertices", gap.start, gap.end));
                }
                _ => {}
            }
            if size >= 2 {
                let prev = sizes[(j + count - 1) % count];
                let next = sizes[(j + 1) % count];
                if prev > 1 || next > 1 {
                    neighbours_small = false;
                    violations.push(format!(
                        "gap {}..{} has {size} vertices but a neighbouring gap has {}",
                        gap.start,
                        gap.end,
                        prev.max(next)
                    ));
                }
            }
        }
    }
    let (single_four, opposite, exclusive) = global_flags(four_gaps, &three_gap_sides, &mut violations);
    GapAudit {
        facts: FactFlags {
            gaps_at_most_four: at_most_four,
            single_four_gap: single_four,
            large_gap_neighbours_small: neighbours_small,
            three_gaps_opposite_sides: opposite,
            three_and_four_exclusive: exclusive,
        },
        conditions: None,
        histogram,
        four_gaps,
        three_gap_sides,
        violations,
    }
}

/// Combines per-cycle audits of a multi-cycle host into one audit carrying
/// the cross-cycle conditions.
pub fn check_multicycle_conditions(audits: &[GapAudit]) -> GapAudit {
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    let mut four_gaps = 0;
    let mut three_gap_sides = Vec::new();
    let mut at_most_four = true;
    let mut neighbours_small = true;
    for audit in audits {
        for (&size, &count) in &audit.histogram {
            *histogram.entry(size).or_insert(0) += count;
        }
        four_gaps += audit.four_gaps;
        three_gap_sides.extend_from_slice(&audit.three_gap_sides);
        at_most_four &= audit.facts.gaps_at_most_four;
        neighbours_small &= audit.facts.large_gap_neighbours_small;
        // keep only the local (per-gap) messages; global ones are recomputed
        violations.extend(audit.violations.iter().filter(|v| v.starts_with("gap ")).cloned());
    }
    let (a, b, c) = global_flags(four_gaps, &three_gap_sides, &mut violations);
    GapAudit {
        facts: FactFlags {
            gaps_at_most_four: at_most_four,
            single_four_gap: a,
            large_gap_neighbours_small: neighbours_small,
            three_gaps_opposite_sides: b,
            three_and_four_exclusive: c,
        },
        conditions: Some(ConditionFlags { a, b, c }),
        histogram,
        four_gaps,
        three_gap_sides,
        violations,
    }
}

/// Decomposes every removed cycle and audits the landmark set: plain facts
/// for a single cycle, facts plus cross-cycle conditions otherwise.
pub fn audit_landmarks(layouts: &[CycleLayout], landmarks: &[usize]) -> Result<GapAudit, GapError> {
    let structures = layouts
        .iter()
        .map(|layout| gap_decompose(layout, landmarks))
        .collect::<Result<Vec<_>, _>>()?;
    if structures.len() == 1 {
        return Ok(check_facts(&structures));
    }
    let audits: Vec<GapAudit> = structures
        .iter()
        .map(|gs| check_facts(std::slice::from_ref(gs)))
        .collect();
    Ok(check_multicycle_conditions(&audits))
}

/// Most non-landmark vertices that `s` landmarks on one cycle can leave in
/// gaps while all facts hold: at most `floor(s/2)` gaps exceed one vertex, all
/// of them hold two except for either two 3-gaps or one 4-gap.
pub fn gap_capacity(s: usize) -> usize {
    let l = s / 2;
    if s.is_multiple_of(2) {
        3 * l + 2
    } else {
        3 * l + 3
    }
}

/// Smallest landmark count `s` on `K_{m,m} \ C_{2m}` whose gap capacity
/// covers the `2m - s` remaining cycle vertices.
pub fn counting_lower_bound(m: usize) -> Result<usize, GapError> {
    if m < 5 {
        return Err(GapError::MTooSmall(m));
    }
    Ok((1..=2 * m)
        .find(|&s| 2 * m - s <= gap_capacity(s))
        .expect("s = 2m always fits"))
}
