//! Basis constructions and closed-form metric dimension values for the three
//! families.
//!
//! Multi-cycle assembly works from a budget argument. In a diameter-3 host a
//! non-landmark is separated from the other vertices on its side only by the
//! set of landmarks among its two cycle neighbours. So, over the whole host,
//! at most one non-landmark per side may have no landmark neighbour. A
//! component basis with a 3-gap uses that allowance on the end points' side.
//! One with a 4-gap uses it on both sides. Components left without an
//! allowance take one extra landmark and keep every gap at two or fewer.

use serde::Serialize;
use thiserror::Error;

use crate::families::{gen_multicycle, ClosedForm, FamilyError, FamilySpec};
use crate::graph::{all_pairs_distances, Side};
use crate::resolve::verify_resolving;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("crown graphs need n >= 3 (got {0})")]
    NTooSmall(usize),
    #[error("m = {m} is below the minimum {min}")]
    MTooSmall { m: usize, min: usize },
    #[error("no component basis for m = {m} inside a host with n = {host_n}")]
    InvalidCombination { m: usize, host_n: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("assembled landmark set for {0} failed verification")]
    AssemblyFailed(String),
}

/// Closed-form metric dimension with the branch that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionFormulaResult {
    pub beta: usize,
    pub case_tag: String,
    /// Branch number 1-4 of the multi-cycle formula; absent for the other families.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<u8>,
    /// Component values for multi-cycle hosts.
    pub components: Vec<usize>,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl DimensionFormulaResult {
    fn single(beta: usize, case_tag: &str) -> Self {
        DimensionFormulaResult {
            beta,
            case_tag: case_tag.to_string(),
            branch: None,
            components: Vec::new(),
            k1: 0,
            k2: 0,
            k3: 0,
        }
    }
}

fn x(i: usize) -> usize {
    i - 1
}

fn y(i: usize, half: usize) -> usize {
    half + i - 1
}

/// `{x_1, ..., x_{n-1}}`.
pub fn crown_basis(n: usize) -> Result<Vec<usize>, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::NTooSmall(n));
    }
    Ok((1..n).map(x).collect())
}

/// The residue-case landmark set for `K_{m,m}` minus a Hamiltonian cycle,
/// sorted. For `m = 4` the graph is `C_8` and the pair `{x_1, y_1}` is used.
pub fn hamcomp_basis(m: usize) -> Result<Vec<usize>, ConstructionError> {
    if m < 4 {
        return Err(ConstructionError::MTooSmall { m, min: 4 });
    }
    if m == 4 {
        return Ok(vec![x(1), y(1, 4)]);
    }
    let k = m / 5;
    let mut basis = Vec::with_capacity(4 * m / 5);
    for j in 0..k {
        basis.extend([y(5 * j + 1, m), y(5 * j + 2, m), x(5 * j + 4), x(5 * j + 5)]);
    }
    match m % 5 {
        0 | 1 => {}
        2 => basis.push(x(5 * k + 1)),
        3 => basis.extend([y(5 * k + 1, m), y(5 * k + 2, m)]),
        _ => basis.extend([y(5 * k + 1, m), y(5 * k + 2, m), y(5 * k + 3, m)]),
    }
    basis.sort_unstable();
    Ok(basis)
}

fn check_component(m: usize, host_n: usize) -> Result<(), ConstructionError> {
    let min_host = if m == 4 { 4 } else { 5 };
    if m < 2 || host_n < m || host_n < min_host {
        return Err(ConstructionError::InvalidCombination { m, host_n });
    }
    Ok(())
}

/// Component bases for `m` in `{2, 3, 4}`, in component-local ids
/// (`x_i -> i-1`, `y_i -> m+i-1`).
pub fn small_component_basis(m: usize, host_n: usize) -> Result<Vec<usize>, ConstructionError> {
    if !(2..=4).contains(&m) {
        return Err(ConstructionError::InvalidCombination { m, host_n });
    }
    check_component(m, host_n)?;
    Ok(match (m, host_n) {
        (2, _) => vec![x(1), y(1, 2)],
        (3, _) => vec![y(1, 3), y(2, 3)],
        (4, 4) => vec![x(1), y(1, 4)],
        _ => vec![y(1, 4), y(2, 4), y(3, 4)],
    })
}

/// Metric dimension of the component `K_{m,m} \ C_{2m}` under the metric of
/// a host with `host_n` vertices per side.
pub fn component_beta(m: usize, host_n: usize) -> Result<usize, ConstructionError> {
    check_component(m, host_n)?;
    Ok(match m {
        2 | 3 => 2,
        4 if host_n == 4 => 2,
        4 => 3,
        _ => 4 * m / 5,
    })
}

fn in_k1(m: usize) -> bool {
    m == 2 || m.is_multiple_of(5)
}

/// The multi-cycle formula, evaluated as stated.
pub fn multicycle_beta(parts: &[usize]) -> Result<DimensionFormulaResult, ConstructionError> {
    FamilySpec::MultiCycle { parts: parts.to_vec() }.validate()?;
    let n: usize = parts.iter().sum();
    let r = parts.len();
    let components = parts
        .iter()
        .map(|&m| component_beta(m, n))
        .collect::<Result<Vec<_>, _>>()?;
    let k1 = parts.iter().filter(|&&m| in_k1(m)).count();
    let k2 = parts.iter().filter(|&&m| !in_k1(m) && m % 5 == 1).count();
    let k3 = r - k1 - k2;
    let sum: usize = components.iter().sum();
    let (beta, branch, tag) = if n == 4 {
        (2, 1, "multi:n4")
    } else if k1 + 1 >= r || r == 1 {
        (sum, 2, "multi:sum")
    } else if k3 >= 2 {
        (sum + k2 + k3 - 2, 3, "multi:sum+k2+k3-2")
    } else {
        (sum + k2 + k3 - 1, 4, "multi:sum+k2+k3-1")
    };
    Ok(DimensionFormulaResult {
        beta,
        case_tag: tag.to_string(),
        branch: Some(branch),
        components,
        k1,
        k2,
        k3,
    })
}

/// Closed-form metric dimension for any family spec. Arithmetic only.
pub fn formula_beta(spec: &FamilySpec) -> Result<DimensionFormulaResult, ConstructionError> {
    spec.validate()?;
    Ok(match spec {
        FamilySpec::Crown { n } => DimensionFormulaResult::single(n - 1, "crown:n-1"),
        FamilySpec::HamComp { m: 4 } => DimensionFormulaResult::single(2, "hamcomp:cycle"),
        FamilySpec::HamComp { m } => DimensionFormulaResult::single(4 * m / 5, "hamcomp:floor(4m/5)"),
        FamilySpec::MultiCycle { parts } => multicycle_beta(parts)?,
    })
}

/// How a component spends the empty-signature allowance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    /// Minimum basis with every gap at most two.
    Free,
    /// Minimum basis with one 3-gap: one allowance, either side.
    Single,
    /// Minimum basis with one 4-gap: both allowances.
    Double,
}

fn classify(m: usize) -> Class {
    match m {
        2 => Class::Free,
        3 | 4 => Class::Single,
        _ => match m % 5 {
            0 => Class::Free,
            3 | 4 => Class::Single,
            _ => Class::Double,
        },
    }
}

/// What each component receives in the assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Plan {
    Free,
    Three(Side),
    Four,
    Padded,
}

fn plan(parts: &[usize]) -> Vec<Plan> {
    let classes: Vec<Class> = parts.iter().map(|&m| classify(m)).collect();
    let singles: Vec<usize> = (0..parts.len()).filter(|&i| classes[i] == Class::Single).collect();
    let first_double = classes.iter().position(|&c| c == Class::Double);
    let mut plans: Vec<Plan> = classes
        .iter()
        .map(|c| if *c == Class::Free { Plan::Free } else { Plan::Padded })
        .collect();
    match (singles.as_slice(), first_double) {
        ([], Some(d)) => plans[d] = Plan::Four,
        ([a], _) => plans[*a] = Plan::Three(Side::X),
        ([a, b, ..], _) => {
            plans[*a] = Plan::Three(Side::X);
            plans[*b] = Plan::Three(Side::Y);
        }
        _ => {}
    }
    plans
}

/// Size of the set returned by [`multicycle_basis`]. This is the true metric
/// dimension, and differs from [`multicycle_beta`] when some `m_i >= 7` has
/// `m_i = 2 (mod 5)`.
pub fn assembly_size(parts: &[usize]) -> Result<usize, ConstructionError> {
    let formula = multicycle_beta(parts)?;
    if formula.branch == Some(1) {
        return Ok(2);
    }
    let padded = plan(parts).iter().filter(|&&p| p == Plan::Padded).count();
    Ok(formula.components.iter().sum::<usize>() + padded)
}

/// Landmark positions along a cycle of length `2m` from a start position and
/// the interior size of each gap in order.
fn positions_from_gaps(start: usize, gaps: &[usize], len: usize) -> Vec<usize> {
    let mut p = start;
    gaps.iter()
        .map(|g| {
            let here = p % len;
            p += g + 1;
            here
        })
        .collect()
}

/// `s` landmarks on a cycle of half-length `m`: first gap `lead` (0 for none),
/// then twos at even indices separated by gaps of at most one.
fn gap_pattern(m: usize, s: usize, lead: usize) -> Option<Vec<usize>> {
    let interior = (2 * m).checked_sub(s)?;
    let (mut gaps, first_two) = if lead > 0 {
        (vec![lead], 2)
    } else {
        (Vec::new(), 0)
    };
    let free = s - gaps.len();
    let rest = interior.checked_sub(lead)?;
    let twos = rest.saturating_sub(free);
    let mut ones = rest - 2 * twos;
    // a two never touches the lead gap or another two, cyclically
    let slots: Vec<usize> = (first_two..s.saturating_sub(1)).step_by(2).collect();
    if twos > slots.len() || ones + twos > free {
        return None;
    }
    gaps.resize(s, 0);
    for &i in slots.iter().take(twos) {
        gaps[i] = 2;
    }
    for g in gaps.iter_mut().skip(if lead > 0 { 1 } else { 0 }) {
        if *g == 0 && ones > 0 {
            *g = 1;
            ones -= 1;
        }
    }
    Some(gaps)
}

fn component_positions(m: usize, host_n: usize, plan: Plan) -> Result<Vec<usize>, ConstructionError> {
    let beta = component_beta(m, host_n)?;
    let (s, lead, start) = match plan {
        Plan::Free if m == 2 => return Ok(vec![0, 1]),
        Plan::Free => (beta, 0, 0),
        Plan::Three(side) => (beta, 3, if side == Side::X { 0 } else { 1 }),
        Plan::Four => (beta, 4, 0),
        Plan::Padded => (beta + 1, 0, 0),
    };
    let gaps = gap_pattern(m, s, lead).ok_or(ConstructionError::InvalidCombination { m, host_n })?;
    Ok(positions_from_gaps(start, &gaps, 2 * m))
}

/// A verified resolving set of `K_{n,n}` minus disjoint cycles of half-lengths
/// `parts`, of size [`assembly_size`]. Sorted ids.
pub fn multicycle_basis(parts: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    let spec = FamilySpec::MultiCycle { parts: parts.to_vec() };
    spec.validate()?;
    let n: usize = parts.iter().sum();
    let (graph, layouts) = gen_multicycle(parts)?;
    let mut basis: Vec<usize> = if n == 4 {
        // K_{4,4} minus C_8 is C_8
        vec![x(1), y(1, 4)]
    } else {
        let mut out = Vec::with_capacity(assembly_size(parts)?);
        for ((&m, plan), layout) in parts.iter().zip(plan(parts)).zip(&layouts) {
            for p in component_positions(m, n, plan)? {
                out.push(layout.vertices[p]);
            }
        }
        out
    };
    basis.sort_unstable();
    let report = if n == 4 {
        verify_resolving(&all_pairs_distances(&graph), &basis)
    } else {
        verify_resolving(&ClosedForm::new(&spec)?, &basis)
    };
    match report {
        Ok(r) if r.resolving => Ok(basis),
        _ => Err(ConstructionError::AssemblyFailed(spec.to_string())),
    }
}

/// Construction for any family spec.
pub fn family_basis(spec: &FamilySpec) -> Result<Vec<usize>, ConstructionError> {
    match spec {
        FamilySpec::Crown { n } => crown_basis(*n),
        FamilySpec::HamComp { m } => hamcomp_basis(*m),
        FamilySpec::MultiCycle { parts } => multicycle_basis(parts),
    }
}
