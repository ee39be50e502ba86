//! Metric dimension and resolving sets of regular bipartite graphs: crown
//! graphs, complements of a Hamiltonian cycle in `K_{m,m}`, and complements
//! of disjoint even cycles in `K_{n,n}`.

pub mod constructions;
pub mod families;
pub mod gaps;
pub mod graph;
pub mod graph6;
pub mod resolve;

pub use constructions::{
    assembly_size, crown_basis, family_basis, formula_beta, hamcomp_basis, multicycle_basis, multicycle_beta,
    ConstructionError, DimensionFormulaResult,
};
pub use families::{ClosedForm, CycleLayout, FamilyError, FamilyInstance, FamilySpec, VertexLabel};
pub use gaps::{audit_landmarks, check_facts, counting_lower_bound, gap_decompose, GapAudit, GapStructure};
pub use graph::{all_pairs_distances, DistanceMatrix, Distances, Graph, Side};
pub use graph6::{decode_graph6, encode_graph6};
pub use resolve::{exact_metric_dimension, greedy_resolving, verify_resolving, SolverConfig};
