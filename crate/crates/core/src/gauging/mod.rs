//! Graphs, plans, deformed codes and the gauging measurement itself.

mod deform;
mod frame;
mod graph;
mod hypergraph;
mod measure;
mod parallel;
mod plan;
pub mod recipes;

pub use deform::{deform, deform_by_matching, deform_many, CheckRole, DeformedCode};
pub use frame::{basis_change_to_x, BasisChange};
pub use graph::{Binding, BoundaryMaps, GaugingGraph, SpanningTree};
pub use hypergraph::{
    hypergraph_deform, hypergraph_measure, HyperDeformed, HyperOutcome, Hypergraph,
};
pub use measure::{byproduct_vertices, gauge_measure, gauge_measure_many, GaugeMode, GaugeOutcome};
pub use parallel::{parallel_compose, PlanSet};
pub use plan::{
    add_random_edges, add_random_edges_with, redundant_cycle_dim, GaugingPlan, RandomEdges,
    Routing, TrialReport,
};

use crate::codes::CodeError;
use crate::f2::F2Error;
use crate::pauli::PauliError;
use crate::tableau::TableauError;

#[derive(Debug, thiserror::Error)]
pub enum GaugingError {
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("graph has {0} connected components")]
    Disconnected(usize),
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("{0} anticommutes with {1}")]
    Anticommutes(String, String),
    #[error("check {0} meets the logical on an odd number of qubits")]
    OddSupport(String),
    #[error("found {found} independent flux checks, need {wanted}")]
    FluxShortfall { wanted: usize, found: usize },
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("random edge budget exhausted")]
    BudgetExhausted(Box<Option<TrialReport>>),
    #[error("plans {} and {} disagree on qubit {}", .0.0, .0.1, .0.2)]
    Incompatible((usize, usize, usize)),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    F2(#[from] F2Error),
}
