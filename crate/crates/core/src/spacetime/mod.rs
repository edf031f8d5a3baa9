//! Fault-tolerant schedule: detectors, syndromes, spacetime stabilizers and
//! low-weight logical fault search.

mod detectors;
mod schedule;
mod search;
mod stabilizers;
mod syndrome;

pub use detectors::{
    build_detectors, detector_values, validate_detectors, Detector, Member, Phase,
};
pub use schedule::{FaultSite, FluxCadence, Instance, MeasKind, Measurement, RunResult, Schedule};
pub use search::{fault_distance_search, LogicalFault, DEFAULT_SEARCH_BUDGET};
pub use stabilizers::{
    spacetime_generators, time_logical_fault, trivial_edge_string, verify_spacetime_stabilizers,
    verify_with, Generator, StabilizerReport,
};
pub use syndrome::{Syndrome, SyndromeMap, PROBE_SEED};

use crate::codes::CodeError;
use crate::f2::F2Error;
use crate::pauli::PauliError;
use crate::tableau::TableauError;

#[derive(Debug, thiserror::Error)]
pub enum SpacetimeError {
    #[error("invalid schedule: {0}")]
    Schedule(String),
    #[error("unsupported instance: needs {0}")]
    Unsupported(String),
    #[error("fault site {0} does not exist in this schedule")]
    InvalidSite(String),
    #[error("search budget {budget} exhausted at weight {weight}")]
    Budget { weight: usize, budget: u64 },
    #[error("{0}")]
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
