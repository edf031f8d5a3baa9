//! Expansion, cycle cellulation and layered decongestion.

mod audit;
mod cellulate;
mod cheeger;
mod layered;

pub use audit::{audit_desiderata, audit_layered, DesiderataReport, Thresholds};
pub use cellulate::{cellulate, cellulate_with, Cellulation, FaceShape};
pub use cheeger::{
    cheeger, cheeger_auto, cheeger_exact, cheeger_spectral, Cheeger, CheegerMode,
    EXACT_VERTEX_LIMIT,
};
pub use layered::{
    decongest, random_cubic, sparsified_deform, split_loops, DecongestConfig, LayeredGraph, Loop,
};

use crate::gauging::GaugingError;

#[derive(Debug, thiserror::Error)]
pub enum SparsifyError {
    #[error("exact enumeration over {vertices} vertices exceeds the limit of {limit}")]
    Budget { vertices: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Gauging(#[from] GaugingError),
}
