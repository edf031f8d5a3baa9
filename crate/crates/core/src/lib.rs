//! Gauging-measurement code deformations for stabilizer and qLDPC codes.

pub mod cli;
pub mod codes;
pub mod f2;
pub mod gauging;
pub mod io;
pub mod pauli;
pub mod presets;
pub mod spacetime;
pub mod sparsify;
pub mod tableau;

pub use f2::{BitMatrix, BitVec, F2Error, RowSpace};
pub use pauli::{pauli, Pauli, PauliError, PauliOp, Sign};
pub use tableau::{CanonicalForm, Gate, InitState, MeasureMode, Outcome, Tableau, TableauError};
