use serde::{Deserialize, Serialize};

use super::GaugingError;
use crate::codes::StabilizerCode;
use crate::pauli::{Pauli, PauliOp};
use crate::tableau::Gate;

/// Per-qubit Cliffords taking a logical to X type: `H` where it acts as `Z`,
/// `S^dagger` where it acts as `Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisChange {
    /// `(qubit, original Pauli)` for each qubit that is rotated.
    pub rotated: Vec<(usize, Pauli)>,
}

impl BasisChange {
    pub fn for_logical(l: &PauliOp) -> Self {
        let rotated = (0..l.n())
            .filter_map(|q| match l.get(q) {
                p @ (Pauli::Y | Pauli::Z) => Some((q, p)),
                _ => None,
            })
            .collect();
        BasisChange { rotated }
    }

    pub fn is_identity(&self) -> bool {
        self.rotated.is_empty()
    }

    /// Gates applied to a state to enter the X frame.
    pub fn forward_gates(&self) -> Vec<Gate> {
        let mut gates = Vec::new();
        for &(q, p) in &self.rotated {
            match p {
                Pauli::Z => gates.push(Gate::H(q)),
                // S^3 = S^dagger
                Pauli::Y => gates.extend([Gate::S(q); 3]),
                _ => {}
            }
        }
        gates
    }

    /// Gates leaving the X frame.
    pub fn inverse_gates(&self) -> Vec<Gate> {
        let mut gates = Vec::new();
        for &(q, p) in self.rotated.iter().rev() {
            match p {
                Pauli::Z => gates.push(Gate::H(q)),
                Pauli::Y => gates.push(Gate::S(q)),
                _ => {}
            }
        }
        gates
    }

    fn conjugate(op: &PauliOp, gates: &[Gate]) -> PauliOp {
        let mut out = op.clone();
        for g in gates {
            match *g {
                Gate::H(q) if q < out.n() => out.conj_h(q),
                Gate::S(q) if q < out.n() => out.conj_s(q),
                _ => {}
            }
        }
        out
    }

    /// Operator in the X frame. Qubits beyond the base are untouched.
    pub fn to_frame(&self, op: &PauliOp) -> PauliOp {
        Self::conjugate(op, &self.forward_gates())
    }

    pub fn from_frame(&self, op: &PauliOp) -> PauliOp {
        Self::conjugate(op, &self.inverse_gates())
    }

    /// Merges two changes that agree on shared qubits.
    pub fn merge(&self, other: &BasisChange) -> Option<BasisChange> {
        let mut rotated = self.rotated.clone();
        for &(q, p) in &other.rotated {
            match rotated.iter().find(|(r, _)| *r == q) {
                Some(&(_, existing)) if existing != p => return None,
                Some(_) => {}
                None => rotated.push((q, p)),
            }
        }
        rotated.sort_unstable();
        Some(BasisChange { rotated })
    }
}

/// First `(i, j, qubit)` where two logicals act by different Paulis.
pub(crate) fn incompatible_pair(plans: &[super::GaugingPlan]) -> Option<(usize, usize, usize)> {
    for i in 0..plans.len() {
        for j in i + 1..plans.len() {
            let (a, b) = (&plans[i].logical, &plans[j].logical);
            for q in 0..a.n().min(b.n()) {
                let (pa, pb) = (a.get(q), b.get(q));
                if pa != Pauli::I && pb != Pauli::I && pa != pb {
                    return Some((i, j, q));
                }
            }
        }
    }
    None
}

/// Rotates `code` and `l` so that `l` is X type.
pub fn basis_change_to_x(
    code: &StabilizerCode,
    l: &PauliOp,
) -> Result<(StabilizerCode, PauliOp, BasisChange), GaugingError> {
    if l.n() != code.n() {
        return Err(GaugingError::Mismatch(format!(
            "logical on {} qubits, code on {}",
            l.n(),
            code.n()
        )));
    }
    if let Some(c) = code.checks().iter().find(|c| !c.commutes_unchecked(l)) {
        return Err(GaugingError::Anticommutes(l.to_string(), c.to_string()));
    }
    let change = BasisChange::for_logical(l);
    let checks = code.checks().iter().map(|c| change.to_frame(c)).collect();
    let rotated = StabilizerCode::new(code.n(), checks, Some(code.labels().to_vec()))
        .expect("conjugation preserves commutation");
    Ok((rotated, change.to_frame(l), change))
}
