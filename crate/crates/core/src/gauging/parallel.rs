use rand::RngCore;

use super::deform::{deform_many, DeformedCode};
use super::measure::{gauge_measure_many, GaugeMode, GaugeOutcome};
use super::{GaugingError, GaugingPlan};
use crate::codes::StabilizerCode;
use crate::pauli::Pauli;
use crate::tableau::Tableau;

/// Plans checked to be measurable in the same round.
#[derive(Clone, Debug)]
pub struct PlanSet {
    plans: Vec<GaugingPlan>,
    overlap: Vec<usize>,
}

/// Validates that the logicals agree wherever their supports meet and that
/// no qubit lies in more than `max_overlap` of them.
pub fn parallel_compose(
    plans: Vec<GaugingPlan>,
    max_overlap: usize,
) -> Result<PlanSet, GaugingError> {
    let Some(n) = plans.first().map(|p| p.logical.n()) else {
        return Ok(PlanSet {
            plans,
            overlap: Vec::new(),
        });
    };
    let mut overlap = vec![0; n];
    let mut first_on: Vec<Option<(usize, Pauli)>> = vec![None; n];
    for (i, p) in plans.iter().enumerate() {
        if p.logical.n() != n {
            return Err(GaugingError::Mismatch(format!(
                "plan {i} logical has {} qubits",
                p.logical.n()
            )));
        }
        for q in p.logical.support() {
            let here = p.logical.get(q);
            match first_on[q] {
                Some((j, other)) if other != here => {
                    return Err(GaugingError::Incompatible((j, i, q)))
                }
                Some(_) => {}
                None => first_on[q] = Some((i, here)),
            }
            overlap[q] += 1;
            if overlap[q] > max_overlap {
                return Err(GaugingError::Config(format!(
                    "qubit {q} is in {} logicals, cap is {max_overlap}",
                    overlap[q]
                )));
            }
        }
    }
    Ok(PlanSet { plans, overlap })
}

impl PlanSet {
    pub fn plans(&self) -> &[GaugingPlan] {
        &self.plans
    }

    /// Number of logicals acting on each qubit.
    pub fn overlap(&self) -> &[usize] {
        &self.overlap
    }

    pub fn deform(&self, code: &StabilizerCode) -> Result<DeformedCode, GaugingError> {
        deform_many(code, &self.plans)
    }

    pub fn measure(
        &self,
        t: &Tableau,
        mode: GaugeMode,
        rng: &mut dyn RngCore,
    ) -> Result<(Vec<GaugeOutcome>, Tableau), GaugingError> {
        gauge_measure_many(t, &self.plans, mode, rng)
    }
}
