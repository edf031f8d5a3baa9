use std::collections::HashMap;

use rayon::prelude::*;

use super::detectors::{build_detectors, detector_values, validate_detectors, Detector};
use super::schedule::{FaultSite, Instance, RunResult};
use super::SpacetimeError;
use crate::f2::{BitMatrix, BitVec};

/// Seed shared by every probe run.
pub const PROBE_SEED: u64 = 0x5eed;

/// What a fault set does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syndrome {
    /// Violated detector ids, ascending.
    pub violated: Vec<usize>,
    /// Whether the reported outcome disagrees with the input state.
    pub flip: bool,
    /// All final-state checks that changed, the first being `flip`.
    pub effect: BitVec,
}

impl Syndrome {
    pub fn is_silent(&self) -> bool {
        self.violated.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.violated.is_empty() && self.effect.is_zero()
    }
}

/// Detector matrix and logical effects of every elementary fault, built by
/// injecting each fault alone into a seeded simulation.
#[derive(Clone, Debug)]
pub struct SyndromeMap {
    pub sites: Vec<FaultSite>,
    pub detectors: Vec<Detector>,
    /// `sites x detectors`.
    pub d: BitMatrix,
    /// `sites x final checks`; column 0 is the outcome functional.
    pub effects: BitMatrix,
    reference: BitVec,
    index: HashMap<FaultSite, usize>,
}

impl SyndromeMap {
    pub fn build(inst: &Instance) -> Result<Self, SpacetimeError> {
        let detectors = build_detectors(inst);
        let reference = validate_detectors(inst, &detectors, 4)?;
        let sites = inst.all_sites();
        let rows: Vec<(BitVec, BitVec)> = sites
            .par_iter()
            .map(|f| {
                let r = inst.run(std::slice::from_ref(f), PROBE_SEED)?;
                Ok((
                    detector_values(&detectors, &r.records).xor(&reference),
                    r.effects,
                ))
            })
            .collect::<Result<_, SpacetimeError>>()?;
        let n_eff = inst.final_checks().len();
        let (d_rows, e_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let index = sites
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        Ok(SyndromeMap {
            d: BitMatrix::from_rows(detectors.len(), d_rows)?,
            effects: BitMatrix::from_rows(n_eff, e_rows)?,
            sites,
            detectors,
            reference,
            index,
        })
    }

    pub fn site_index(&self, f: &FaultSite) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// `l`: faults that flip the reported outcome.
    pub fn outcome_functional(&self) -> BitVec {
        self.effects.column(0)
    }

    /// Syndrome of a fault set, by linearity.
    pub fn syndrome(&self, faults: &[FaultSite]) -> Result<Syndrome, SpacetimeError> {
        let mut det = BitVec::zeros(self.detectors.len());
        let mut eff = BitVec::zeros(self.effects.cols());
        for f in faults {
            let i = self
                .site_index(f)
                .ok_or_else(|| SpacetimeError::InvalidSite(f.to_string()))?;
            det.xor_assign(self.d.row(i));
            eff.xor_assign(self.effects.row(i));
        }
        Ok(Syndrome {
            violated: det.iter_ones().collect(),
            flip: eff.get(0),
            effect: eff,
        })
    }

    /// Syndrome read straight off a simulation run.
    pub fn observe(&self, run: &RunResult) -> Syndrome {
        let det = detector_values(&self.detectors, &run.records).xor(&self.reference);
        Syndrome {
            violated: det.iter_ones().collect(),
            flip: run.effects.get(0),
            effect: run.effects.clone(),
        }
    }

    /// Column of detector `name`.
    pub fn detector(&self, name: &str) -> Option<usize> {
        self.detectors.iter().position(|d| d.name == name)
    }
}
