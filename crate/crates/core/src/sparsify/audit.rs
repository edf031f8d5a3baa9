use serde::{Deserialize, Serialize};

use super::cheeger::{cheeger_auto, Cheeger, CheegerMode};
use super::layered::LayeredGraph;
use crate::f2::BitVec;
use crate::gauging::{GaugingGraph, GaugingPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Largest acceptable deformed-check path length.
    pub kappa: usize,
    /// Largest acceptable retained cycle weight.
    pub cycle_weight: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            kappa: 3,
            cycle_weight: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesiderataReport {
    pub kappa: usize,
    pub cheeger: Cheeger,
    pub max_cycle_weight: usize,
    pub thresholds: Thresholds,
    pub short_paths: bool,
    /// `h >= 1`; with a spectral value only a lower bound is known, so a
    /// failure there is inconclusive.
    pub expanding: bool,
    pub light_cycles: bool,
    pub notes: Vec<String>,
}

impl DesiderataReport {
    pub fn passes(&self) -> bool {
        self.short_paths && self.expanding && self.light_cycles
    }
}

pub fn audit_desiderata(plan: &GaugingPlan, thresholds: Thresholds) -> DesiderataReport {
    report(&plan.graph, &plan.paths, &plan.cycles, thresholds)
}

pub fn audit_layered(
    plan: &GaugingPlan,
    layered: &LayeredGraph,
    thresholds: Thresholds,
) -> DesiderataReport {
    report(&layered.graph, &plan.paths, &layered.flux, thresholds)
}

fn report(
    graph: &GaugingGraph,
    paths: &[BitVec],
    cycles: &[BitVec],
    thresholds: Thresholds,
) -> DesiderataReport {
    let kappa = paths.iter().map(BitVec::weight).max().unwrap_or(0);
    let cheeger = cheeger_auto(graph);
    let max_cycle_weight = cycles.iter().map(BitVec::weight).max().unwrap_or(0);
    let mut notes = Vec::new();
    let expanding = cheeger.value >= 1.0;
    if !expanding {
        if cheeger.mode == CheegerMode::Spectral {
            notes.push(format!(
                "spectral lower bound {:.3} below 1; exact value not computed for {} vertices",
                cheeger.value,
                graph.vertex_count()
            ));
        } else {
            notes.push(format!(
                "h = {:.3} < 1; fine for measurements between separate blocks such as lattice surgery",
                cheeger.value
            ));
        }
    }
    DesiderataReport {
        kappa,
        cheeger,
        max_cycle_weight,
        thresholds,
        short_paths: kappa <= thresholds.kappa,
        expanding,
        light_cycles: max_cycle_weight <= thresholds.cycle_weight,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::library;
    use crate::pauli::pauli;

    #[test]
    fn gross_plan_audit() {
        let p = crate::presets::gross();
        let r = audit_desiderata(&p.plan, Thresholds::default());
        assert_eq!(r.kappa, 1);
        assert_eq!(r.max_cycle_weight, 4);
        assert_eq!(r.cheeger.mode, CheegerMode::Exact);
    }

    #[test]
    fn single_edge() {
        let plan = GaugingPlan::from_matching(&library::toy_zz(), &pauli("XX")).unwrap();
        let r = audit_desiderata(&plan, Thresholds::default());
        assert_eq!(
            (r.kappa, r.cheeger.ratio, r.max_cycle_weight),
            (1, Some((1, 1)), 0)
        );
        assert!(r.passes());
    }
}
