//! Built-in gauging plans for the gross and double gross codes.

use serde::{Deserialize, Serialize};

use crate::codes::{BBCode, LogicalKind, Monomial, StabilizerCode, TannerReport};
use crate::f2::BitVec;
use crate::gauging::{deform, redundant_cycle_dim, DeformedCode, GaugingError, GaugingPlan};

const GROSS: &str = include_str!("../data/gross.json");
const DOUBLE_GROSS: &str = include_str!("../data/double_gross.json");

/// Edge and cycle lists as stored in the data files, in monomial labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetData {
    pub name: String,
    pub code: String,
    pub logical: String,
    pub alpha: Monomial,
    pub extra_edges: Vec<(Monomial, Monomial)>,
    pub cycles: Vec<Vec<Monomial>>,
}

/// A code, its stabilizer form and a ready plan.
#[derive(Clone, Debug)]
pub struct Preset {
    pub data: PresetData,
    pub bb: BBCode,
    pub code: StabilizerCode,
    pub plan: GaugingPlan,
}

/// Counts summarizing a preset deformation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproSummary {
    pub name: String,
    pub matched_edges: usize,
    pub extra_edges: usize,
    pub edges: usize,
    pub cycle_space: usize,
    pub dim_u: usize,
    pub flux_checks: usize,
    pub added_x_checks: usize,
    pub added_z_checks: usize,
    pub added_qubits: usize,
    pub total_additions: usize,
    pub report: TannerReport,
}

pub fn names() -> &'static [&'static str] {
    &["gross", "double-gross"]
}

pub fn load(name: &str) -> Result<Preset, GaugingError> {
    let raw = match name {
        "gross" => GROSS,
        "double-gross" => DOUBLE_GROSS,
        other => return Err(GaugingError::Config(format!("unknown preset {other:?}"))),
    };
    let data: PresetData = serde_json::from_str(raw)
        .map_err(|e| GaugingError::Config(format!("preset {name}: {e}")))?;
    build(data)
}

pub fn gross() -> Preset {
    load("gross").expect("bundled preset is valid")
}

pub fn double_gross() -> Preset {
    load("double-gross").expect("bundled preset is valid")
}

fn build(data: PresetData) -> Result<Preset, GaugingError> {
    let bb = match data.code.as_str() {
        "gross" => BBCode::gross(),
        "double-gross" => BBCode::double_gross(),
        other => return Err(GaugingError::Config(format!("unknown code {other:?}"))),
    };
    let kind = match data.logical.as_str() {
        "X" => LogicalKind::X,
        "X'" => LogicalKind::XPrime,
        "Z" => LogicalKind::Z,
        "Z'" => LogicalKind::ZPrime,
        other => return Err(GaugingError::Config(format!("unknown logical {other:?}"))),
    };
    let code = bb.to_stabilizer();
    let logical = bb.logical(kind, data.alpha)?;
    let mut plan = GaugingPlan::from_matching(&code, &logical)?;
    let vertex = |mono: Monomial| -> Result<usize, GaugingError> {
        plan_vertex(&plan, bb.index(mono), mono)
    };
    let extra = data
        .extra_edges
        .iter()
        .map(|&(u, v)| Ok((vertex(u)?, vertex(v)?)))
        .collect::<Result<Vec<_>, GaugingError>>()?;
    let cycles = resolve_cycles(&plan, &bb, &data.cycles, &extra)?;
    plan.add_edges(&extra)?;
    plan.set_cycles(cycles)?;
    Ok(Preset {
        data,
        bb,
        code,
        plan,
    })
}

fn plan_vertex(plan: &GaugingPlan, q: usize, mono: Monomial) -> Result<usize, GaugingError> {
    plan.graph
        .vertex_of_qubit(q)
        .ok_or_else(|| GaugingError::Config(format!("{mono:?} is not in the logical support")))
}

/// Turns vertex sequences into edge sets. Where parallel edges exist, each
/// step takes the copy used least so far, lowest index first.
fn resolve_cycles(
    plan: &GaugingPlan,
    bb: &BBCode,
    cycles: &[Vec<Monomial>],
    extra: &[(usize, usize)],
) -> Result<Vec<BitVec>, GaugingError> {
    let mut edges: Vec<(usize, usize)> = plan.graph.edges().to_vec();
    edges.extend(extra.iter().map(|&(u, v)| (u.min(v), u.max(v))));
    let mut used = vec![0usize; edges.len()];
    let mut out = Vec::new();
    for cyc in cycles {
        let vs = cyc
            .iter()
            .map(|&m| plan_vertex(plan, bb.index(m), m))
            .collect::<Result<Vec<_>, _>>()?;
        let mut set = BitVec::zeros(edges.len());
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            let key = (a.min(b), a.max(b));
            let e = (0..edges.len())
                .filter(|&e| edges[e] == key)
                .min_by_key(|&e| (used[e], e))
                .ok_or_else(|| GaugingError::Config(format!("cycle step {a}-{b} has no edge")))?;
            used[e] += 1;
            set.flip(e);
        }
        out.push(set);
    }
    Ok(out)
}

impl Preset {
    pub fn deformed(&self) -> Result<DeformedCode, GaugingError> {
        deform(&self.code, &self.plan)
    }

    pub fn summary(&self) -> Result<ReproSummary, GaugingError> {
        let d = self.deformed()?;
        let (ax, bz, q) = d.additions();
        let matched = self.plan.graph.edge_count() - self.data.extra_edges.len();
        let e = self.plan.graph.edge_count();
        Ok(ReproSummary {
            name: self.data.name.clone(),
            matched_edges: matched,
            extra_edges: self.data.extra_edges.len(),
            edges: e,
            cycle_space: e + 1 - self.plan.graph.vertex_count(),
            dim_u: redundant_cycle_dim(&self.code, &self.plan.logical)?,
            flux_checks: self.plan.cycles.len(),
            added_x_checks: ax,
            added_z_checks: bz,
            added_qubits: q,
            total_additions: ax + bz + q,
            report: d.report(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gross_counts() {
        let s = gross().summary().unwrap();
        assert_eq!(
            (s.matched_edges, s.edges, s.cycle_space, s.dim_u),
            (18, 22, 11, 4)
        );
        assert_eq!((s.flux_checks, s.total_additions), (7, 41));
    }

    fn hist(pairs: &[(usize, usize)]) -> std::collections::BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn tanner_tables() {
        let r = gross().summary().unwrap().report;
        assert_eq!(r.x_weights, hist(&[(4, 7), (5, 2), (6, 75)]));
        assert_eq!(r.z_weights, hist(&[(3, 5), (4, 2), (6, 54), (7, 18)]));
        assert_eq!(
            r.qubit_degrees,
            hist(&[(3, 8), (4, 9), (5, 5), (6, 132), (7, 12)])
        );
        let s = double_gross().summary().unwrap();
        assert_eq!(
            (s.edges, s.cycle_space, s.flux_checks, s.total_additions),
            (34, 17, 13, 65)
        );
        assert_eq!(s.report.x_weights, hist(&[(4, 7), (5, 8), (6, 147)]));
        assert_eq!(
            s.report.z_weights,
            hist(&[(2, 1), (3, 5), (4, 1), (5, 3), (6, 120), (7, 27)])
        );
        assert_eq!(
            s.report.qubit_degrees,
            hist(&[(3, 3), (4, 17), (5, 12), (6, 272), (7, 18)])
        );
    }

    #[test]
    fn unknown_preset() {
        assert!(load("triple").is_err());
    }
}
