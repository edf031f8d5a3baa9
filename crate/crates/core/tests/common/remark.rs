//! Single-fault syndromes predicted from anticommutation alone, following
//! the case list for Pauli, measurement, initialization and readout faults.
//! Detector `X^t` is named `"{label}^{t}"`.

use std::collections::BTreeSet;

use gauging::gauging::CheckRole;
use gauging::spacetime::{FaultSite, FluxCadence, Instance, MeasKind};
use gauging::{Pauli, PauliOp};

fn anticommutes(op: &PauliOp, q: usize, p: Pauli) -> bool {
    let (ax, az) = op.get(q).bits();
    let (px, pz) = p.bits();
    (px && az) ^ (pz && ax)
}

fn deformed_index(inst: &Instance, j: usize) -> usize {
    inst.roles
        .iter()
        .position(|r| matches!(*r, CheckRole::Deformed { base } | CheckRole::Untouched { base } if base == j))
        .expect("every base check survives")
}

fn name(label: &str, t: usize) -> String {
    format!("{label}^{t}")
}

/// Names of the detectors a single fault violates.
pub fn expected(inst: &Instance, site: &FaultSite) -> BTreeSet<String> {
    let s = inst.schedule;
    let (t_i, t_o) = (s.t_i(), s.t_o());
    let bl = inst.base.labels();
    let dl = inst.deformed.labels();
    let mut out = BTreeSet::new();
    match site {
        FaultSite::Pauli { qubit, pauli, t } => pauli_fault(inst, *qubit, *pauli, *t, &mut out),
        FaultSite::Init { edge } => pauli_fault(inst, inst.n + edge, Pauli::X, t_i, &mut out),
        FaultSite::Readout { edge } => pauli_fault(inst, inst.n + edge, Pauli::X, t_o, &mut out),
        FaultSite::Measurement { label, round } => {
            let h = *round;
            let m = inst.measurement_index(label, h).expect("measured");
            match inst.measurements[m].kind {
                MeasKind::Original(j) if h < t_i => {
                    out.insert(name(&bl[j], h));
                    if h + 1 < t_i {
                        out.insert(name(&bl[j], h + 1));
                    } else {
                        out.insert(name(&dl[deformed_index(inst, j)], t_i));
                    }
                }
                MeasKind::Original(j) => {
                    if h == t_o {
                        out.insert(name(&dl[deformed_index(inst, j)], t_o));
                    } else {
                        out.insert(name(&bl[j], h));
                    }
                    out.insert(name(&bl[j], h + 1));
                }
                MeasKind::Deformed(i) => {
                    let gauss = matches!(inst.roles[i], CheckRole::Gauss { .. });
                    if !(gauss && h == t_i) {
                        out.insert(name(&dl[i], h));
                    }
                    if !(gauss && h + 1 == t_o) {
                        out.insert(name(&dl[i], h + 1));
                    }
                }
                MeasKind::Edge(_) => unreachable!("readout flips are their own site"),
            }
        }
    }
    out
}

fn pauli_fault(inst: &Instance, q: usize, p: Pauli, t: usize, out: &mut BTreeSet<String>) {
    let s = inst.schedule;
    let (t_i, t_o) = (s.t_i(), s.t_o());
    let every = s.cadence == FluxCadence::EveryRound;
    if t < t_i || t > t_o {
        for (j, c) in inst.base.checks().iter().enumerate() {
            if anticommutes(c, q, p) {
                out.insert(name(&inst.base.labels()[j], t));
            }
        }
        return;
    }
    for (i, c) in inst.deformed.checks().iter().enumerate() {
        if !anticommutes(c, q, p) {
            continue;
        }
        let l = &inst.deformed.labels()[i];
        match inst.roles[i] {
            // The first A_v outcome is random and the last sits before t_o.
            CheckRole::Gauss { .. } => {
                if t_i < t && t < t_o {
                    out.insert(name(l, t));
                }
            }
            CheckRole::Flux { .. } if !every => {
                out.insert(name(l, t_o));
            }
            _ => {
                out.insert(name(l, t));
            }
        }
    }
}
