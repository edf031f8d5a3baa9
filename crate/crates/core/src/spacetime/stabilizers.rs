use rayon::prelude::*;
use serde::Serialize;

use super::detectors::Phase;
use super::schedule::{FaultSite, FluxCadence, Instance, MeasKind};
use super::syndrome::{SyndromeMap, PROBE_SEED};
use super::SpacetimeError;
use crate::gauging::CheckRole;
use crate::pauli::{Pauli, PauliOp};

/// One instantiated generator of the local spacetime stabilizers.
#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub phase: Phase,
    pub faults: Vec<FaultSite>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StabilizerReport {
    pub checked: usize,
    /// Names of generators that failed, with the reason.
    pub failures: Vec<(String, String)>,
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn phase_of(inst: &Instance, t: usize) -> Phase {
    let s = inst.schedule;
    match t {
        t if t < s.t_i() => Phase::Pre,
        t if t == s.t_i() => Phase::SeamIn,
        t if t < s.t_o() => Phase::Bulk,
        t if t == s.t_o() => Phase::SeamOut,
        _ => Phase::Post,
    }
}

/// Single-site Pauli faults making up `op` (instance numbering) at time `t`.
fn operator_at(op: &PauliOp, t: usize) -> Vec<FaultSite> {
    op.support()
        .into_iter()
        .map(|qubit| FaultSite::Pauli {
            qubit,
            pauli: op.get(qubit),
            t,
        })
        .collect()
}

/// Measurement flips in round `round` on everything anticommuting with `p`
/// on instance qubit `q`. Edge readouts become readout faults.
fn flips(inst: &Instance, q: usize, p: Pauli, round: usize) -> Vec<FaultSite> {
    let single = PauliOp::single(inst.width(), inst.sim_qubit(q), p);
    inst.round(round)
        .filter(|&m| {
            !single
                .commutes(&inst.measurements[m].op)
                .expect("same width")
        })
        .map(|m| match inst.measurements[m].kind {
            MeasKind::Edge(edge) => FaultSite::Readout { edge },
            _ => FaultSite::Measurement {
                label: inst.measurements[m].label.clone(),
                round,
            },
        })
        .collect()
}

fn pauli_name(p: Pauli) -> &'static str {
    match p {
        Pauli::X => "X",
        Pauli::Y => "Y",
        Pauli::Z => "Z",
        Pauli::I => "I",
    }
}

/// The local generators phase by phase: check operators applied as faults,
/// Pauli pairs at `t, t+1` with the measurement faults they straddle, and
/// the seam items tying edge initialization and readout to edge faults.
pub fn spacetime_generators(inst: &Instance) -> Vec<Generator> {
    let s = inst.schedule;
    let (t_i, t_o, last) = (s.t_i(), s.t_o(), s.total_rounds() - 1);
    let n_inst = inst.n + inst.n_edges;
    let mut out = Vec::new();
    let base_ops: Vec<PauliOp> = inst
        .base
        .checks()
        .iter()
        .map(|c| c.resized(n_inst))
        .collect();

    // Stabilizer operators of the state present just before round t.
    for t in 1..=last {
        let phase = phase_of(inst, t);
        let (ops, labels): (&[PauliOp], &[String]) = if t <= t_i || t > t_o {
            (&base_ops, inst.base.labels())
        } else {
            (inst.deformed.checks(), inst.deformed.labels())
        };
        for (op, l) in ops.iter().zip(labels) {
            out.push(Generator {
                name: format!("{l}@{t}"),
                phase,
                faults: operator_at(op, t),
            });
        }
        if t == t_i {
            for e in 0..inst.n_edges {
                out.push(Generator {
                    name: format!("Ze{e}@{t}"),
                    phase,
                    faults: operator_at(&PauliOp::single(n_inst, inst.n + e, Pauli::Z), t),
                });
            }
        }
    }

    // Pauli pairs on base qubits for every adjacent pair of times.
    for t in 1..last {
        for q in 0..inst.n {
            for p in [Pauli::X, Pauli::Z] {
                let mut faults = vec![
                    FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t,
                    },
                    FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t: t + 1,
                    },
                ];
                faults.extend(flips(inst, q, p, t));
                out.push(Generator {
                    name: format!("{}{q}@{t},{}", pauli_name(p), t + 1),
                    phase: phase_of(inst, t),
                    faults,
                });
            }
        }
    }

    // Edge pairs inside the deformed phase.
    for t in t_i..t_o {
        for e in 0..inst.n_edges {
            let q = inst.n + e;
            for p in [Pauli::X, Pauli::Z] {
                if p == Pauli::Z && t == t_i {
                    // Z_e at t_i is trivial; pair the next one
                    // with the first A_v outcomes instead.
                    let mut faults = vec![FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t: t + 1,
                    }];
                    faults.extend(flips(inst, q, p, t));
                    out.push(Generator {
                        name: format!("Ze{e}@{},A@{t}.5", t + 1),
                        phase: Phase::SeamIn,
                        faults,
                    });
                    continue;
                }
                if p == Pauli::Z && t + 1 == t_o {
                    let mut faults = vec![FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t,
                    }];
                    faults.extend(flips(inst, q, p, t));
                    out.push(Generator {
                        name: format!("Ze{e}@{t},A@{t}.5"),
                        phase: Phase::SeamOut,
                        faults,
                    });
                    continue;
                }
                let mut faults = vec![
                    FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t,
                    },
                    FaultSite::Pauli {
                        qubit: q,
                        pauli: p,
                        t: t + 1,
                    },
                ];
                faults.extend(flips(inst, q, p, t));
                out.push(Generator {
                    name: format!("{}e{e}@{t},{}", pauli_name(p), t + 1),
                    phase: phase_of(inst, t),
                    faults,
                });
            }
        }
    }

    for e in 0..inst.n_edges {
        let q = inst.n + e;
        out.push(Generator {
            name: format!("init{e}+Xe{e}@{t_i}"),
            phase: Phase::SeamIn,
            faults: vec![
                FaultSite::Init { edge: e },
                FaultSite::Pauli {
                    qubit: q,
                    pauli: Pauli::X,
                    t: t_i,
                },
            ],
        });
        out.push(Generator {
            name: format!("Xe{e}@{t_o}+readout{e}"),
            phase: Phase::SeamOut,
            faults: vec![
                FaultSite::Pauli {
                    qubit: q,
                    pauli: Pauli::X,
                    t: t_o,
                },
                FaultSite::Readout { edge: e },
            ],
        });
        out.push(Generator {
            name: format!("Ze{e}@{t_o}"),
            phase: Phase::SeamOut,
            faults: vec![FaultSite::Pauli {
                qubit: q,
                pauli: Pauli::Z,
                t: t_o,
            }],
        });
    }
    out
}

/// Checks every generator: empty syndrome and unchanged effect by full
/// simulation, and the same final state as the fault-free history that
/// reports the same outcomes.
pub fn verify_spacetime_stabilizers(inst: &Instance) -> Result<StabilizerReport, SpacetimeError> {
    let map = SyndromeMap::build(inst)?;
    verify_with(inst, &map, &spacetime_generators(inst))
}

pub fn verify_with(
    inst: &Instance,
    map: &SyndromeMap,
    generators: &[Generator],
) -> Result<StabilizerReport, SpacetimeError> {
    let failures: Vec<(String, String)> = generators
        .par_iter()
        .map(|g| -> Result<Option<(String, String)>, SpacetimeError> {
            let run = inst.run(&g.faults, PROBE_SEED)?;
            let syn = map.observe(&run);
            if !syn.is_silent() {
                let names: Vec<_> = syn
                    .violated
                    .iter()
                    .map(|&d| map.detectors[d].name.clone())
                    .collect();
                return Ok(Some((
                    g.name.clone(),
                    format!("violates {}", names.join(", ")),
                )));
            }
            if !syn.effect.is_zero() {
                return Ok(Some((
                    g.name.clone(),
                    "changes the logical outcome or state".into(),
                )));
            }
            match inst.replay(&run.records)? {
                None => Ok(Some((
                    g.name.clone(),
                    "records are not a fault-free history".into(),
                ))),
                Some(clean) if clean.final_state != run.final_state => {
                    Ok(Some((g.name.clone(), "final state differs".into())))
                }
                Some(_) => Ok(None),
            }
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_, _>>()?;
    Ok(StabilizerReport {
        checked: generators.len(),
        failures,
    })
}

/// Flips of one `A_v` over every deformed round; reverses the reported
/// outcome without violating any detector.
pub fn time_logical_fault(inst: &Instance) -> Vec<FaultSite> {
    let s = inst.schedule;
    let label = inst
        .roles
        .iter()
        .position(|r| matches!(r, CheckRole::Gauss { .. }))
        .map(|i| inst.deformed.labels()[i].clone())
        .expect("plan has vertices");
    (s.t_i()..s.t_o())
        .map(|round| FaultSite::Measurement {
            label: label.clone(),
            round,
        })
        .collect()
}

/// Initialization of edge `e` flipped, every measured check containing
/// `Z_e` flipped in every deformed round, and the readout of `e` flipped.
/// Silent and trivial.
pub fn trivial_edge_string(inst: &Instance, e: usize) -> Vec<FaultSite> {
    let s = inst.schedule;
    let mut out = vec![FaultSite::Init { edge: e }];
    for (i, c) in inst.deformed.checks().iter().enumerate() {
        let flux = matches!(inst.roles[i], CheckRole::Flux { .. });
        if flux && s.cadence == FluxCadence::EndpointsOnly {
            continue;
        }
        if c.get(inst.n + e).bits().1 {
            for round in s.t_i()..s.t_o() {
                out.push(FaultSite::Measurement {
                    label: inst.deformed.labels()[i].clone(),
                    round,
                });
            }
        }
    }
    out.push(FaultSite::Readout { edge: e });
    out
}
