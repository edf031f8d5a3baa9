use serde::{Deserialize, Serialize};

use super::schedule::{FluxCadence, Instance, MeasKind};
use super::SpacetimeError;
use crate::f2::BitVec;
use crate::gauging::CheckRole;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Pre,
    SeamIn,
    Bulk,
    SeamOut,
    Post,
}

/// A measurement by label and round; round `h` is time `h + 1/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Member {
    pub label: String,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detector {
    pub id: usize,
    /// Name such as `A_v0^3`, with the integer time of the detector.
    pub name: String,
    pub members: Vec<Member>,
    pub phase: Phase,
    /// The edge initialization is part of `B_p` detectors at the entry
    /// seam; it only fixes the reference value.
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub with_init: bool,
    #[serde(skip)]
    pub(crate) ids: Vec<usize>,
}

impl Detector {
    /// Measurement ids in the instance.
    pub fn measurement_ids(&self) -> &[usize] {
        &self.ids
    }

    /// Parity of its members in a record vector.
    pub fn parity(&self, records: &BitVec) -> bool {
        self.ids.iter().fold(false, |acc, &i| acc ^ records.get(i))
    }
}

struct Builder<'a> {
    inst: &'a Instance,
    out: Vec<Detector>,
}

impl Builder<'_> {
    fn id(&self, label: &str, round: usize) -> usize {
        self.inst
            .measurement_index(label, round)
            .unwrap_or_else(|| panic!("{label} is not measured in round {round}"))
    }

    fn push(&mut self, name: String, phase: Phase, members: Vec<(String, usize)>, with_init: bool) {
        let ids = members.iter().map(|(l, r)| self.id(l, *r)).collect();
        let members = members
            .into_iter()
            .map(|(label, r)| Member {
                label,
                t: r as f64 + 0.5,
            })
            .collect();
        self.out.push(Detector {
            id: self.out.len(),
            name,
            members,
            phase,
            with_init,
            ids,
        });
    }
}

/// Local detectors of the schedule, grouped by phase and ordered by time.
///
/// `X^t` compares the measurements of `X` at `t - 1/2` and `t + 1/2`. At the
/// seams: `B_p^{t_i}` is the first `B_p` outcome (fixed by the `|0>` edges),
/// `s~_j^{t_i}` compares `s_j` with `s~_j`, `B_p^{t_o}` compares the last
/// `B_p` with the product of its edge readouts and `s~_j^{t_o}` compares the
/// last `s~_j` with `s_j` times the readouts along its path. With flux
/// checks inferred only at the endpoints, each `B_p` contributes one
/// detector: the product of its edge readouts.
pub fn build_detectors(inst: &Instance) -> Vec<Detector> {
    let s = inst.schedule;
    let (t_i, t_o, end) = (s.t_i(), s.t_o(), s.total_rounds());
    let plan = &inst.plan;
    let base_labels = inst.base.labels();
    let labels = inst.deformed.labels();
    let every = s.cadence == FluxCadence::EveryRound;
    let ze = |e: usize| format!("Ze{e}");
    let mut b = Builder {
        inst,
        out: Vec::new(),
    };
    let repeated = |b: &mut Builder, t: usize, phase: Phase, label: &str| {
        b.push(
            format!("{label}^{t}"),
            phase,
            vec![(label.to_string(), t - 1), (label.to_string(), t)],
            false,
        );
    };

    for t in 1..t_i {
        for l in base_labels {
            repeated(&mut b, t, Phase::Pre, l);
        }
    }

    // Deformed-phase checks, in check order.
    let measured: Vec<usize> = (0..labels.len())
        .filter(|&i| every || !matches!(inst.roles[i], CheckRole::Flux { .. }))
        .collect();
    let path_of = |j: usize| -> BitVec {
        plan.checks
            .iter()
            .position(|&c| c == j)
            .map(|k| plan.paths[k].clone())
            .unwrap_or_else(|| BitVec::zeros(inst.n_edges))
    };

    for &i in &measured {
        let l = &labels[i];
        match inst.roles[i] {
            CheckRole::Gauss { .. } => {}
            CheckRole::Flux { .. } => {
                b.push(
                    format!("{l}^{t_i}"),
                    Phase::SeamIn,
                    vec![(l.clone(), t_i)],
                    true,
                );
            }
            CheckRole::Deformed { base } | CheckRole::Untouched { base } => b.push(
                format!("{l}^{t_i}"),
                Phase::SeamIn,
                vec![(base_labels[base].clone(), t_i - 1), (l.clone(), t_i)],
                false,
            ),
        }
    }

    for t in t_i + 1..t_o {
        for &i in &measured {
            repeated(&mut b, t, Phase::Bulk, &labels[i]);
        }
    }

    for (i, l) in labels.iter().enumerate() {
        match inst.roles[i] {
            CheckRole::Gauss { .. } => {}
            CheckRole::Flux { cycle, .. } => {
                let mut members = Vec::new();
                if every {
                    members.push((l.clone(), t_o - 1));
                }
                members.extend(plan.cycles[cycle].iter_ones().map(|e| (ze(e), t_o)));
                b.push(format!("{l}^{t_o}"), Phase::SeamOut, members, !every);
            }
            CheckRole::Deformed { base } | CheckRole::Untouched { base } => {
                let mut members = vec![(l.clone(), t_o - 1)];
                members.extend(path_of(base).iter_ones().map(|e| (ze(e), t_o)));
                members.push((base_labels[base].clone(), t_o));
                b.push(format!("{l}^{t_o}"), Phase::SeamOut, members, false);
            }
        }
    }

    for t in t_o + 1..end {
        for l in base_labels {
            repeated(&mut b, t, Phase::Post, l);
        }
    }
    debug_assert!(b.out.iter().flat_map(|d| d.ids.iter()).all(|&m| !matches!(
        inst.measurements[m].kind,
        MeasKind::Edge(_)
    ) || inst.measurements[m]
        .round
        == t_o));
    b.out
}

/// Detector parities of a record vector.
pub fn detector_values(detectors: &[Detector], records: &BitVec) -> BitVec {
    BitVec::from_bools(
        &detectors
            .iter()
            .map(|d| d.parity(records))
            .collect::<Vec<_>>(),
    )
}

/// Checks that every detector has the same parity on `runs` fault-free
/// seeded runs and returns that reference parity.
pub fn validate_detectors(
    inst: &Instance,
    detectors: &[Detector],
    runs: u64,
) -> Result<BitVec, SpacetimeError> {
    let reference = detector_values(detectors, &inst.run(&[], 0)?.records);
    for seed in 1..runs {
        let v = detector_values(detectors, &inst.run(&[], seed)?.records);
        if let Some(d) = v.xor(&reference).first_one() {
            return Err(SpacetimeError::Invariant(format!(
                "detector {} is not deterministic (seed {seed})",
                detectors[d].name
            )));
        }
    }
    Ok(reference)
}
