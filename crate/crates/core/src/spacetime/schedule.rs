use std::collections::HashMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SpacetimeError;
use crate::codes::StabilizerCode;
use crate::f2::BitVec;
use crate::gauging::{byproduct_vertices, Binding, CheckRole, DeformedCode, GaugingPlan};
use crate::pauli::{Pauli, PauliOp, Sign};
use crate::tableau::{CanonicalForm, MeasureMode, Tableau, TableauError};

/// How often the flux checks are read out during the deformed phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum FluxCadence {
    #[default]
    EveryRound,
    /// Never measured; each flux value is inferred from the edge
    /// initialization and readout.
    EndpointsOnly,
}

/// Round structure. Times are integers for Pauli faults; measurement round
/// `h` happens at `h + 1/2`. Rounds `0..t_i` measure the original code
/// (edges are initialized at `t_i - 1/2`), rounds `t_i..t_o` the deformed
/// code, and rounds `t_o..t_o + post` the original code again, the first of
/// them alongside the edge readout. The first and last rounds are perfect.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub pre: usize,
    pub rounds: usize,
    pub post: usize,
    pub cadence: FluxCadence,
}

impl Schedule {
    pub fn new(pre: usize, rounds: usize, post: usize) -> Result<Self, SpacetimeError> {
        let s = Schedule {
            pre,
            rounds,
            post,
            cadence: FluxCadence::EveryRound,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_cadence(mut self, cadence: FluxCadence) -> Self {
        self.cadence = cadence;
        self
    }

    pub fn validate(&self) -> Result<(), SpacetimeError> {
        if self.pre == 0 || self.post == 0 || self.rounds == 0 {
            return Err(SpacetimeError::Schedule(
                "need at least one round in each phase".into(),
            ));
        }
        Ok(())
    }

    pub fn t_i(&self) -> usize {
        self.pre
    }

    pub fn t_o(&self) -> usize {
        self.pre + self.rounds
    }

    /// Number of measurement rounds.
    pub fn total_rounds(&self) -> usize {
        self.pre + self.rounds + self.post
    }
}

/// Elementary fault. Qubits are numbered base first, then edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FaultSite {
    /// Pauli error at integer time `t`.
    Pauli {
        qubit: usize,
        pauli: Pauli,
        t: usize,
    },
    /// Flipped outcome of `label` in round `round` (time `round + 1/2`).
    Measurement { label: String, round: usize },
    /// Edge prepared in `|1>` instead of `|0>` at `t_i - 1/2`.
    Init { edge: usize },
    /// Flipped `Z_e` readout at `t_o + 1/2`.
    Readout { edge: usize },
}

impl fmt::Display for FaultSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaultSite::Pauli { qubit, pauli, t } => write!(f, "{pauli:?}{qubit}@{t}"),
            FaultSite::Measurement { label, round } => write!(f, "m[{label}]@{round}.5"),
            FaultSite::Init { edge } => write!(f, "init[e{edge}]"),
            FaultSite::Readout { edge } => write!(f, "readout[e{edge}]"),
        }
    }
}

/// Which code a measurement belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasKind {
    /// Check `j` of the original code.
    Original(usize),
    /// Check of the deformed code, by index in its check list.
    Deformed(usize),
    /// `Z_e` readout.
    Edge(usize),
}

#[derive(Clone, Debug)]
pub struct Measurement {
    pub label: String,
    pub round: usize,
    pub kind: MeasKind,
    /// On the full simulation width.
    pub op: PauliOp,
}

/// Everything a run reports.
#[derive(Clone, Debug)]
pub struct RunResult {
    /// `true` where the outcome was `-1`.
    pub records: BitVec,
    pub sigma: Sign,
    /// Final-state checks, see [`Instance::final_checks`].
    pub effects: BitVec,
    pub byproduct: PauliOp,
    /// State on base and reference qubits after the last round.
    pub final_state: CanonicalForm,
}

/// A deformed code laid out in time, ready to simulate with faults.
///
/// The simulated register holds the base qubits (in the X frame of the
/// measured logical), one reference qubit per logical qubit of the base code
/// (maximally entangled with it, so a final-state check sees every logical
/// error), and the edge qubits.
#[derive(Clone, Debug)]
pub struct Instance {
    pub schedule: Schedule,
    pub base: StabilizerCode,
    pub deformed: StabilizerCode,
    pub roles: Vec<CheckRole>,
    pub plan: GaugingPlan,
    pub logical: PauliOp,
    pub pairs: Vec<(PauliOp, PauliOp)>,
    pub n: usize,
    pub k: usize,
    pub n_edges: usize,
    pub measurements: Vec<Measurement>,
    index: HashMap<(String, usize), usize>,
}

impl Instance {
    pub fn new(dc: &DeformedCode, schedule: Schedule) -> Result<Self, SpacetimeError> {
        schedule.validate()?;
        if dc.plans().len() != 1 {
            return Err(SpacetimeError::Unsupported(
                "exactly one gauging plan".into(),
            ));
        }
        let plan = dc.plans()[0].clone();
        if plan.graph.vertices().contains(&Binding::Dummy) {
            return Err(SpacetimeError::Unsupported("dummy vertices".into()));
        }
        let n = dc.n_base();
        let base = StabilizerCode::new(
            n,
            dc.base()
                .checks()
                .iter()
                .map(|c| dc.frame().to_frame(c))
                .collect(),
            Some(dc.base().labels().to_vec()),
        )?;
        let logical = dc.logical(0).unsigned();
        let pairs = base.symplectic_pairs(Some(&logical))?;
        let k = pairs.len();
        let n_edges = dc.n_edges();
        let mut inst = Instance {
            schedule,
            base,
            deformed: dc.code().clone(),
            roles: dc.roles().to_vec(),
            plan,
            logical,
            pairs,
            n,
            k,
            n_edges,
            measurements: Vec::new(),
            index: HashMap::new(),
        };
        inst.lay_out();
        Ok(inst)
    }

    /// Simulation width.
    pub fn width(&self) -> usize {
        self.n + self.k + self.n_edges
    }

    /// Simulation index of instance qubit `q` (base, then edges).
    pub fn sim_qubit(&self, q: usize) -> usize {
        if q < self.n {
            q
        } else {
            q + self.k
        }
    }

    /// Simulation index of edge `e`.
    pub fn edge_qubit(&self, e: usize) -> usize {
        self.n + self.k + e
    }

    /// Original or deformed op moved to the simulation width.
    fn lift(&self, op: &PauliOp) -> PauliOp {
        let map: Vec<usize> = (0..op.n()).map(|q| self.sim_qubit(q)).collect();
        op.embed(self.width(), &map)
    }

    fn lay_out(&mut self) {
        let s = self.schedule;
        let mut ms = Vec::new();
        let original = |round: usize, ms: &mut Vec<Measurement>| {
            for (j, c) in self.base.checks().iter().enumerate() {
                ms.push(Measurement {
                    label: self.base.labels()[j].clone(),
                    round,
                    kind: MeasKind::Original(j),
                    op: self.lift(c),
                });
            }
        };
        for round in 0..s.total_rounds() {
            if round < s.t_i() {
                original(round, &mut ms);
            } else if round < s.t_o() {
                for (i, c) in self.deformed.checks().iter().enumerate() {
                    let flux = matches!(self.roles[i], CheckRole::Flux { .. });
                    if flux && s.cadence == FluxCadence::EndpointsOnly {
                        continue;
                    }
                    ms.push(Measurement {
                        label: self.deformed.labels()[i].clone(),
                        round,
                        kind: MeasKind::Deformed(i),
                        op: self.lift(c),
                    });
                }
            } else {
                if round == s.t_o() {
                    for e in 0..self.n_edges {
                        ms.push(Measurement {
                            label: format!("Ze{e}"),
                            round,
                            kind: MeasKind::Edge(e),
                            op: self.lift(&PauliOp::single(
                                self.n + self.n_edges,
                                self.n + e,
                                Pauli::Z,
                            )),
                        });
                    }
                }
                original(round, &mut ms);
            }
        }
        self.index = ms
            .iter()
            .enumerate()
            .map(|(i, m)| ((m.label.clone(), m.round), i))
            .collect();
        self.measurements = ms;
    }

    pub fn measurement_index(&self, label: &str, round: usize) -> Option<usize> {
        self.index.get(&(label.to_string(), round)).copied()
    }

    /// Measurement ids of a round.
    pub fn round(&self, round: usize) -> impl Iterator<Item = usize> + '_ {
        self.measurements
            .iter()
            .enumerate()
            .filter(move |(_, m)| m.round == round)
            .map(|(i, _)| i)
    }

    /// Final-state checks, as `(operator, multiply by sigma)`:
    /// the reference partner of the logical (does the reported outcome
    /// match the input state), the logical itself (does the output state
    /// match the report), then both halves of every other logical pair.
    pub fn final_checks(&self) -> Vec<(PauliOp, bool)> {
        let w = self.width();
        let refq = |i: usize| self.n + i;
        let base = |p: &PauliOp| p.embed(w, &(0..self.n).collect::<Vec<_>>());
        let mut out = vec![
            (PauliOp::single(w, refq(0), Pauli::X), true),
            (base(&self.logical), true),
        ];
        for (i, (x, z)) in self.pairs.iter().enumerate().skip(1) {
            let mut xr = base(x);
            xr.set(refq(i), Pauli::X);
            let mut zr = base(z);
            zr.set(refq(i), Pauli::Z);
            out.push((xr, false));
            out.push((zr, false));
        }
        out
    }

    fn initial_state(&self) -> Result<Tableau, SpacetimeError> {
        let w = self.width();
        let mut gens: Vec<PauliOp> = self.base.checks().iter().map(|c| self.lift(c)).collect();
        let base_map: Vec<usize> = (0..self.n).collect();
        for (i, (x, z)) in self.pairs.iter().enumerate() {
            let mut xr = x.embed(w, &base_map);
            xr.set(self.n + i, Pauli::X);
            let mut zr = z.embed(w, &base_map);
            zr.set(self.n + i, Pauli::Z);
            gens.push(xr);
            gens.push(zr);
        }
        for e in 0..self.n_edges {
            gens.push(PauliOp::single(w, self.edge_qubit(e), Pauli::Z));
        }
        // Checks may be dependent; keep an independent subset.
        let mut span = crate::f2::RowSpace::new(2 * w);
        gens.retain(|g| span.insert(g.symplectic()));
        Ok(Tableau::from_stabilizers(&gens)?)
    }

    /// Whether a fault site exists in this schedule.
    pub fn validate_site(&self, f: &FaultSite) -> Result<(), SpacetimeError> {
        let s = self.schedule;
        let last = s.total_rounds() - 1;
        let ok = match f {
            FaultSite::Pauli { qubit, pauli, t } => {
                *pauli != Pauli::I
                    && if *qubit < self.n {
                        (1..=last).contains(t)
                    } else {
                        *qubit < self.n + self.n_edges && (s.t_i()..=s.t_o()).contains(t)
                    }
            }
            FaultSite::Measurement { label, round } => {
                *round != 0
                    && *round != last
                    && self.measurement_index(label, *round).is_some()
                    && !label.starts_with("Ze")
            }
            FaultSite::Init { edge } | FaultSite::Readout { edge } => *edge < self.n_edges,
        };
        if ok {
            Ok(())
        } else {
            Err(SpacetimeError::InvalidSite(f.to_string()))
        }
    }

    /// Every elementary fault: X, Y, Z on each qubit and time, each
    /// measurement flip outside the perfect rounds, edge init and readout.
    pub fn all_sites(&self) -> Vec<FaultSite> {
        let s = self.schedule;
        let last = s.total_rounds() - 1;
        let mut out = Vec::new();
        for t in 1..=last {
            for q in 0..self.n + self.n_edges {
                if q >= self.n && !(s.t_i()..=s.t_o()).contains(&t) {
                    continue;
                }
                for pauli in [Pauli::X, Pauli::Y, Pauli::Z] {
                    out.push(FaultSite::Pauli { qubit: q, pauli, t });
                }
            }
        }
        for m in &self.measurements {
            if m.round != 0 && m.round != last && !matches!(m.kind, MeasKind::Edge(_)) {
                out.push(FaultSite::Measurement {
                    label: m.label.clone(),
                    round: m.round,
                });
            }
        }
        for edge in 0..self.n_edges {
            out.push(FaultSite::Init { edge });
            out.push(FaultSite::Readout { edge });
        }
        out
    }

    /// Simulates the schedule with `faults` injected.
    pub fn run(&self, faults: &[FaultSite], seed: u64) -> Result<RunResult, SpacetimeError> {
        self.simulate(faults, seed, None)
    }

    /// Fault-free run whose random outcomes follow `records`. Returns `None`
    /// when a deterministic outcome disagrees, meaning `records` is not a
    /// fault-free history.
    pub fn replay(&self, records: &BitVec) -> Result<Option<RunResult>, SpacetimeError> {
        match self.simulate(&[], 0, Some(records)) {
            Ok(r) => Ok(Some(r)),
            Err(SpacetimeError::Tableau(TableauError::Contradiction { .. })) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn simulate(
        &self,
        faults: &[FaultSite],
        seed: u64,
        replay: Option<&BitVec>,
    ) -> Result<RunResult, SpacetimeError> {
        for f in faults {
            self.validate_site(f)?;
        }
        let s = self.schedule;
        let w = self.width();
        let mut paulis: HashMap<usize, PauliOp> = HashMap::new();
        let mut flips = BitVec::zeros(self.measurements.len());
        let mut init = PauliOp::identity(w);
        for f in faults {
            match f {
                FaultSite::Pauli { qubit, pauli, t } => {
                    let slot = paulis.entry(*t).or_insert_with(|| PauliOp::identity(w));
                    let single = PauliOp::single(w, self.sim_qubit(*qubit), *pauli);
                    *slot = slot.mul(&single)?;
                }
                FaultSite::Measurement { label, round } => {
                    flips.flip(self.measurement_index(label, *round).expect("validated"));
                }
                FaultSite::Init { edge } => {
                    init = init.mul(&PauliOp::single(w, self.edge_qubit(*edge), Pauli::X))?;
                }
                FaultSite::Readout { edge } => {
                    let i = self
                        .measurement_index(&format!("Ze{edge}"), s.t_o())
                        .expect("readout exists");
                    flips.flip(i);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut st = self.initial_state()?;
        let mut records = BitVec::zeros(self.measurements.len());
        let mut next = 0;
        for round in 0..s.total_rounds() {
            if let Some(p) = paulis.get(&round) {
                st.apply_pauli(p)?;
            }
            while next < self.measurements.len() && self.measurements[next].round == round {
                let m = &self.measurements[next];
                let mode = match replay {
                    Some(r) => MeasureMode::Forced(Sign::from_bit(r.get(next))),
                    None => MeasureMode::Sample(&mut rng),
                };
                let out = st.measure(&m.op, mode)?;
                records.set(next, out.sign.is_minus() ^ flips.get(next));
                next += 1;
            }
            if round + 1 == s.t_i() && !init.is_identity() {
                st.apply_pauli(&init)?;
            }
        }
        let sigma_bit = self
            .round(s.t_i())
            .filter(|&i| self.is_gauss(i))
            .fold(false, |acc, i| acc ^ records.get(i));
        let sigma = Sign::from_bit(sigma_bit);
        let minus_edges = BitVec::from_bools(
            &(0..self.n_edges)
                .map(|e| {
                    records.get(
                        self.measurement_index(&format!("Ze{e}"), s.t_o())
                            .expect("readout"),
                    )
                })
                .collect::<Vec<_>>(),
        )
        .resized(self.n_edges);
        let c = byproduct_vertices(&self.plan, &minus_edges);
        let mut byproduct = PauliOp::identity(w);
        for v in c.iter_ones() {
            if let Binding::Qubit(q) = self.plan.graph.vertices()[v] {
                byproduct.set(q, Pauli::X);
            }
        }
        st.apply_pauli(&byproduct)?;
        let mut effects = BitVec::zeros(0);
        for (op, times_sigma) in self.final_checks() {
            let v = st.expectation(&op)?.ok_or_else(|| {
                SpacetimeError::Invariant(format!("final check {op} is not determined"))
            })?;
            effects = effects.concat(&BitVec::from_bools(&[
                v.is_minus() ^ (times_sigma && sigma_bit)
            ]));
        }
        st.discard(&(self.n + self.k..w).collect::<Vec<_>>())?;
        Ok(RunResult {
            records,
            sigma,
            effects,
            byproduct: byproduct.restrict(&(0..self.n).collect::<Vec<_>>()),
            final_state: st.canonical(),
        })
    }

    /// Role of the deformed check behind measurement `m`, if any.
    pub fn role_of(&self, m: usize) -> Option<CheckRole> {
        match self.measurements[m].kind {
            MeasKind::Deformed(i) => Some(self.roles[i]),
            _ => None,
        }
    }

    pub fn is_gauss(&self, m: usize) -> bool {
        matches!(self.role_of(m), Some(CheckRole::Gauss { .. }))
    }

    pub fn is_flux(&self, m: usize) -> bool {
        matches!(self.role_of(m), Some(CheckRole::Flux { .. }))
    }
}
