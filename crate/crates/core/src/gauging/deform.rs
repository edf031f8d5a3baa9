use super::frame::{basis_change_to_x, incompatible_pair, BasisChange};
use super::graph::Binding;
use super::{GaugingError, GaugingPlan};
use crate::codes::{StabilizerCode, TannerReport};
use crate::f2::BitVec;
use crate::pauli::PauliOp;

/// Which family a deformed-code check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckRole {
    /// `A_v` of plan `plan`.
    Gauss { plan: usize, vertex: usize },
    /// `B_p` of plan `plan`.
    Flux { plan: usize, cycle: usize },
    /// Base check not meeting any logical.
    Untouched { base: usize },
    /// Base check multiplied by `Z` on its paths.
    Deformed { base: usize },
}

/// The code obtained by gauging one or more logicals.
///
/// Everything is expressed in the X frame of the measured logicals. Qubits
/// are the base qubits followed by the edge qubits of each plan in turn;
/// dummy vertices carry no qubit.
#[derive(Clone, Debug)]
pub struct DeformedCode {
    base: StabilizerCode,
    frame: BasisChange,
    plans: Vec<GaugingPlan>,
    edge_offsets: Vec<usize>,
    n_edges: usize,
    roles: Vec<CheckRole>,
    code: StabilizerCode,
}

/// Deforms `code` by a single plan.
pub fn deform(code: &StabilizerCode, plan: &GaugingPlan) -> Result<DeformedCode, GaugingError> {
    deform_many(code, std::slice::from_ref(plan))
}

/// Deforms `code` by several plans at once. Logicals may share qubits only
/// where they act by the same Pauli.
pub fn deform_many(
    code: &StabilizerCode,
    plans: &[GaugingPlan],
) -> Result<DeformedCode, GaugingError> {
    let n = code.n();
    let mut frame = BasisChange::default();
    for (i, p) in plans.iter().enumerate() {
        if p.logical.n() != n {
            return Err(GaugingError::Mismatch(format!(
                "plan {i} logical has {} qubits",
                p.logical.n()
            )));
        }
    }
    if let Some(clash) = incompatible_pair(plans) {
        return Err(GaugingError::Incompatible(clash));
    }
    for p in plans {
        frame = frame
            .merge(&BasisChange::for_logical(&p.logical))
            .expect("compatible logicals share a frame");
    }
    let frame_code = StabilizerCode::new(
        n,
        code.checks().iter().map(|c| frame.to_frame(c)).collect(),
        Some(code.labels().to_vec()),
    )
    .expect("conjugation preserves commutation");

    let mut edge_offsets = Vec::new();
    let mut n_edges = 0;
    for p in plans {
        edge_offsets.push(n_edges);
        n_edges += p.graph.edge_count();
    }
    let total = n + n_edges;
    let edge_ops = |plan: usize, edges: &BitVec| -> Vec<usize> {
        edges
            .iter_ones()
            .map(|e| n + edge_offsets[plan] + e)
            .collect()
    };

    let mut checks = Vec::new();
    let mut labels = Vec::new();
    let mut roles = Vec::new();
    let multi = plans.len() > 1;
    let prefix = |i: usize| {
        if multi {
            format!("{i}.")
        } else {
            String::new()
        }
    };

    for (i, p) in plans.iter().enumerate() {
        if !p.graph.is_connected() {
            return Err(GaugingError::Disconnected(p.graph.components().len()));
        }
        let l = frame.to_frame(&p.logical);
        for (v, b) in p.graph.vertices().iter().enumerate() {
            let mut op = PauliOp::identity(total);
            if let Binding::Qubit(q) = *b {
                if !l.x_bits().get(q) {
                    return Err(GaugingError::Graph(format!(
                        "vertex {v} bound outside the support"
                    )));
                }
                op.set(q, crate::pauli::Pauli::X);
            }
            let incident: Vec<usize> = (0..p.graph.edge_count())
                .filter(|&e| {
                    let (a, c) = p.graph.edges()[e];
                    a == v || c == v
                })
                .map(|e| n + edge_offsets[i] + e)
                .collect();
            for q in incident {
                op.set(q, crate::pauli::Pauli::X);
            }
            checks.push(op);
            labels.push(format!("A{}{v}", prefix(i)));
            roles.push(CheckRole::Gauss { plan: i, vertex: v });
        }
        for (c, cyc) in p.cycles.iter().enumerate() {
            if cyc.len() != p.graph.edge_count() || !p.graph.boundary_of(cyc).is_zero() {
                return Err(GaugingError::Graph(format!(
                    "plan {i} flux row {c} is not a cycle"
                )));
            }
            checks.push(PauliOp::z_type(total, edge_ops(i, cyc)));
            labels.push(format!("B{}{c}", prefix(i)));
            roles.push(CheckRole::Flux { plan: i, cycle: c });
        }
    }

    for (j, s) in frame_code.checks().iter().enumerate() {
        let mut op = s.resized(total);
        let mut touched = false;
        for (i, p) in plans.iter().enumerate() {
            let l = frame.to_frame(&p.logical);
            let overlap = s.z_bits().and(l.x_bits());
            let pos = p.checks.iter().position(|&c| c == j);
            match (overlap.is_zero(), pos) {
                (true, None) => {}
                (false, Some(k)) => {
                    let path = &p.paths[k];
                    if path.len() != p.graph.edge_count() {
                        return Err(GaugingError::Mismatch(format!(
                            "path for check {} has stale width",
                            code.labels()[j]
                        )));
                    }
                    let mut want = BitVec::zeros(p.graph.vertex_count());
                    for q in overlap.iter_ones() {
                        let v = p.graph.vertex_of_qubit(q).ok_or_else(|| {
                            GaugingError::Graph(format!("qubit {q} has no vertex"))
                        })?;
                        want.flip(v);
                    }
                    if p.graph.boundary_of(path) != want {
                        return Err(GaugingError::Mismatch(format!(
                            "path for check {} has the wrong boundary",
                            code.labels()[j]
                        )));
                    }
                    let z = PauliOp::z_type(total, edge_ops(i, path));
                    op = op.mul(&z).expect("same width");
                    touched = true;
                }
                _ => {
                    return Err(GaugingError::Mismatch(format!(
                        "plan {i} and check {} disagree on overlap",
                        code.labels()[j]
                    )))
                }
            }
        }
        checks.push(op);
        if touched {
            labels.push(format!("{}~", code.labels()[j]));
            roles.push(CheckRole::Deformed { base: j });
        } else {
            labels.push(code.labels()[j].clone());
            roles.push(CheckRole::Untouched { base: j });
        }
    }

    let deformed = StabilizerCode::new(total, checks, Some(labels))
        .map_err(|e| GaugingError::Invariant(format!("deformed checks fail to commute: {e}")))?;
    Ok(DeformedCode {
        base: code.clone(),
        frame,
        plans: plans.to_vec(),
        edge_offsets,
        n_edges,
        roles,
        code: deformed,
    })
}

impl DeformedCode {
    /// The deformed code in the X frame.
    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn base(&self) -> &StabilizerCode {
        &self.base
    }

    pub fn frame(&self) -> &BasisChange {
        &self.frame
    }

    pub fn plans(&self) -> &[GaugingPlan] {
        &self.plans
    }

    pub fn n_base(&self) -> usize {
        self.base.n()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    /// Qubit index of edge `e` of plan `plan`.
    pub fn edge_qubit(&self, plan: usize, e: usize) -> usize {
        self.base.n() + self.edge_offsets[plan] + e
    }

    pub fn roles(&self) -> &[CheckRole] {
        &self.roles
    }

    fn indices(&self, pred: impl Fn(&CheckRole) -> bool) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&i| pred(&self.roles[i]))
            .collect()
    }

    /// Check indices of all `A_v`.
    pub fn gauss(&self) -> Vec<usize> {
        self.indices(|r| matches!(r, CheckRole::Gauss { .. }))
    }

    pub fn flux(&self) -> Vec<usize> {
        self.indices(|r| matches!(r, CheckRole::Flux { .. }))
    }

    pub fn untouched(&self) -> Vec<usize> {
        self.indices(|r| matches!(r, CheckRole::Untouched { .. }))
    }

    pub fn deformed(&self) -> Vec<usize> {
        self.indices(|r| matches!(r, CheckRole::Deformed { .. }))
    }

    /// Logical of plan `i` in the X frame, on the base qubits.
    pub fn logical(&self, i: usize) -> PauliOp {
        self.frame.to_frame(&self.plans[i].logical)
    }

    /// `|E| - C - |V|` per plan with `C = |E| - rank(boundary)` the full
    /// cycle-space dimension; `-1` for every connected graph.
    pub fn counting_identity(&self) -> Vec<i64> {
        self.plans
            .iter()
            .map(|p| {
                let e = p.graph.edge_count() as i64;
                let c = e - p.graph.incidence().rank() as i64;
                e - c - p.graph.vertex_count() as i64
            })
            .collect()
    }

    /// Number of independent logicals measured: rank of the measured
    /// logicals modulo the base check group.
    pub fn measured_rank(&self) -> usize {
        let mut group = crate::f2::RowSpace::from_matrix(&self.base.check_matrix());
        (0..self.plans.len())
            .filter(|&i| group.insert(self.plans[i].logical.symplectic()))
            .count()
    }

    /// `k(base) - k(deformed)`, expected to equal [`measured_rank`](Self::measured_rank).
    pub fn k_drop(&self) -> i64 {
        self.base.k() as i64 - self.code.k() as i64
    }

    /// Additions relative to the base code: `(X checks, Z checks, qubits)`.
    pub fn additions(&self) -> (usize, usize, usize) {
        (self.gauss().len(), self.flux().len(), self.n_edges)
    }

    pub fn report(&self) -> TannerReport {
        TannerReport::of(&self.code)
    }

    /// The deformed code with the base qubits rotated back to the original
    /// frame; edge qubits are unchanged.
    pub fn original_frame_code(&self) -> StabilizerCode {
        let checks = self
            .code
            .checks()
            .iter()
            .map(|c| self.frame.from_frame(c))
            .collect();
        StabilizerCode::new(self.code.n(), checks, Some(self.code.labels().to_vec()))
            .expect("conjugation preserves commutation")
    }

    /// Deformed version of a base-qubit operator `p` (original frame) that
    /// commutes with every measured logical: `p` in the X frame times `Z` on
    /// an edge set whose boundary is where `p` meets each logical with `Z`.
    /// The result commutes with every Gauss check.
    pub fn deform_operator(&self, p: &PauliOp) -> Result<PauliOp, GaugingError> {
        let n = self.base.n();
        if p.n() != n {
            return Err(GaugingError::Mismatch(format!(
                "operator has {} qubits, base has {n}",
                p.n()
            )));
        }
        let fp = self.frame.to_frame(p);
        let mut out = fp.resized(self.code.n());
        for (i, plan) in self.plans.iter().enumerate() {
            let overlap = fp.z_bits().and(self.logical(i).x_bits());
            if overlap.weight() % 2 == 1 {
                return Err(GaugingError::Anticommutes(
                    p.to_string(),
                    plan.logical.to_string(),
                ));
            }
            let ends: Vec<usize> = overlap
                .iter_ones()
                .map(|q| {
                    plan.graph
                        .vertex_of_qubit(q)
                        .ok_or_else(|| GaugingError::Graph(format!("qubit {q} has no vertex")))
                })
                .collect::<Result<_, _>>()?;
            let mut path = BitVec::zeros(plan.graph.edge_count());
            for pair in ends.chunks(2) {
                let seg = plan
                    .graph
                    .shortest_path(pair[0], pair[1])
                    .ok_or(GaugingError::Disconnected(plan.graph.components().len()))?;
                path = path.xor(&seg);
            }
            for e in path.iter_ones() {
                let q = n + self.edge_offsets[i] + e;
                out.set(q, crate::pauli::Pauli::Z);
            }
        }
        Ok(out)
    }
}

/// Convenience: plan from matching plus flux selection, then deform.
pub fn deform_by_matching(
    code: &StabilizerCode,
    logical: &PauliOp,
) -> Result<DeformedCode, GaugingError> {
    let _ = basis_change_to_x(code, logical)?;
    let mut plan = GaugingPlan::from_matching(code, logical)?;
    plan.select_flux_checks(code)?;
    deform(code, &plan)
}
