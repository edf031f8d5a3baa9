use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::frame::BasisChange;
use super::graph::Binding;
use super::{GaugingError, GaugingPlan};
use crate::f2::BitVec;
use crate::pauli::{Pauli, PauliOp, Sign};
use crate::tableau::{Gate, InitState, MeasureMode, Tableau};

/// How the Gauss's-law operators are measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaugeMode {
    /// Direct measurement of each `A_v`.
    #[default]
    Algorithm1,
    /// `prod CX(v -> e)`, measure `X_v`, undo the `CX` layer.
    Circuit,
}

/// Result of gauging one logical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeOutcome {
    /// Eigenvalue of the requested logical (its sign included).
    pub sigma: Sign,
    pub vertex_outcomes: Vec<Sign>,
    pub edge_outcomes: Vec<Sign>,
    /// Vertex set `c'` with coboundary equal to the `-1` edges.
    pub correction: BitVec,
    /// `X_V(c')` in the original frame, already applied.
    pub byproduct: PauliOp,
}

/// Runs the gauging measurement of `plan` on `t`, returning the outcome and
/// the post-measurement state on the base qubits.
pub fn gauge_measure(
    t: &Tableau,
    plan: &GaugingPlan,
    mode: GaugeMode,
    rng: &mut dyn RngCore,
) -> Result<(GaugeOutcome, Tableau), GaugingError> {
    let (mut outs, t) = gauge_measure_many(t, std::slice::from_ref(plan), mode, rng)?;
    Ok((outs.remove(0), t))
}

/// Gauges several compatible plans simultaneously: all edge qubits are
/// initialized, every `A_v` is measured, then every `Z_e`.
pub fn gauge_measure_many(
    t: &Tableau,
    plans: &[GaugingPlan],
    mode: GaugeMode,
    rng: &mut dyn RngCore,
) -> Result<(Vec<GaugeOutcome>, Tableau), GaugingError> {
    let n = t.n();
    let mut frame = BasisChange::default();
    for p in plans {
        if p.logical.n() != n {
            return Err(GaugingError::Mismatch(format!(
                "plan on {} qubits, state on {n}",
                p.logical.n()
            )));
        }
        if !p.graph.is_connected() {
            return Err(GaugingError::Disconnected(p.graph.components().len()));
        }
    }
    if let Some(clash) = super::frame::incompatible_pair(plans) {
        return Err(GaugingError::Incompatible(clash));
    }
    for p in plans {
        frame = frame
            .merge(&BasisChange::for_logical(&p.logical))
            .expect("compatible logicals share a frame");
    }
    let mut st = t.clone();
    st.apply_all(&frame.forward_gates())?;

    // Qubit layout: base, all edges, then one |+> ancilla per dummy vertex.
    let mut edge_base = Vec::new();
    let mut total_edges = 0;
    for p in plans {
        edge_base.push(n + total_edges);
        total_edges += p.graph.edge_count();
    }
    st.extend(total_edges, InitState::Zero);
    let mut vertex_qubit: Vec<Vec<usize>> = Vec::new();
    let mut next_dummy = n + total_edges;
    let mut dummies = 0;
    for p in plans {
        let mut map = Vec::new();
        for b in p.graph.vertices() {
            match *b {
                Binding::Qubit(q) => map.push(q),
                Binding::Dummy => {
                    map.push(next_dummy);
                    next_dummy += 1;
                    dummies += 1;
                }
            }
        }
        vertex_qubit.push(map);
    }
    st.extend(dummies, InitState::Plus);
    let width = st.n();

    let incident = |i: usize, v: usize| -> Vec<usize> {
        plans[i]
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(e, _)| edge_base[i] + e)
            .collect()
    };
    let cx_layer = |st: &mut Tableau| -> Result<(), GaugingError> {
        for (i, p) in plans.iter().enumerate() {
            for (v, &qv) in vertex_qubit[i]
                .iter()
                .enumerate()
                .take(p.graph.vertex_count())
            {
                for e in incident(i, v) {
                    st.apply(Gate::CX(qv, e))?;
                }
            }
        }
        Ok(())
    };

    if mode == GaugeMode::Circuit {
        cx_layer(&mut st)?;
    }
    let mut vertex_outcomes: Vec<Vec<Sign>> = Vec::new();
    for (i, p) in plans.iter().enumerate() {
        let mut outs = Vec::new();
        for (v, &qv) in vertex_qubit[i]
            .iter()
            .enumerate()
            .take(p.graph.vertex_count())
        {
            let mut op = PauliOp::single(width, qv, Pauli::X);
            if mode == GaugeMode::Algorithm1 {
                for e in incident(i, v) {
                    op.set(e, Pauli::X);
                }
            }
            let label = if plans.len() > 1 {
                format!("A{i}.{v}")
            } else {
                format!("A{v}")
            };
            outs.push(
                st.measure_labeled(label, &op, MeasureMode::Sample(&mut *rng))?
                    .sign,
            );
        }
        vertex_outcomes.push(outs);
    }
    if mode == GaugeMode::Circuit {
        cx_layer(&mut st)?;
    }
    let mut edge_outcomes: Vec<Vec<Sign>> = Vec::new();
    for (i, p) in plans.iter().enumerate() {
        let mut outs = Vec::new();
        for e in 0..p.graph.edge_count() {
            let op = PauliOp::single(width, edge_base[i] + e, Pauli::Z);
            let label = if plans.len() > 1 {
                format!("Z{i}.e{e}")
            } else {
                format!("Ze{e}")
            };
            outs.push(
                st.measure_labeled(label, &op, MeasureMode::Sample(&mut *rng))?
                    .sign,
            );
        }
        edge_outcomes.push(outs);
    }
    let drop: Vec<usize> = (n..width).collect();
    st.discard(&drop)?;

    let mut results = Vec::new();
    let mut total_byproduct = PauliOp::identity(n);
    for (i, p) in plans.iter().enumerate() {
        let minus = BitVec::from_bools(
            &edge_outcomes[i]
                .iter()
                .map(|s| s.is_minus())
                .collect::<Vec<_>>(),
        )
        .resized(p.graph.edge_count());
        let correction = byproduct_vertices(p, &minus);
        let mut by = PauliOp::identity(n);
        for v in correction.iter_ones() {
            if let Binding::Qubit(q) = p.graph.vertices()[v] {
                by.set(q, Pauli::X);
            }
        }
        total_byproduct = total_byproduct.mul(&by)?;
        let (frame_l, _) = p.frame();
        let mut sigma = frame_l.sign()?;
        for s in &vertex_outcomes[i] {
            sigma = sigma.times(*s);
        }
        results.push(GaugeOutcome {
            sigma,
            vertex_outcomes: vertex_outcomes[i].clone(),
            edge_outcomes: edge_outcomes[i].clone(),
            correction,
            byproduct: frame.from_frame(&by).unsigned(),
        });
    }
    st.apply_pauli(&total_byproduct)?;
    st.apply_all(&frame.inverse_gates())?;
    Ok((results, st))
}

/// `c'`: vertices whose root path crosses an odd number of `-1` edges.
pub fn byproduct_vertices(plan: &GaugingPlan, minus_edges: &BitVec) -> BitVec {
    let g = &plan.graph;
    let tree = g.spanning_tree();
    let mut c = BitVec::zeros(g.vertex_count());
    for &v in &tree.order {
        if let Some((p, e)) = tree.parent[v] {
            c.set(v, c.get(p) ^ minus_edges.get(e));
        }
    }
    c
}
