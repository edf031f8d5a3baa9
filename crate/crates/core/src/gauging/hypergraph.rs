use rand::RngCore;

use super::graph::{Binding, GaugingGraph};
use super::GaugingError;
use crate::codes::StabilizerCode;
use crate::f2::{BitMatrix, BitVec};
use crate::pauli::{Pauli, PauliOp, Sign};
use crate::tableau::{InitState, MeasureMode, Tableau};

/// Vertices with hyperedges given as vertex sets; each hyperedge becomes a
/// qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: Vec<Binding>,
    pub hyperedges: Vec<Vec<usize>>,
}

impl From<&GaugingGraph> for Hypergraph {
    fn from(g: &GaugingGraph) -> Self {
        Hypergraph {
            vertices: g.vertices().to_vec(),
            hyperedges: g.edges().iter().map(|&(u, v)| vec![u, v]).collect(),
        }
    }
}

impl Hypergraph {
    /// Vertex-by-hyperedge incidence.
    pub fn incidence(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.vertices.len(), self.hyperedges.len());
        for (h, vs) in self.hyperedges.iter().enumerate() {
            for &v in vs {
                let cur = m.get(v, h);
                m.set(v, h, !cur);
            }
        }
        m
    }

    /// Measured operators: `X` on the bound qubits of each vertex set in the
    /// kernel of the incidence transpose.
    pub fn measured_sets(&self) -> BitMatrix {
        self.incidence().row_nullspace()
    }

    fn validate(&self) -> Result<(), GaugingError> {
        let nv = self.vertices.len();
        for (h, vs) in self.hyperedges.iter().enumerate() {
            if vs.is_empty() || vs.iter().any(|&v| v >= nv) {
                return Err(GaugingError::Graph(format!(
                    "hyperedge {h} is empty or out of range"
                )));
            }
        }
        Ok(())
    }
}

/// Code produced by hypergraph gauging: base qubits then one qubit per
/// hyperedge.
#[derive(Clone, Debug)]
pub struct HyperDeformed {
    pub code: StabilizerCode,
    pub n_base: usize,
    pub gauss: Vec<usize>,
    pub flux: Vec<usize>,
    pub deformed: Vec<usize>,
    pub untouched: Vec<usize>,
    /// Hyperedge set `gamma_j` per deformed check, keyed by base index.
    pub paths: Vec<(usize, BitVec)>,
}

/// Deforms `code` (already in the X frame of the measured group) by a
/// hypergraph: `A_v = X_v prod_{h ∋ v} X_h`, fluxes from the kernel of the
/// incidence, and each check's restricted Z support lifted through a
/// solution `gamma` of `incidence * gamma = z`.
pub fn hypergraph_deform(
    code: &StabilizerCode,
    hg: &Hypergraph,
) -> Result<HyperDeformed, GaugingError> {
    hg.validate()?;
    let n = code.n();
    let nh = hg.hyperedges.len();
    let total = n + nh;
    let inc = hg.incidence();
    let mut checks = Vec::new();
    let mut labels = Vec::new();
    let mut gauss = Vec::new();
    for (v, b) in hg.vertices.iter().enumerate() {
        let mut op = PauliOp::identity(total);
        if let Binding::Qubit(q) = *b {
            if q >= n {
                return Err(GaugingError::Graph(format!(
                    "vertex {v} bound to qubit {q} of {n}"
                )));
            }
            op.set(q, Pauli::X);
        }
        for h in inc.row(v).iter_ones() {
            op.set(n + h, Pauli::X);
        }
        gauss.push(checks.len());
        checks.push(op);
        labels.push(format!("A{v}"));
    }
    let mut flux = Vec::new();
    for (p, k) in inc.nullspace().iter_rows().enumerate() {
        flux.push(checks.len());
        checks.push(PauliOp::z_type(total, k.iter_ones().map(|h| n + h)));
        labels.push(format!("B{p}"));
    }
    let mut deformed = Vec::new();
    let mut untouched = Vec::new();
    let mut paths = Vec::new();
    for (j, s) in code.checks().iter().enumerate() {
        let mut z = BitVec::zeros(hg.vertices.len());
        for (v, b) in hg.vertices.iter().enumerate() {
            if let Binding::Qubit(q) = *b {
                if s.z_bits().get(q) {
                    z.set(v, true);
                }
            }
        }
        let mut op = s.resized(total);
        if z.is_zero() {
            untouched.push(checks.len());
            labels.push(code.labels()[j].clone());
        } else {
            let gamma = inc.solve(&z)?.ok_or_else(|| {
                GaugingError::Anticommutes(s.to_string(), "the hypergraph Gauss laws".into())
            })?;
            op = op.mul(&PauliOp::z_type(total, gamma.iter_ones().map(|h| n + h)))?;
            deformed.push(checks.len());
            labels.push(format!("{}~", code.labels()[j]));
            paths.push((j, gamma));
        }
        checks.push(op);
    }
    let code = StabilizerCode::new(total, checks, Some(labels))
        .map_err(|e| GaugingError::Invariant(format!("hypergraph deformation: {e}")))?;
    Ok(HyperDeformed {
        code,
        n_base: n,
        gauss,
        flux,
        deformed,
        untouched,
        paths,
    })
}

/// Outcome of a hypergraph gauging measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperOutcome {
    pub vertex_outcomes: Vec<Sign>,
    /// Present when the hyperedge qubits were measured out.
    pub edge_outcomes: Option<Vec<Sign>>,
}

/// Initializes hyperedge qubits in `|0>`, measures every `A_v` (dummy
/// vertices as `|+>` ancillas, discarded afterwards) and, if `ungauge`,
/// reads out and discards the hyperedge qubits and applies the byproduct.
/// Without ungauging the hyperedge qubits stay, after the base qubits.
pub fn hypergraph_measure(
    t: &Tableau,
    hg: &Hypergraph,
    ungauge: bool,
    rng: &mut dyn RngCore,
) -> Result<(HyperOutcome, Tableau), GaugingError> {
    hg.validate()?;
    let n = t.n();
    let nh = hg.hyperedges.len();
    let inc = hg.incidence();
    let mut st = t.clone();
    st.extend(nh, InitState::Zero);
    let dummies = hg.vertices.iter().filter(|b| **b == Binding::Dummy).count();
    st.extend(dummies, InitState::Plus);
    let width = st.n();
    let mut next = n + nh;
    let mut vertex_outcomes = Vec::new();
    for (v, b) in hg.vertices.iter().enumerate() {
        let q = match *b {
            Binding::Qubit(q) => q,
            Binding::Dummy => {
                next += 1;
                next - 1
            }
        };
        let mut op = PauliOp::single(width, q, Pauli::X);
        for h in inc.row(v).iter_ones() {
            op.set(n + h, Pauli::X);
        }
        vertex_outcomes.push(
            st.measure_labeled(format!("A{v}"), &op, MeasureMode::Sample(&mut *rng))?
                .sign,
        );
    }
    st.discard(&(n + nh..width).collect::<Vec<_>>())?;
    if !ungauge {
        return Ok((
            HyperOutcome {
                vertex_outcomes,
                edge_outcomes: None,
            },
            st,
        ));
    }
    let mut edge_outcomes = Vec::new();
    for h in 0..nh {
        let op = PauliOp::single(n + nh, n + h, Pauli::Z);
        edge_outcomes.push(
            st.measure_labeled(format!("Zh{h}"), &op, MeasureMode::Sample(&mut *rng))?
                .sign,
        );
    }
    st.discard(&(n..n + nh).collect::<Vec<_>>())?;
    let omega = BitVec::from_bools(
        &edge_outcomes
            .iter()
            .map(|s| s.is_minus())
            .collect::<Vec<_>>(),
    )
    .resized(nh);
    let c = inc
        .transpose()
        .solve(&omega)?
        .ok_or_else(|| GaugingError::Invariant("edge outcomes are not a coboundary".into()))?;
    let mut by = PauliOp::identity(n);
    for v in c.iter_ones() {
        if let Binding::Qubit(q) = hg.vertices[v] {
            by.set(q, Pauli::X);
        }
    }
    st.apply_pauli(&by)?;
    Ok((
        HyperOutcome {
            vertex_outcomes,
            edge_outcomes: Some(edge_outcomes),
        },
        st,
    ))
}
