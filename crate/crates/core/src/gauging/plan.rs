use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::frame::{basis_change_to_x, BasisChange};
use super::graph::{Binding, GaugingGraph};
use super::{deform, DeformedCode, GaugingError};
use crate::codes::{distance_upper, StabilizerCode};
use crate::f2::{BitMatrix, BitVec, RowSpace};
use crate::pauli::PauliOp;

/// How deformation paths `gamma_j` are chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Routing {
    /// Each consecutive pair of a check's restricted Z support is joined by a
    /// direct edge.
    #[default]
    MatchedEdges,
    /// Each pair is joined by a BFS shortest path.
    ShortestPath,
}

/// Graph, deformation paths and flux cycles for measuring one logical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugingPlan {
    /// The logical as requested, in the original frame.
    pub logical: PauliOp,
    pub graph: GaugingGraph,
    /// Base checks whose Z support meets the logical, in check order.
    pub checks: Vec<usize>,
    /// `gamma_j` for each entry of `checks`, as edge sets.
    pub paths: Vec<BitVec>,
    /// Retained flux cycles.
    pub cycles: Vec<BitVec>,
    pub routing: Routing,
}

/// Restricted Z support of each check meeting `l` (X frame), as vertex lists.
fn restricted_supports(
    code: &StabilizerCode,
    l: &PauliOp,
    graph: &GaugingGraph,
) -> Result<Vec<(usize, Vec<usize>)>, GaugingError> {
    let mut out = Vec::new();
    for (j, c) in code.checks().iter().enumerate() {
        let overlap: Vec<usize> = c.z_bits().and(l.x_bits()).iter_ones().collect();
        if overlap.is_empty() {
            continue;
        }
        if overlap.len() % 2 == 1 {
            return Err(GaugingError::OddSupport(code.labels()[j].clone()));
        }
        let vs = overlap
            .iter()
            .map(|&q| {
                graph
                    .vertex_of_qubit(q)
                    .ok_or_else(|| GaugingError::Graph(format!("qubit {q} has no vertex")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push((j, vs));
    }
    Ok(out)
}

impl GaugingPlan {
    /// Graph built from a perfect matching of each check's restricted Z
    /// support: consecutive pairs in qubit order, identical pairs sharing an
    /// edge.
    pub fn from_matching(code: &StabilizerCode, logical: &PauliOp) -> Result<Self, GaugingError> {
        let (frame_code, l, _) = basis_change_to_x(code, logical)?;
        let support = l.support();
        let mut graph = GaugingGraph::on_qubits(&support);
        let mut checks = Vec::new();
        let mut paths = Vec::new();
        for (j, vs) in restricted_supports(&frame_code, &l, &graph)? {
            let mut path = Vec::new();
            for pair in vs.chunks(2) {
                let e = match graph.edges_between(pair[0], pair[1]).first() {
                    Some(&e) => e,
                    None => graph.add_edge(pair[0], pair[1])?,
                };
                path.push(e);
            }
            checks.push(j);
            paths.push(path);
        }
        let e = graph.edge_count();
        let paths = paths
            .into_iter()
            .map(|p| BitVec::from_indices(e, p))
            .collect();
        Ok(GaugingPlan {
            logical: logical.clone(),
            graph,
            checks,
            paths,
            cycles: Vec::new(),
            routing: Routing::MatchedEdges,
        })
    }

    /// Plan on a caller-supplied graph, with paths routed per `routing`.
    pub fn with_graph(
        code: &StabilizerCode,
        logical: &PauliOp,
        graph: GaugingGraph,
        routing: Routing,
    ) -> Result<Self, GaugingError> {
        let (_, l, _) = basis_change_to_x(code, logical)?;
        for q in l.support() {
            if graph.vertex_of_qubit(q).is_none() {
                return Err(GaugingError::Graph(format!(
                    "support qubit {q} has no vertex"
                )));
            }
        }
        for b in graph.vertices() {
            if let Binding::Qubit(q) = b {
                if !l.x_bits().get(*q) {
                    return Err(GaugingError::Graph(format!(
                        "vertex bound to qubit {q} outside the support"
                    )));
                }
            }
        }
        let mut plan = GaugingPlan {
            logical: logical.clone(),
            graph,
            checks: Vec::new(),
            paths: Vec::new(),
            cycles: Vec::new(),
            routing,
        };
        plan.route(code)?;
        Ok(plan)
    }

    /// Recomputes `checks` and `paths` on the current graph.
    pub fn route(&mut self, code: &StabilizerCode) -> Result<(), GaugingError> {
        let (frame_code, l, _) = basis_change_to_x(code, &self.logical)?;
        let e = self.graph.edge_count();
        self.checks.clear();
        self.paths.clear();
        for (j, vs) in restricted_supports(&frame_code, &l, &self.graph)? {
            let mut path = BitVec::zeros(e);
            for pair in vs.chunks(2) {
                let seg = match self.routing {
                    Routing::MatchedEdges => {
                        let es = self.graph.edges_between(pair[0], pair[1]);
                        let &first = es.first().ok_or_else(|| {
                            GaugingError::Graph(format!(
                                "no edge between vertices {} and {} for check {}",
                                pair[0],
                                pair[1],
                                code.labels()[j]
                            ))
                        })?;
                        BitVec::from_indices(e, [first])
                    }
                    Routing::ShortestPath => self
                        .graph
                        .shortest_path(pair[0], pair[1])
                        .ok_or(GaugingError::Disconnected(self.graph.components().len()))?,
                };
                path.xor_assign(&seg);
            }
            self.checks.push(j);
            self.paths.push(path);
        }
        Ok(())
    }

    /// Logical and basis change in the X frame.
    pub fn frame(&self) -> (PauliOp, BasisChange) {
        let change = BasisChange::for_logical(&self.logical);
        (change.to_frame(&self.logical), change)
    }

    /// Appends edges given by vertex pairs. Existing paths are widened with
    /// zero columns and existing cycles are dropped.
    pub fn add_edges(&mut self, edges: &[(usize, usize)]) -> Result<(), GaugingError> {
        for &(u, v) in edges {
            self.graph.add_edge(u, v)?;
        }
        let e = self.graph.edge_count();
        for p in &mut self.paths {
            *p = p.resized(e);
        }
        self.cycles.clear();
        Ok(())
    }

    /// Appends edges given by the qubits the endpoints are bound to.
    pub fn add_qubit_edges(&mut self, edges: &[(usize, usize)]) -> Result<(), GaugingError> {
        let pairs = edges
            .iter()
            .map(|&(a, b)| {
                let va = self.graph.vertex_of_qubit(a);
                let vb = self.graph.vertex_of_qubit(b);
                match (va, vb) {
                    (Some(u), Some(v)) => Ok((u, v)),
                    _ => Err(GaugingError::Graph(format!(
                        "edge ({a}, {b}) leaves the support"
                    ))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.add_edges(&pairs)
    }

    /// M: one row per entry of `checks`.
    pub fn matching_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.graph.edge_count(), self.paths.clone()).expect("edge-width paths")
    }

    /// N: one row per retained cycle.
    pub fn cycle_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.graph.edge_count(), self.cycles.clone())
            .expect("edge-width cycles")
    }

    /// `|E| - |V| + 1`.
    pub fn full_cycle_count(&self) -> usize {
        (self.graph.edge_count() + 1).saturating_sub(self.graph.vertex_count())
    }

    /// Maximum path length `kappa`.
    pub fn max_path_length(&self) -> usize {
        self.paths.iter().map(BitVec::weight).max().unwrap_or(0)
    }

    /// Sets retained cycles after checking each is a cycle of the graph.
    pub fn set_cycles(&mut self, cycles: Vec<BitVec>) -> Result<(), GaugingError> {
        let e = self.graph.edge_count();
        for (i, c) in cycles.iter().enumerate() {
            if c.len() != e || !self.graph.boundary_of(c).is_zero() {
                return Err(GaugingError::Graph(format!("row {i} is not a cycle")));
            }
        }
        self.cycles = cycles;
        Ok(())
    }

    /// Cycles of the form `sum_j u_j gamma_j` for relations `u` among the
    /// checks; their flux operators are already generated by the deformed
    /// checks.
    pub fn implied_cycles(&self, code: &StabilizerCode) -> Vec<BitVec> {
        let relations = code.check_matrix().row_nullspace();
        let e = self.graph.edge_count();
        relations
            .iter_rows()
            .map(|u| {
                let mut c = BitVec::zeros(e);
                for (i, &j) in self.checks.iter().enumerate() {
                    if u.get(j) {
                        c.xor_assign(&self.paths[i]);
                    }
                }
                c
            })
            .filter(|c| !c.is_zero())
            .collect()
    }

    /// Retains `(|E| - |V| + 1) - dim U` cycles greedily by ascending weight,
    /// each independent of the implied cycles and of those already kept. The
    /// pool is the weight-reduced cycle basis plus all simple cycles of
    /// length at most `max_len`.
    pub fn select_flux_checks_with(
        &mut self,
        code: &StabilizerCode,
        max_len: usize,
    ) -> Result<(), GaugingError> {
        let e = self.graph.edge_count();
        let basis = self.graph.cycle_basis()?;
        let target = self.full_cycle_count() - redundant_cycle_dim(code, &self.logical)?;
        let mut pool: Vec<BitVec> = self.graph.simple_cycles(max_len);
        pool.extend(basis.into_rows());
        pool.sort_by_key(BitVec::weight);
        let mut span = RowSpace::new(e);
        for c in self.implied_cycles(code) {
            span.insert(c);
        }
        let mut kept = Vec::new();
        for c in pool {
            if kept.len() == target {
                break;
            }
            if span.insert(c.clone()) {
                kept.push(c);
            }
        }
        if kept.len() != target {
            return Err(GaugingError::FluxShortfall {
                wanted: target,
                found: kept.len(),
            });
        }
        self.cycles = kept;
        Ok(())
    }

    pub fn select_flux_checks(&mut self, code: &StabilizerCode) -> Result<(), GaugingError> {
        self.select_flux_checks_with(code, 6)
    }

    /// Serializable form.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .graph
            .vertices()
            .iter()
            .map(|b| match b {
                Binding::Qubit(q) => serde_json::json!(q),
                Binding::Dummy => serde_json::json!("dummy"),
            })
            .collect();
        let ones = |v: &BitVec| v.iter_ones().collect::<Vec<_>>();
        let paths: serde_json::Map<String, serde_json::Value> = self
            .checks
            .iter()
            .zip(&self.paths)
            .map(|(j, p)| (j.to_string(), serde_json::json!(ones(p))))
            .collect();
        serde_json::json!({
            "logical": self.logical.to_string(),
            "vertices": vertices,
            "root": self.graph.root(),
            "edges": self.graph.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            "cycles": self.cycles.iter().map(ones).collect::<Vec<_>>(),
            "paths": paths,
            "routing": match self.routing { Routing::MatchedEdges => "matched", Routing::ShortestPath => "shortest" },
        })
    }

    /// Inverse of [`to_json`](Self::to_json); paths are re-derived when absent.
    pub fn from_json(
        code: &StabilizerCode,
        value: &serde_json::Value,
    ) -> Result<Self, GaugingError> {
        let bad = |what: &str| GaugingError::Config(format!("plan JSON: {what}"));
        let logical: PauliOp = value["logical"]
            .as_str()
            .ok_or_else(|| bad("missing logical"))?
            .parse()
            .map_err(|_| bad("bad logical"))?;
        let vertices = value["vertices"]
            .as_array()
            .ok_or_else(|| bad("missing vertices"))?
            .iter()
            .map(|v| match (v.as_u64(), v.as_str()) {
                (Some(q), _) => Ok(Binding::Qubit(q as usize)),
                (_, Some("dummy")) => Ok(Binding::Dummy),
                _ => Err(bad("bad vertex")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let pair = |v: &serde_json::Value| -> Result<(usize, usize), GaugingError> {
            let a = v.as_array().ok_or_else(|| bad("bad edge"))?;
            match (
                a.first().and_then(|x| x.as_u64()),
                a.get(1).and_then(|x| x.as_u64()),
            ) {
                (Some(u), Some(w)) if a.len() == 2 => Ok((u as usize, w as usize)),
                _ => Err(bad("bad edge")),
            }
        };
        let edges = value["edges"]
            .as_array()
            .ok_or_else(|| bad("missing edges"))?
            .iter()
            .map(pair)
            .collect::<Result<Vec<_>, _>>()?;
        let mut graph = GaugingGraph::new(vertices, edges)?;
        if let Some(r) = value.get("root").and_then(|r| r.as_u64()) {
            graph.set_root(r as usize)?;
        }
        let routing = match value.get("routing").and_then(|r| r.as_str()) {
            Some("shortest") => Routing::ShortestPath,
            _ => Routing::MatchedEdges,
        };
        let e = graph.edge_count();
        let idx_list = |v: &serde_json::Value| -> Result<BitVec, GaugingError> {
            let a = v.as_array().ok_or_else(|| bad("bad index list"))?;
            let mut out = BitVec::zeros(e);
            for x in a {
                let i = x.as_u64().ok_or_else(|| bad("bad index"))? as usize;
                if i >= e {
                    return Err(bad("edge index out of range"));
                }
                out.flip(i);
            }
            Ok(out)
        };
        let mut plan = GaugingPlan::with_graph(code, &logical, graph, routing)?;
        if let Some(paths) = value.get("paths").and_then(|p| p.as_object()) {
            if !paths.is_empty() {
                let mut checks = Vec::new();
                let mut rows = Vec::new();
                let mut entries: Vec<(usize, BitVec)> = paths
                    .iter()
                    .map(|(k, v)| {
                        Ok((
                            k.parse::<usize>().map_err(|_| bad("bad path key"))?,
                            idx_list(v)?,
                        ))
                    })
                    .collect::<Result<_, GaugingError>>()?;
                entries.sort_by_key(|(k, _)| *k);
                for (k, v) in entries {
                    checks.push(k);
                    rows.push(v);
                }
                if checks != plan.checks {
                    return Err(bad("paths do not cover the overlapping checks"));
                }
                plan.paths = rows;
            }
        }
        if let Some(cycles) = value.get("cycles").and_then(|c| c.as_array()) {
            plan.set_cycles(cycles.iter().map(idx_list).collect::<Result<_, _>>()?)?;
        }
        Ok(plan)
    }
}

/// `dim U = row_nullity(S) - row_nullity(C)`: relations among all checks
/// minus relations among the checks that do not meet the logical's support
/// in their Z part.
pub fn redundant_cycle_dim(
    code: &StabilizerCode,
    logical: &PauliOp,
) -> Result<usize, GaugingError> {
    let (frame_code, l, _) = basis_change_to_x(code, logical)?;
    let all = frame_code.check_matrix();
    let untouched: Vec<usize> = (0..frame_code.checks().len())
        .filter(|&j| frame_code.checks()[j].z_bits().and(l.x_bits()).is_zero())
        .collect();
    let c = all.select_rows(&untouched);
    Ok(all.row_nullity() - c.row_nullity())
}

/// Settings for randomized expander augmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomEdges {
    /// Edges added per trial before connecting leftover components.
    pub count: usize,
    /// No endpoint may exceed this degree.
    pub degree_cap: usize,
    pub budget: usize,
    pub seed: u64,
    /// Accept when the upper bound is at least this.
    pub target_distance: usize,
    pub isd_trials: usize,
}

/// Outcome of a randomized augmentation trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub added: Vec<(usize, usize)>,
    pub distance_upper: Option<usize>,
}

/// Adds random edges (uniform vertex pairs, respecting the degree cap and
/// avoiding existing adjacencies) until a trial's deformed code passes
/// `tester`. Trial `t` draws from ChaCha stream `t` of the seed.
pub fn add_random_edges_with<F>(
    plan: &GaugingPlan,
    code: &StabilizerCode,
    cfg: &RandomEdges,
    mut tester: F,
) -> Result<(GaugingPlan, TrialReport), GaugingError>
where
    F: FnMut(&DeformedCode) -> Option<usize>,
{
    let mut best: Option<TrialReport> = None;
    for trial in 0..cfg.budget {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial as u64);
        let mut candidate = plan.clone();
        let added = random_augment(&mut candidate.graph, cfg.count, cfg.degree_cap, &mut rng);
        candidate.add_edges(&[])?;
        if candidate.routing == Routing::ShortestPath {
            candidate.route(code)?;
        }
        candidate.select_flux_checks(code)?;
        let dc = deform(code, &candidate)?;
        let d = tester(&dc);
        let report = TrialReport {
            trial,
            added,
            distance_upper: d,
        };
        if d.is_some_and(|d| d >= cfg.target_distance) {
            return Ok((candidate, report));
        }
        if best.as_ref().is_none_or(|b| d > b.distance_upper) {
            best = Some(report);
        }
    }
    Err(GaugingError::BudgetExhausted(Box::new(best)))
}

/// [`add_random_edges_with`] using [`distance_upper`] as the tester.
pub fn add_random_edges(
    plan: &GaugingPlan,
    code: &StabilizerCode,
    cfg: &RandomEdges,
) -> Result<(GaugingPlan, TrialReport), GaugingError> {
    add_random_edges_with(plan, code, cfg, |dc| {
        distance_upper(dc.code(), cfg.isd_trials, cfg.seed).map(|b| b.weight)
    })
}

fn random_augment(
    graph: &mut GaugingGraph,
    count: usize,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize)> {
    let nv = graph.vertex_count();
    let mut added = Vec::new();
    if nv < 2 {
        return added;
    }
    let mut attempts = 0;
    while added.len() < count && attempts < 100 * (count + 1) {
        attempts += 1;
        let u = rng.gen_range(0..nv);
        let v = rng.gen_range(0..nv);
        if u == v
            || graph.degree(u) >= cap
            || graph.degree(v) >= cap
            || !graph.edges_between(u, v).is_empty()
        {
            continue;
        }
        graph.add_edge(u, v).expect("valid vertices");
        added.push((u.min(v), u.max(v)));
    }
    loop {
        let comps = graph.components();
        if comps.len() <= 1 {
            break;
        }
        let a = comps[0][rng.gen_range(0..comps[0].len())];
        let rest: Vec<usize> = comps[1..].iter().flatten().copied().collect();
        let b = rest[rng.gen_range(0..rest.len())];
        graph.add_edge(a, b).expect("valid vertices");
        added.push((a.min(b), a.max(b)));
    }
    added
}
