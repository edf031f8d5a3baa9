use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cellulate::{cellulate_with, Cellulation, FaceShape};
use super::SparsifyError;
use crate::codes::StabilizerCode;
use crate::f2::BitVec;
use crate::gauging::{deform, Binding, DeformedCode, GaugingGraph, GaugingPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecongestConfig {
    /// Most faces any copy of a base edge may lie on.
    pub cap: usize,
    pub shape: FaceShape,
}

impl Default for DecongestConfig {
    fn default() -> Self {
        DecongestConfig {
            cap: 3,
            shape: FaceShape::Triangles,
        }
    }
}

/// Copies `0..=R` of a base graph, joined by vertical edges between copies
/// of the same vertex, with each retained cycle filled in on one layer
/// `>= 1`.
///
/// Edge layout of [`graph`](Self::graph): copies of the base edges layer by
/// layer (so layer 0 keeps the base indices), then vertical edges between
/// layers `l` and `l + 1` for each `l`, then chords.
#[derive(Clone, Debug)]
pub struct LayeredGraph {
    pub base: GaugingGraph,
    pub layers: usize,
    pub config: DecongestConfig,
    /// Layer holding each base cycle (0 only when `layers == 0`).
    pub assignment: Vec<usize>,
    /// `(layer, u, v)` chord endpoints as base vertices.
    pub chords: Vec<(usize, usize, usize)>,
    pub graph: GaugingGraph,
    /// Flux generators: squares between layers, then the faces.
    pub flux: Vec<BitVec>,
    pub squares: usize,
}

/// One simple piece of a cycle: vertices in order, edge `i` between vertex
/// `i` and `i + 1 mod N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Splits an even-degree edge set into edge-disjoint simple loops.
pub fn split_loops(graph: &GaugingGraph, cycle: &BitVec) -> Result<Vec<Loop>, SparsifyError> {
    let nv = graph.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in cycle.iter_ones() {
        let (u, v) = graph.edges()[e];
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut used = vec![false; graph.edge_count()];
    let mut out = Vec::new();
    for e0 in cycle.iter_ones() {
        if used[e0] {
            continue;
        }
        let start = graph.edges()[e0].0;
        let mut path_v = vec![start];
        let mut path_e: Vec<usize> = Vec::new();
        let mut pos = vec![usize::MAX; nv];
        pos[start] = 0;
        let mut cur = start;
        loop {
            let Some(&e) = incident[cur].iter().find(|&&e| !used[e]) else {
                if path_e.is_empty() {
                    break;
                }
                return Err(SparsifyError::Invalid(
                    "edge set has odd-degree vertices".into(),
                ));
            };
            used[e] = true;
            let (a, b) = graph.edges()[e];
            let next = if a == cur { b } else { a };
            if pos[next] != usize::MAX {
                let at = pos[next];
                let mut edges: Vec<usize> = path_e.split_off(at);
                edges.push(e);
                let vertices: Vec<usize> = path_v.split_off(at);
                for &v in &vertices {
                    pos[v] = usize::MAX;
                }
                path_v.push(next);
                pos[next] = at;
                out.push(Loop { vertices, edges });
                cur = next;
            } else {
                pos[next] = path_v.len();
                path_v.push(next);
                path_e.push(e);
                cur = next;
            }
        }
    }
    Ok(out)
}

impl LayeredGraph {
    /// Index of the copy of base vertex `v` on `layer`.
    pub fn vertex(&self, layer: usize, v: usize) -> usize {
        layer * self.base.vertex_count() + v
    }

    pub fn edge(&self, layer: usize, e: usize) -> usize {
        layer * self.base.edge_count() + e
    }

    /// Vertical edge from `(layer, v)` to `(layer + 1, v)`.
    pub fn vertical(&self, layer: usize, v: usize) -> usize {
        (self.layers + 1) * self.base.edge_count() + layer * self.base.vertex_count() + v
    }

    /// Greedy decongestion of `cycles` on `base`.
    pub fn build(
        base: &GaugingGraph,
        cycles: &[BitVec],
        config: DecongestConfig,
    ) -> Result<Self, SparsifyError> {
        if config.cap == 0 {
            return Err(SparsifyError::Invalid("cycle cap must be positive".into()));
        }
        let pieces: Vec<Vec<Loop>> = cycles
            .iter()
            .map(|c| split_loops(base, c))
            .collect::<Result<_, _>>()?;
        let ne = base.edge_count();
        let mut load0 = vec![0usize; ne];
        for c in cycles {
            for e in c.iter_ones() {
                load0[e] += 1;
            }
        }
        let sparse =
            cycles.iter().all(|c| c.weight() <= 4) && load0.iter().all(|&l| l <= config.cap);
        if sparse {
            return Ok(LayeredGraph {
                base: base.clone(),
                layers: 0,
                config,
                assignment: vec![0; cycles.len()],
                chords: Vec::new(),
                graph: base.clone(),
                flux: cycles.to_vec(),
                squares: 0,
            });
        }
        // Lowest layer where every edge of the cycle is still under the cap.
        let mut load: Vec<Vec<usize>> = Vec::new();
        let mut assignment = Vec::new();
        for c in cycles {
            let edges: Vec<usize> = c.iter_ones().collect();
            let layer = (0..)
                .find(|&l| l >= load.len() || edges.iter().all(|&e| load[l][e] < config.cap))
                .expect("unbounded search");
            if layer == load.len() {
                load.push(vec![0; ne]);
            }
            for &e in &edges {
                load[layer][e] += 1;
            }
            assignment.push(layer + 1);
        }
        let layers = load.len();
        let mut out = LayeredGraph {
            base: base.clone(),
            layers,
            config,
            assignment,
            chords: Vec::new(),
            graph: base.clone(),
            flux: Vec::new(),
            squares: 0,
        };
        out.assemble(&pieces)?;
        Ok(out)
    }

    fn assemble(&mut self, pieces: &[Vec<Loop>]) -> Result<(), SparsifyError> {
        let nv = self.base.vertex_count();
        let ne = self.base.edge_count();
        let r = self.layers;
        let mut vertices = self.base.vertices().to_vec();
        vertices.extend(std::iter::repeat_n(Binding::Dummy, nv * r));
        let mut edges = Vec::new();
        for l in 0..=r {
            for &(u, v) in self.base.edges() {
                edges.push((l * nv + u, l * nv + v));
            }
        }
        for l in 0..r {
            for v in 0..nv {
                edges.push((l * nv + v, (l + 1) * nv + v));
            }
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for (c, loops) in pieces.iter().enumerate() {
            let l = self.assignment[c];
            for lp in loops {
                if lp.edges.len() < 3 {
                    faces.push(lp.edges.iter().map(|&e| l * ne + e).collect());
                    continue;
                }
                let cell: Cellulation = cellulate_with(lp.edges.len(), self.config.shape)?;
                let first_chord = edges.len();
                for &(a, b) in &cell.chords {
                    let (u, v) = (lp.vertices[a], lp.vertices[b]);
                    self.chords.push((l, u, v));
                    edges.push((l * nv + u, l * nv + v));
                }
                for f in &cell.faces {
                    let face = Cellulation::sides(f)
                        .map(|(a, b)| {
                            if cell.on_cycle(a, b) {
                                l * ne + lp.edges[cell.cycle_edge(a, b)]
                            } else {
                                first_chord + cell.chord_index(a, b).expect("face side is a chord")
                            }
                        })
                        .collect();
                    faces.push(face);
                }
            }
        }
        let mut graph = GaugingGraph::new(vertices, edges)
            .map_err(|e| SparsifyError::Invalid(e.to_string()))?;
        graph
            .set_root(self.base.root())
            .map_err(|e| SparsifyError::Invalid(e.to_string()))?;
        let total = graph.edge_count();
        self.graph = graph;
        let mut flux = Vec::new();
        for l in 0..r {
            for (e, &(u, v)) in self.base.edges().iter().enumerate() {
                let square = [
                    self.edge(l, e),
                    self.edge(l + 1, e),
                    self.vertical(l, u),
                    self.vertical(l, v),
                ];
                flux.push(BitVec::from_indices(total, square));
            }
        }
        self.squares = flux.len();
        flux.extend(faces.into_iter().map(|f| BitVec::from_indices(total, f)));
        self.flux = flux;
        Ok(())
    }

    /// Faces (everything after the squares).
    pub fn faces(&self) -> &[BitVec] {
        &self.flux[self.squares..]
    }

    /// Faces on copy `layer` of base edge `e`; must stay within the cap.
    pub fn participation(&self, layer: usize, e: usize) -> usize {
        let id = self.edge(layer, e);
        self.faces().iter().filter(|f| f.get(id)).count()
    }

    pub fn max_flux_weight(&self) -> usize {
        self.flux.iter().map(BitVec::weight).max().unwrap_or(0)
    }

    /// The base plan moved onto the layered graph: same logical and paths
    /// (which live in layer 0), flux checks replaced.
    pub fn plan(&self, base: &GaugingPlan) -> Result<GaugingPlan, SparsifyError> {
        if base.graph != self.base {
            return Err(SparsifyError::Invalid(
                "plan graph differs from the layered base".into(),
            ));
        }
        let total = self.graph.edge_count();
        let mut plan = base.clone();
        plan.graph = self.graph.clone();
        plan.paths = base.paths.iter().map(|p| p.resized(total)).collect();
        plan.set_cycles(self.flux.clone())
            .map_err(|e| SparsifyError::Invalid(e.to_string()))?;
        Ok(plan)
    }

    /// Plan JSON with a `layers` block.
    pub fn to_json(&self, base: &GaugingPlan) -> Result<serde_json::Value, SparsifyError> {
        let mut value = self.plan(base)?.to_json();
        value["layers"] = json!({
            "count": self.layers,
            "cap": self.config.cap,
            "shape": self.config.shape,
            "assignment": self.assignment,
            "chords": self.chords,
            "squares": self.squares,
        });
        Ok(value)
    }
}

pub fn decongest(
    plan: &GaugingPlan,
    config: DecongestConfig,
) -> Result<LayeredGraph, SparsifyError> {
    LayeredGraph::build(&plan.graph, &plan.cycles, config)
}

/// Deformed code of the layered plan.
pub fn sparsified_deform(
    code: &StabilizerCode,
    plan: &GaugingPlan,
    layered: &LayeredGraph,
) -> Result<DeformedCode, SparsifyError> {
    Ok(deform(code, &layered.plan(plan)?)?)
}

/// Uniform simple connected 3-regular graph on `w` vertices (configuration
/// model with rejection).
pub fn random_cubic(w: usize, seed: u64) -> Result<GaugingGraph, SparsifyError> {
    if w < 4 || w % 2 == 1 {
        return Err(SparsifyError::Invalid(format!(
            "no cubic graph on {w} vertices"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut stubs: Vec<usize> = (0..3 * w).map(|i| i / 3).collect();
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|p| p[0] == p[1]) {
            continue;
        }
        let g = GaugingGraph::new(vec![Binding::Dummy; w], edges)
            .map_err(|e| SparsifyError::Invalid(e.to_string()))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(SparsifyError::Invalid("rejection sampling failed".into()))
}
