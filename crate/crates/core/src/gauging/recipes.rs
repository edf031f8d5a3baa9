//! Constructors for well-known gauging graphs.

use super::frame::basis_change_to_x;
use super::graph::{Binding, GaugingGraph};
use super::hypergraph::Hypergraph;
use super::plan::{GaugingPlan, Routing};
use super::GaugingError;
use crate::codes::{CssCode, StabilizerCode};
use crate::pauli::PauliOp;

/// Measures `la * lb` for two logicals on disjoint qubits of equal weight
/// (typically one per code block of a product code). Rungs join the i-th
/// support qubits of the two logicals; rails join consecutive ones.
pub fn ladder(
    code: &StabilizerCode,
    la: &PauliOp,
    lb: &PauliOp,
) -> Result<GaugingPlan, GaugingError> {
    let sa = la.support();
    let sb = lb.support();
    if sa.len() != sb.len() || sa.is_empty() {
        return Err(GaugingError::Config(format!(
            "ladder needs equal nonzero weights, got {} and {}",
            sa.len(),
            sb.len()
        )));
    }
    if let Some(q) = sa.iter().find(|q| sb.contains(q)) {
        return Err(GaugingError::Config(format!(
            "ladder logicals share qubit {q}"
        )));
    }
    let w = sa.len();
    let vertices = sa.iter().chain(&sb).map(|&q| Binding::Qubit(q)).collect();
    let mut edges: Vec<(usize, usize)> = (0..w).map(|i| (i, w + i)).collect();
    for i in 0..w - 1 {
        edges.push((i, i + 1));
        edges.push((w + i, w + i + 1));
    }
    let graph = GaugingGraph::new(vertices, edges)?;
    let l = la.mul(lb)?;
    let mut plan = GaugingPlan::with_graph(code, &l, graph, Routing::ShortestPath)?;
    plan.select_flux_checks(code)?;
    Ok(plan)
}

/// One dummy pendant per support qubit; the dummies are linked by
/// `dummy_edges` (pairs of dummy indices). Measuring through the dummies
/// mirrors a cat-state readout.
pub fn shor(
    code: &StabilizerCode,
    l: &PauliOp,
    dummy_edges: &[(usize, usize)],
) -> Result<GaugingPlan, GaugingError> {
    let support = l.support();
    let w = support.len();
    let mut vertices: Vec<Binding> = support.iter().map(|&q| Binding::Qubit(q)).collect();
    vertices.extend(std::iter::repeat_n(Binding::Dummy, w));
    let mut edges: Vec<(usize, usize)> = (0..w).map(|i| (i, w + i)).collect();
    for &(a, b) in dummy_edges {
        if a >= w || b >= w {
            return Err(GaugingError::Graph(format!(
                "dummy edge ({a}, {b}) out of range"
            )));
        }
        edges.push((w + a, w + b));
    }
    let graph = GaugingGraph::new(vertices, edges)?;
    let mut plan = GaugingPlan::with_graph(code, l, graph, Routing::ShortestPath)?;
    plan.select_flux_checks(code)?;
    Ok(plan)
}

/// Hypergraph that prepares the CSS code space from `|0...0>` on its code
/// qubits: one dummy vertex per X check, one hyperedge per qubit joining the
/// X checks acting on it. Runs with an empty base code.
pub fn css_init(css: &CssCode) -> Hypergraph {
    let hx = css.hx();
    let vertices = vec![Binding::Dummy; hx.rows()];
    let hyperedges = (0..css.n())
        .map(|q| (0..hx.rows()).filter(|&r| hx.get(r, q)).collect())
        .collect();
    Hypergraph {
        vertices,
        hyperedges,
    }
}

/// Layered hypergraph for measuring `l`: layer 0 holds the support qubits,
/// layers `1..=layers` dummy copies joined vertically, and each dummy layer
/// carries a copy of the checks' Z supports restricted to the logical.
pub fn ckbb(code: &StabilizerCode, l: &PauliOp, layers: usize) -> Result<Hypergraph, GaugingError> {
    if layers == 0 {
        return Err(GaugingError::Config("need at least one dummy layer".into()));
    }
    let (frame_code, fl, _) = basis_change_to_x(code, l)?;
    let support = fl.support();
    let w = support.len();
    let mut vertices: Vec<Binding> = support.iter().map(|&q| Binding::Qubit(q)).collect();
    vertices.extend(std::iter::repeat_n(Binding::Dummy, w * layers));
    let at = |layer: usize, i: usize| layer * w + i;
    let mut hyperedges = Vec::new();
    for layer in 1..=layers {
        for i in 0..w {
            hyperedges.push(vec![at(layer - 1, i), at(layer, i)]);
        }
    }
    let restricted: Vec<Vec<usize>> = frame_code
        .checks()
        .iter()
        .map(|c| {
            (0..w)
                .filter(|&i| c.z_bits().get(support[i]))
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    for layer in 1..=layers {
        for r in &restricted {
            hyperedges.push(r.iter().map(|&i| at(layer, i)).collect());
        }
    }
    Ok(Hypergraph {
        vertices,
        hyperedges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::library;
    use crate::gauging::deform;
    use crate::pauli::pauli;

    #[test]
    fn surface_ladder_merges_two_patches() {
        let a = library::rotated_surface(3).to_stabilizer();
        let code = library::product(&a, &a);
        let la = library::surface_x_logical(3).resized(18);
        let lb = PauliOp::x_type(
            18,
            library::surface_x_logical(3)
                .support()
                .iter()
                .map(|q| q + 9),
        );
        let plan = ladder(&code, &la, &lb).unwrap();
        assert_eq!(plan.graph.edge_count(), 7);
        assert_eq!(plan.cycles.len(), 2);
        let d = deform(&code, &plan).unwrap();
        assert_eq!(d.code().k(), 1);
    }

    #[test]
    fn ladder_rejects_shared_qubits() {
        let code = library::four_two_two();
        assert!(ladder(&code, &pauli("XXII"), &pauli("XXII")).is_err());
    }

    #[test]
    fn shor_path_on_two_dummies() {
        let code = library::four_two_two();
        let plan = shor(&code, &pauli("XXII"), &[(0, 1)]).unwrap();
        assert_eq!(plan.graph.dummy_count(), 2);
        assert_eq!(plan.graph.edge_count(), 3);
        assert!(plan.cycles.is_empty());
        let d = deform(&code, &plan).unwrap();
        assert_eq!(d.code().k(), 1);
    }

    #[test]
    fn css_init_hypergraph_shape() {
        let css = library::rotated_surface(3);
        let hg = css_init(&css);
        assert_eq!(hg.vertices.len(), css.hx().rows());
        assert_eq!(hg.hyperedges.len(), 9);
    }
}
