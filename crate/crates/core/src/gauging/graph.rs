use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::GaugingError;
use crate::f2::{BitMatrix, BitVec, RowSpace};

/// What a vertex of the gauging graph stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Binding {
    Qubit(usize),
    Dummy,
}

/// Multigraph on support qubits and dummy vertices. Edges are identified by
/// index; parallel edges are distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugingGraph {
    vertices: Vec<Binding>,
    edges: Vec<(usize, usize)>,
    root: usize,
}

/// BFS spanning tree rooted at the graph root.
#[derive(Clone, Debug)]
pub struct SpanningTree {
    /// `(parent vertex, edge)` for every non-root reached vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub order: Vec<usize>,
    pub in_tree: Vec<bool>,
}

/// Boundary and coboundary maps of the graph with a chosen cycle set.
#[derive(Clone, Debug)]
pub struct BoundaryMaps {
    /// `|V| x |E|`: column `e` is the boundary `u + v` of edge `e`.
    pub boundary: BitMatrix,
    /// `|E| x |V|`, the transpose.
    pub coboundary: BitMatrix,
    /// `|E| x |P|`: column `p` is the edge set of cycle `p`.
    pub boundary2: BitMatrix,
    /// `|P| x |E|`.
    pub coboundary2: BitMatrix,
}

impl BoundaryMaps {
    /// `delta_2 . delta = 0`.
    pub fn is_complex(&self) -> bool {
        self.coboundary2
            .mul(&self.coboundary)
            .map(|m| m.is_zero())
            .unwrap_or(false)
    }

    /// `im(delta) = ker(delta_2)`, checked by rank arithmetic.
    pub fn is_exact(&self) -> bool {
        let e = self.coboundary.rows();
        self.is_complex() && self.coboundary.rank() + self.coboundary2.rank() == e
    }
}

impl GaugingGraph {
    pub fn new(vertices: Vec<Binding>, edges: Vec<(usize, usize)>) -> Result<Self, GaugingError> {
        let mut g = GaugingGraph {
            vertices,
            edges: Vec::new(),
            root: 0,
        };
        let mut seen = BTreeSet::new();
        for b in &g.vertices {
            if let Binding::Qubit(q) = b {
                if !seen.insert(*q) {
                    return Err(GaugingError::Graph(format!(
                        "qubit {q} bound to two vertices"
                    )));
                }
            }
        }
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// One vertex per qubit, in the given order.
    pub fn on_qubits(qubits: &[usize]) -> Self {
        GaugingGraph {
            vertices: qubits.iter().map(|&q| Binding::Qubit(q)).collect(),
            edges: Vec::new(),
            root: 0,
        }
    }

    pub fn vertices(&self) -> &[Binding] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn set_root(&mut self, root: usize) -> Result<(), GaugingError> {
        if root >= self.vertices.len() {
            return Err(GaugingError::Graph(format!("root {root} out of range")));
        }
        self.root = root;
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GaugingError> {
        let nv = self.vertices.len();
        if u >= nv || v >= nv {
            return Err(GaugingError::Graph(format!(
                "edge ({u}, {v}) on {nv} vertices"
            )));
        }
        if u == v {
            return Err(GaugingError::Graph(format!("self-loop at vertex {u}")));
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(self.edges.len() - 1)
    }

    pub fn add_dummy(&mut self) -> usize {
        self.vertices.push(Binding::Dummy);
        self.vertices.len() - 1
    }

    pub fn dummy_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|b| **b == Binding::Dummy)
            .count()
    }

    pub fn vertex_of_qubit(&self, q: usize) -> Option<usize> {
        self.vertices.iter().position(|b| *b == Binding::Qubit(q))
    }

    /// Indices of all edges joining `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        let key = (u.min(v), u.max(v));
        (0..self.edges.len())
            .filter(|&e| self.edges[e] == key)
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }

    /// `(neighbour, edge)` lists, edges in index order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        adj
    }

    /// Vertex-by-edge incidence matrix.
    pub fn incidence(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.vertices.len(), self.edges.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            m.set(u, i, true);
            m.set(v, i, true);
        }
        m
    }

    /// Edge set of the boundary of a vertex set.
    pub fn coboundary_of(&self, vertices: &BitVec) -> BitVec {
        BitVec::from_indices(
            self.edges.len(),
            (0..self.edges.len())
                .filter(|&e| vertices.get(self.edges[e].0) != vertices.get(self.edges[e].1)),
        )
    }

    /// Vertex set of the boundary of an edge set.
    pub fn boundary_of(&self, edges: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.vertices.len());
        for e in edges.iter_ones() {
            out.flip(self.edges[e].0);
            out.flip(self.edges[e].1);
        }
        out
    }

    pub fn spanning_tree(&self) -> SpanningTree {
        let nv = self.vertices.len();
        let adj = self.adjacency();
        let mut parent = vec![None; nv];
        let mut seen = vec![false; nv];
        let mut in_tree = vec![false; self.edges.len()];
        let mut order = Vec::with_capacity(nv);
        let mut queue = VecDeque::new();
        if nv > 0 {
            seen[self.root] = true;
            queue.push_back(self.root);
        }
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next = adj[u].clone();
            next.sort_unstable();
            for (v, e) in next {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, e));
                    in_tree[e] = true;
                    queue.push_back(v);
                }
            }
        }
        SpanningTree {
            parent,
            order,
            in_tree,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.spanning_tree().order.len() == self.vertices.len()
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &(v, _) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn require_connected(&self) -> Result<SpanningTree, GaugingError> {
        let tree = self.spanning_tree();
        if tree.order.len() != self.vertices.len() {
            return Err(GaugingError::Disconnected(self.components().len()));
        }
        Ok(tree)
    }

    /// Edge set of the tree path from the root to `v`.
    pub fn tree_path(&self, tree: &SpanningTree, v: usize) -> BitVec {
        let mut path = BitVec::zeros(self.edges.len());
        let mut cur = v;
        while let Some((p, e)) = tree.parent[cur] {
            path.flip(e);
            cur = p;
        }
        path
    }

    /// Shortest edge path between two vertices (BFS, lowest edge index first).
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<BitVec> {
        let adj = self.adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = BitVec::zeros(self.edges.len());
                let mut cur = to;
                while let Some((p, e)) = prev[cur] {
                    path.flip(e);
                    cur = p;
                }
                return Some(path);
            }
            let mut next = adj[u].clone();
            next.sort_unstable_by_key(|&(_, e)| e);
            for (v, e) in next {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// `|E| - |V| + 1` independent cycles: fundamental cycles of the BFS tree,
    /// then pairwise weight reduction until no replacement `c_i <- c_i + c_j`
    /// lowers a weight.
    pub fn cycle_basis(&self) -> Result<BitMatrix, GaugingError> {
        let tree = self.require_connected()?;
        let e = self.edges.len();
        let mut basis: Vec<BitVec> = Vec::new();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if tree.in_tree[i] {
                continue;
            }
            let mut c = self.tree_path(&tree, u).xor(&self.tree_path(&tree, v));
            c.flip(i);
            basis.push(c);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    if i == j {
                        continue;
                    }
                    let c = basis[i].xor(&basis[j]);
                    if c.weight() < basis[i].weight() {
                        basis[i] = c;
                        changed = true;
                    }
                }
            }
        }
        basis.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.cmp(a)));
        Ok(BitMatrix::from_rows(e, basis).expect("edge-width rows"))
    }

    /// Every simple cycle with at most `max_len` edges, as edge sets, with
    /// parallel-edge pairs included as 2-cycles.
    pub fn simple_cycles(&self, max_len: usize) -> Vec<BitVec> {
        let adj = self.adjacency();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for start in 0..self.vertices.len() {
            let mut path_edges = Vec::new();
            let mut on_path = vec![false; self.vertices.len()];
            on_path[start] = true;
            self.cycle_dfs(
                &adj,
                start,
                start,
                max_len,
                &mut on_path,
                &mut path_edges,
                &mut found,
            );
        }
        found
            .into_iter()
            .map(|es| BitVec::from_indices(self.edges.len(), es))
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        adj: &[Vec<(usize, usize)>],
        start: usize,
        u: usize,
        max_len: usize,
        on_path: &mut [bool],
        path_edges: &mut Vec<usize>,
        found: &mut BTreeSet<Vec<usize>>,
    ) {
        for &(v, e) in &adj[u] {
            if path_edges.contains(&e) {
                continue;
            }
            if v == start {
                let mut key = path_edges.clone();
                key.push(e);
                key.sort_unstable();
                found.insert(key);
            } else if !on_path[v] && v > start && path_edges.len() + 1 < max_len {
                on_path[v] = true;
                path_edges.push(e);
                self.cycle_dfs(adj, start, v, max_len, on_path, path_edges, found);
                path_edges.pop();
                on_path[v] = false;
            }
        }
    }

    /// Whether every row of `cycles` has empty boundary.
    pub fn are_cycles(&self, cycles: &BitMatrix) -> bool {
        cycles.iter_rows().all(|c| self.boundary_of(c).is_zero())
    }

    pub fn boundary_maps(&self, cycles: &BitMatrix) -> BoundaryMaps {
        let boundary = self.incidence();
        BoundaryMaps {
            coboundary: boundary.transpose(),
            boundary,
            boundary2: cycles.transpose(),
            coboundary2: cycles.clone(),
        }
    }

    /// Dimension of the cycle space spanned by `cycles`.
    pub fn cycle_rank(cycles: &[BitVec], e: usize) -> usize {
        let mut s = RowSpace::new(e);
        for c in cycles {
            s.insert(c.clone());
        }
        s.dim()
    }

    /// DOT export; vertices are labelled by bound qubit or `d<i>`.
    pub fn to_dot(&self, name: &str, label: impl Fn(usize) -> String) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {name} {{");
        for (i, b) in self.vertices.iter().enumerate() {
            let (text, shape) = match b {
                Binding::Qubit(q) => (label(*q), "circle"),
                Binding::Dummy => (format!("d{i}"), "box"),
            };
            let _ = writeln!(s, "  v{i} [label=\"{text}\", shape={shape}];");
        }
        for (i, (u, v)) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  v{u} -- v{v} [label=\"e{i}\"];");
        }
        s.push_str("}\n");
        s
    }
}
