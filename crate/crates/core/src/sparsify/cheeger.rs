use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SparsifyError;
use crate::gauging::GaugingGraph;

/// Largest vertex count handled by exhaustive enumeration.
pub const EXACT_VERTEX_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheegerMode {
    Exact,
    Spectral,
}

/// Cheeger value with its certificate: the minimizing set in exact mode, the
/// Laplacian gap in spectral mode (then `value` is only a lower bound).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cheeger {
    pub mode: CheegerMode,
    pub value: f64,
    /// Exact mode: `(|boundary|, |S|)` of the minimizer.
    pub ratio: Option<(usize, usize)>,
    pub set: Option<Vec<usize>>,
    /// Spectral mode: second-smallest Laplacian eigenvalue.
    pub lambda2: Option<f64>,
}

pub fn cheeger(graph: &GaugingGraph, mode: CheegerMode) -> Result<Cheeger, SparsifyError> {
    match mode {
        CheegerMode::Exact => cheeger_exact(graph),
        CheegerMode::Spectral => Ok(cheeger_spectral(graph)),
    }
}

/// Exact when the graph is small enough, spectral otherwise.
pub fn cheeger_auto(graph: &GaugingGraph) -> Cheeger {
    cheeger_exact(graph).unwrap_or_else(|_| cheeger_spectral(graph))
}

/// `min |boundary S| / |S|` over nonempty `S` with `|S| <= |V|/2`.
pub fn cheeger_exact(graph: &GaugingGraph) -> Result<Cheeger, SparsifyError> {
    let nv = graph.vertex_count();
    if nv > EXACT_VERTEX_LIMIT {
        return Err(SparsifyError::Budget {
            vertices: nv,
            limit: EXACT_VERTEX_LIMIT,
        });
    }
    if nv < 2 {
        return Err(SparsifyError::Invalid(
            "Cheeger constant needs two vertices".into(),
        ));
    }
    let adj: Vec<Vec<usize>> = graph
        .adjacency()
        .into_iter()
        .map(|a| a.into_iter().map(|(v, _)| v).collect())
        .collect();
    let half = nv / 2;
    // Shard on the top bits; each shard walks its low bits in Gray order so
    // consecutive sets differ by one vertex.
    let high = nv.min(8);
    let low = nv - high;
    let best = (0u64..1 << high)
        .into_par_iter()
        .filter_map(|top| {
            let base = top << low;
            let mut set = base;
            let mut boundary = initial_boundary(&adj, set);
            let mut best: Option<(usize, usize, u64)> = None;
            let mut consider = |set: u64, boundary: usize| {
                let size = set.count_ones() as usize;
                if size == 0 || size > half {
                    return;
                }
                let better = match best {
                    None => true,
                    Some((b, s, m)) => {
                        let (l, r) = (boundary * s, b * size);
                        l < r || (l == r && set < m)
                    }
                };
                if better {
                    best = Some((boundary, size, set));
                }
            };
            consider(set, boundary);
            for i in 1u64..1 << low {
                let v = i.trailing_zeros() as usize;
                let inside = set >> v & 1 == 1;
                let to_set = adj[v].iter().filter(|&&u| set >> u & 1 == 1).count();
                let deg = adj[v].len();
                // Flipping v swaps its edges into S with those leaving S.
                boundary = if inside {
                    boundary + 2 * to_set - deg
                } else {
                    boundary + deg - 2 * to_set
                };
                set ^= 1 << v;
                consider(set, boundary);
            }
            best
        })
        .reduce_with(|a, b| {
            let (l, r) = (a.0 * b.1, b.0 * a.1);
            if l < r || (l == r && a.2 < b.2) {
                a
            } else {
                b
            }
        })
        .expect("at least one shard");
    let (b, s, mask) = best;
    Ok(Cheeger {
        mode: CheegerMode::Exact,
        value: b as f64 / s as f64,
        ratio: Some((b, s)),
        set: Some((0..nv).filter(|&v| mask >> v & 1 == 1).collect()),
        lambda2: None,
    })
}

fn initial_boundary(adj: &[Vec<usize>], set: u64) -> usize {
    let mut b = 0;
    for (v, ns) in adj.iter().enumerate() {
        if set >> v & 1 == 1 {
            b += ns.iter().filter(|&&u| set >> u & 1 == 0).count();
        }
    }
    b
}

/// `lambda_2 / 2` of the combinatorial Laplacian, a lower bound on the
/// Cheeger constant.
pub fn cheeger_spectral(graph: &GaugingGraph) -> Cheeger {
    let nv = graph.vertex_count();
    let mut lap = DMatrix::<f64>::zeros(nv, nv);
    for &(u, v) in graph.edges() {
        lap[(u, u)] += 1.0;
        lap[(v, v)] += 1.0;
        lap[(u, v)] -= 1.0;
        lap[(v, u)] -= 1.0;
    }
    let mut eig: Vec<f64> = if nv == 0 {
        Vec::new()
    } else {
        lap.symmetric_eigen().eigenvalues.iter().copied().collect()
    };
    eig.sort_by(f64::total_cmp);
    let lambda2 = eig.get(1).copied().unwrap_or(0.0).max(0.0);
    Cheeger {
        mode: CheegerMode::Spectral,
        value: lambda2 / 2.0,
        ratio: None,
        set: None,
        lambda2: Some(lambda2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauging::Binding;

    fn graph(n: usize, edges: &[(usize, usize)]) -> GaugingGraph {
        GaugingGraph::new(vec![Binding::Dummy; n], edges.to_vec()).unwrap()
    }

    fn brute(g: &GaugingGraph) -> (usize, usize) {
        let nv = g.vertex_count();
        let mut best = (usize::MAX, 1);
        for mask in 1u32..1 << nv {
            let s = mask.count_ones() as usize;
            if s > nv / 2 {
                continue;
            }
            let b = g
                .edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count();
            if b * best.1 < best.0 * s {
                best = (b, s);
            }
        }
        best
    }

    #[test]
    fn small_graphs() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(cheeger_exact(&c4).unwrap().value, 1.0);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(cheeger_exact(&k4).unwrap().value, 2.0);
        let edge = graph(2, &[(0, 1)]);
        assert_eq!(cheeger_exact(&edge).unwrap().ratio, Some((1, 1)));
    }

    #[test]
    fn matches_brute_force_and_spectral_is_below() {
        let g = graph(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (0, 1),
            ],
        );
        let exact = cheeger_exact(&g).unwrap();
        let (b, s) = brute(&g);
        assert_eq!(exact.ratio.unwrap().0 * s, b * exact.ratio.unwrap().1);
        assert!(cheeger_spectral(&g).value <= exact.value + 1e-9);
    }

    #[test]
    fn too_many_vertices() {
        let n = EXACT_VERTEX_LIMIT + 1;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        assert!(cheeger_exact(&graph(n, &edges)).is_err());
    }
}
