//! Seeded generators for small codes, logicals, graphs and states.

use gauging::codes::StabilizerCode;
use gauging::gauging::{Binding, GaugingGraph, GaugingPlan, Routing};
use gauging::io::code_state;
use gauging::{Gate, PauliOp, Sign, Tableau};
use rand::seq::SliceRandom;
use rand::Rng;

/// Stabilizer code on `n` qubits with `k` logicals: the first `n - k`
/// stabilizers of a random Clifford applied to `|0...0>`.
pub fn code<R: Rng>(n: usize, k: usize, rng: &mut R) -> StabilizerCode {
    let mut t = Tableau::new(n);
    for _ in 0..6 * n * n {
        let g = match rng.gen_range(0..3) {
            0 => Gate::H(rng.gen_range(0..n)),
            1 => Gate::S(rng.gen_range(0..n)),
            _ if n > 1 => {
                let c = rng.gen_range(0..n);
                let mut d = rng.gen_range(0..n - 1);
                if d >= c {
                    d += 1;
                }
                Gate::CX(c, d)
            }
            _ => Gate::H(0),
        };
        t.apply(g).expect("gate in range");
    }
    let checks = t.stabilizers()[..n - k].to_vec();
    StabilizerCode::new(n, checks, None).expect("independent commuting checks")
}

fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// A nontrivial logical: a random letter of one logical pair, dressed by a
/// random product of checks.
pub fn logical<R: Rng>(code: &StabilizerCode, rng: &mut R) -> PauliOp {
    let pairs = code.symplectic_pairs(None).expect("logical pairs");
    let (x, z) = &pairs[rng.gen_range(0..pairs.len())];
    let mut l = match rng.gen_range(0..3) {
        0 => x.clone(),
        1 => z.clone(),
        _ => x.mul(z).expect("same width").unsigned(),
    };
    for c in code.checks() {
        if rng.gen_bool(0.5) {
            l = l.mul(c).expect("same width").unsigned();
        }
    }
    l.unsigned()
}

/// Connected graph on the support of `l` plus `dummies` extra vertices: a
/// random spanning tree and up to `extra` further simple edges.
pub fn graph<R: Rng>(l: &PauliOp, dummies: usize, extra: usize, rng: &mut R) -> GaugingGraph {
    let mut vertices: Vec<Binding> = l.support().into_iter().map(Binding::Qubit).collect();
    vertices.extend(std::iter::repeat_n(Binding::Dummy, dummies));
    let nv = vertices.len();
    let mut order: Vec<usize> = (0..nv).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..nv {
        edges.push((order[rng.gen_range(0..i)], order[i]));
    }
    let mut tries = 0;
    while edges.len() < nv - 1 + extra && tries < 50 && nv > 2 {
        tries += 1;
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
            edges.push((a, b));
        }
    }
    GaugingGraph::new(vertices, edges).expect("valid graph")
}

/// Plan on a random graph, with shortest-path routing and flux checks
/// chosen from its cycles.
pub fn plan<R: Rng>(
    code: &StabilizerCode,
    l: &PauliOp,
    dummies: usize,
    extra: usize,
    rng: &mut R,
) -> GaugingPlan {
    let g = graph(l, dummies, extra, rng);
    let mut p = GaugingPlan::with_graph(code, l, g, Routing::ShortestPath).expect("plan");
    p.select_flux_checks(code).expect("flux checks");
    p
}

/// Which operator completes the code state alongside the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fix {
    /// A partner anticommuting with `l`, so the outcome is random.
    Partner,
    /// `l` itself, with a random sign.
    Logical,
}

/// Code state with the other logical pairs fixed by random letters and
/// signs. Returns the state and, for [`Fix::Logical`], the sign of `l`.
pub fn state<R: Rng>(
    code: &StabilizerCode,
    l: &PauliOp,
    fix: Fix,
    rng: &mut R,
) -> (Tableau, Option<Sign>) {
    let pairs = code.symplectic_pairs(Some(l)).expect("logical pairs");
    let mut extra = Vec::new();
    let mut fixed = None;
    match fix {
        Fix::Partner => extra.push(pairs[0].1.clone().with_sign(sign(rng))),
        Fix::Logical => {
            let s = sign(rng);
            extra.push(l.clone().with_sign(s));
            fixed = Some(s);
        }
    }
    for (x, z) in &pairs[1..] {
        let p = if rng.gen() { x } else { z };
        extra.push(p.clone().with_sign(sign(rng)));
    }
    (code_state(code, &extra).expect("closed state"), fixed)
}
