//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

pub mod dense;
pub mod random;
pub mod remark;
pub mod tables;

use gauging::codes::StabilizerCode;
use gauging::gauging::{deform, DeformedCode, GaugingPlan};

/// Deforms and checks the edge/cycle/vertex count and the drop in `k`,
/// which every construction in the suite must satisfy.
pub fn checked_deform(code: &StabilizerCode, plan: &GaugingPlan) -> DeformedCode {
    let dc = deform(code, plan).expect("deformation");
    assert_counting(&dc);
    dc
}

pub fn assert_counting(dc: &DeformedCode) {
    for (i, p) in dc.plans().iter().enumerate() {
        let g = &p.graph;
        // Cycle-space dimension from a union-find forest, independent of the
        // library's rank routines.
        let (e, v) = (g.edge_count() as i64, g.vertex_count() as i64);
        let c = e - v + components(g.vertex_count(), g.edges()) as i64;
        assert_eq!(e - c - v, -1, "plan {i}: |E| - C - |V| = {}", e - c - v);
        assert_eq!(dc.counting_identity()[i], -1, "plan {i}: library identity");
    }
    assert_eq!(dc.base().k() - dc.code().k(), dc.plans().len(), "k drop");
}

pub fn components(nv: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = nv;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}
