//! Small named codes used by examples, recipes and tests.

use super::{CssCode, StabilizerCode};
use crate::f2::{BitMatrix, BitVec};
use crate::pauli::{pauli, PauliOp};

/// `[[4,2,2]]` with checks `XXXX`, `ZZZZ`.
pub fn four_two_two() -> StabilizerCode {
    StabilizerCode::new(
        4,
        vec![pauli("XXXX"), pauli("ZZZZ")],
        Some(vec!["X0".into(), "Z0".into()]),
    )
    .expect("commuting checks")
}

/// Two qubits with the single check `ZZ`.
pub fn toy_zz() -> StabilizerCode {
    StabilizerCode::new(2, vec![pauli("ZZ")], Some(vec!["Z0".into()])).expect("one check")
}

/// Rotated planar surface code of distance `d` on a `d x d` grid, qubit
/// `(r, c)` at index `r*d + c`. X-type boundaries are top and bottom, so
/// [`surface_x_logical`] is a vertical string.
pub fn rotated_surface(d: usize) -> CssCode {
    assert!(d >= 2, "distance must be at least 2");
    let n = d * d;
    let mut hx = BitMatrix::empty(n);
    let mut hz = BitMatrix::empty(n);
    for i in 0..=d {
        for j in 0..=d {
            let x_type = (i + j) % 2 == 0;
            let on_row_edge = i == 0 || i == d;
            let on_col_edge = j == 0 || j == d;
            if on_row_edge && on_col_edge {
                continue;
            }
            if (on_row_edge && !x_type) || (on_col_edge && x_type) {
                continue;
            }
            let mut qs = Vec::new();
            for (r, c) in [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)] {
                if (1..=d).contains(&r) && (1..=d).contains(&c) {
                    qs.push((r - 1) * d + (c - 1));
                }
            }
            let row = BitVec::from_indices(n, qs);
            if x_type {
                hx.push_row(row);
            } else {
                hz.push_row(row);
            }
        }
    }
    CssCode::new(hx, hz).expect("surface code checks commute")
}

/// `X` on column 0 of [`rotated_surface`].
pub fn surface_x_logical(d: usize) -> PauliOp {
    PauliOp::x_type(d * d, (0..d).map(|r| r * d))
}

/// `Z` on row 0 of [`rotated_surface`].
pub fn surface_z_logical(d: usize) -> PauliOp {
    PauliOp::z_type(d * d, 0..d)
}

/// Disjoint union of two codes, `b`'s qubits after `a`'s.
pub fn product(a: &StabilizerCode, b: &StabilizerCode) -> StabilizerCode {
    let n = a.n() + b.n();
    let amap: Vec<usize> = (0..a.n()).collect();
    let bmap: Vec<usize> = (a.n()..n).collect();
    let mut checks = Vec::new();
    let mut labels = Vec::new();
    for (c, l) in a.checks().iter().zip(a.labels()) {
        checks.push(c.embed(n, &amap));
        labels.push(format!("A.{l}"));
    }
    for (c, l) in b.checks().iter().zip(b.labels()) {
        checks.push(c.embed(n, &bmap));
        labels.push(format!("B.{l}"));
    }
    StabilizerCode::new(n, checks, Some(labels)).expect("disjoint checks commute")
}
