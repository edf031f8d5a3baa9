//! Published Tanner-graph statistics of the bundled deformed codes, as
//! `(weight or degree, count)`.

pub struct Table {
    pub x_checks: &'static [(usize, usize)],
    pub z_checks: &'static [(usize, usize)],
    pub qubits: &'static [(usize, usize)],
    /// Added X checks, Z checks and qubits.
    pub additions: (usize, usize, usize),
    pub total: usize,
}

pub const GROSS: Table = Table {
    x_checks: &[(4, 7), (5, 2), (6, 75)],
    z_checks: &[(3, 5), (4, 2), (6, 54), (7, 18)],
    qubits: &[(3, 8), (4, 9), (5, 5), (6, 132), (7, 12)],
    additions: (12, 7, 22),
    total: 41,
};

pub const DOUBLE_GROSS: Table = Table {
    x_checks: &[(4, 7), (5, 8), (6, 147)],
    z_checks: &[(2, 1), (3, 5), (4, 1), (5, 3), (6, 120), (7, 27)],
    qubits: &[(3, 3), (4, 17), (5, 12), (6, 272), (7, 18)],
    additions: (18, 13, 34),
    total: 65,
};
