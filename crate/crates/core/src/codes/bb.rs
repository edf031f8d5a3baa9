use serde::{Deserialize, Serialize};

use super::{CodeError, CssCode, StabilizerCode};
use crate::f2::{BitMatrix, BitVec};
use crate::pauli::PauliOp;

/// Exponent pair `(a, b)` of `x^a y^b`.
pub type Monomial = (usize, usize);
/// Sum of distinct monomials.
pub type Polynomial = Vec<Monomial>;

/// Which named logical of a bivariate-bicycle code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogicalKind {
    /// `X(αf, 0)`
    X,
    /// `X(βg, βh)`
    XPrime,
    /// `Z(βh^T, βg^T)`
    Z,
    /// `Z(0, αf^T)`
    ZPrime,
}

/// Polynomials generating the named logical families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalPolys {
    pub f: Polynomial,
    pub g: Option<Polynomial>,
    pub h: Option<Polynomial>,
}

/// Bivariate-bicycle code with `H_X = [A|B]`, `H_Z = [B^T|A^T]` over
/// `F2[x,y]/(x^l - 1, y^m - 1)`.
///
/// Qubits are ordered L block then R block, each row-major over monomials
/// (`x^a y^b` has index `a*m + b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBCode {
    pub l: usize,
    pub m: usize,
    pub a: Polynomial,
    pub b: Polynomial,
    pub polys: Option<LogicalPolys>,
    css: CssCode,
}

impl BBCode {
    pub fn build(l: usize, m: usize, a: Polynomial, b: Polynomial) -> Result<Self, CodeError> {
        if l == 0 || m == 0 {
            return Err(CodeError::Invalid("l and m must be positive".into()));
        }
        for &(x, y) in a.iter().chain(&b) {
            if x >= l || y >= m {
                return Err(CodeError::Invalid(format!(
                    "monomial x^{x} y^{y} not reduced mod ({l}, {m})"
                )));
            }
        }
        let am = poly_matrix(l, m, &a);
        let bm = poly_matrix(l, m, &b);
        let hx = am.hstack(&bm)?;
        let hz = bm.transpose().hstack(&am.transpose())?;
        let css = CssCode::new(hx, hz)?;
        Ok(BBCode {
            l,
            m,
            a,
            b,
            polys: None,
            css,
        })
    }

    /// The `[[144,12,12]]` gross code.
    pub fn gross() -> Self {
        let mut code = Self::build(
            12,
            6,
            vec![(3, 0), (0, 2), (0, 1)],
            vec![(0, 3), (2, 0), (1, 0)],
        )
        .expect("valid gross parameters");
        code.polys = Some(LogicalPolys {
            f: vec![
                (0, 0),
                (1, 0),
                (2, 0),
                (3, 0),
                (6, 0),
                (7, 0),
                (8, 0),
                (9, 0),
                (1, 3),
                (5, 3),
                (7, 3),
                (11, 3),
            ],
            g: Some(vec![(1, 0), (2, 1), (0, 2), (1, 2), (2, 3), (0, 4)]),
            h: Some(vec![(0, 0), (0, 1), (1, 1), (0, 2), (0, 3), (1, 3)]),
        });
        code
    }

    /// The `[[288,12,18]]` double gross code. Only `f` is tabulated.
    pub fn double_gross() -> Self {
        let mut code = Self::build(
            12,
            12,
            vec![(3, 0), (0, 7), (0, 2)],
            vec![(0, 3), (2, 0), (1, 0)],
        )
        .expect("valid double gross parameters");
        code.polys = Some(LogicalPolys {
            f: vec![
                (0, 0),
                (1, 0),
                (2, 0),
                (7, 0),
                (8, 0),
                (9, 0),
                (10, 0),
                (11, 0),
                (0, 3),
                (6, 3),
                (8, 3),
                (10, 3),
                (5, 6),
                (6, 6),
                (9, 6),
                (10, 6),
                (4, 9),
                (8, 9),
            ],
            g: None,
            h: None,
        });
        code
    }

    pub fn css(&self) -> &CssCode {
        &self.css
    }

    pub fn n(&self) -> usize {
        2 * self.l * self.m
    }

    pub fn k(&self) -> usize {
        self.css.k()
    }

    pub fn index(&self, mono: Monomial) -> usize {
        (mono.0 % self.l) * self.m + mono.1 % self.m
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        let i = index % (self.l * self.m);
        (i / self.m, i % self.m)
    }

    /// Human-readable qubit label such as `L x^2y^3`.
    pub fn qubit_label(&self, q: usize) -> String {
        let block = if q < self.l * self.m { "L" } else { "R" };
        format!("{block} {}", monomial_name(self.monomial(q)))
    }

    /// Check labels `X x^ay^b` then `Z x^ay^b`, matching the stabilizer order.
    pub fn to_stabilizer(&self) -> StabilizerCode {
        let lm = self.l * self.m;
        let base = self.css.to_stabilizer();
        let labels = (0..2 * lm)
            .map(|i| {
                let t = if i < lm { "X" } else { "Z" };
                format!("{t} {}", monomial_name(self.monomial(i)))
            })
            .collect();
        StabilizerCode::new(base.n(), base.checks().to_vec(), Some(labels)).expect("valid labels")
    }

    /// Indicator of `shift * p` over the monomial basis.
    pub fn poly_vec(&self, p: &[Monomial], shift: Monomial) -> BitVec {
        BitVec::from_indices(
            self.l * self.m,
            p.iter()
                .map(|&(a, b)| self.index((a + shift.0, b + shift.1))),
        )
    }

    /// `p(x^-1, y^-1)`.
    pub fn transpose_poly(&self, p: &[Monomial]) -> Polynomial {
        p.iter()
            .map(|&(a, b)| ((self.l - a) % self.l, (self.m - b) % self.m))
            .collect()
    }

    /// Named logical shifted by `alpha`, checked to commute with every check
    /// and to lie outside the check group.
    pub fn logical(&self, kind: LogicalKind, alpha: Monomial) -> Result<PauliOp, CodeError> {
        let polys = self
            .polys
            .as_ref()
            .ok_or_else(|| CodeError::Invalid("no logical polynomials for this code".into()))?;
        let need = |p: &Option<Polynomial>, name: &str| {
            p.clone()
                .ok_or_else(|| CodeError::Invalid(format!("polynomial {name} not tabulated")))
        };
        let lm = self.l * self.m;
        let zero = BitVec::zeros(lm);
        let (left, right, x_type) = match kind {
            LogicalKind::X => (self.poly_vec(&polys.f, alpha), zero, true),
            LogicalKind::XPrime => (
                self.poly_vec(&need(&polys.g, "g")?, alpha),
                self.poly_vec(&need(&polys.h, "h")?, alpha),
                true,
            ),
            LogicalKind::Z => (
                self.poly_vec(&self.transpose_poly(&need(&polys.h, "h")?), alpha),
                self.poly_vec(&self.transpose_poly(&need(&polys.g, "g")?), alpha),
                false,
            ),
            LogicalKind::ZPrime => (
                zero,
                self.poly_vec(&self.transpose_poly(&polys.f), alpha),
                false,
            ),
        };
        let bits = left.concat(&right);
        let op = if x_type {
            PauliOp::from_bits(bits, BitVec::zeros(2 * lm))
        } else {
            PauliOp::from_bits(BitVec::zeros(2 * lm), bits)
        };
        let code = self.css.to_stabilizer();
        if !code.commutes_with_checks(&op) {
            return Err(CodeError::NotLogical(
                op.to_string(),
                "anticommutes with a check",
            ));
        }
        if code.in_group(&op) {
            return Err(CodeError::NotLogical(
                op.to_string(),
                "lies in the check group",
            ));
        }
        Ok(op)
    }
}

pub fn monomial_name((a, b): Monomial) -> String {
    match (a, b) {
        (0, 0) => "1".into(),
        (a, 0) => format!("x^{a}"),
        (0, b) => format!("y^{b}"),
        (a, b) => format!("x^{a}y^{b}"),
    }
}

fn poly_matrix(l: usize, m: usize, p: &[Monomial]) -> BitMatrix {
    let n = l * m;
    let mut mat = BitMatrix::zeros(n, n);
    for &(a, b) in p {
        for i in 0..l {
            for j in 0..m {
                let r = i * m + j;
                let c = ((i + a) % l) * m + (j + b) % m;
                let v = mat.get(r, c);
                mat.set(r, c, !v);
            }
        }
    }
    mat
}
