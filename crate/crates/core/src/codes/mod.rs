//! Stabilizer and CSS codes, the bivariate-bicycle family, Tanner audits and
//! distance computation.

mod bb;
mod distance;
pub mod library;
mod report;

use thiserror::Error;

use crate::f2::{BitMatrix, BitVec, F2Error, RowSpace};
use crate::pauli::{PauliError, PauliOp};

pub use bb::{BBCode, LogicalKind, Monomial, Polynomial};
pub use distance::{
    distance_exact, distance_exact_with_budget, distance_upper, DistanceBound,
    DEFAULT_EXACT_BUDGET, SHARD_TRIALS,
};
pub use report::TannerReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    F2(#[from] F2Error),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("checks {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("H_X H_Z^T != 0")]
    NotOrthogonal,
    #[error("invalid code: {0}")]
    Invalid(String),
    #[error("operator {0} is not a logical: {1}")]
    NotLogical(String, &'static str),
    #[error("enumeration budget of {budget} candidates exceeded at weight {weight}")]
    Budget { budget: u64, weight: usize },
}

/// Stabilizer code given by a (possibly redundant) list of commuting checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    n: usize,
    checks: Vec<PauliOp>,
    labels: Vec<String>,
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        checks: Vec<PauliOp>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, CodeError> {
        for c in &checks {
            if c.n() != n {
                return Err(PauliError::SizeMismatch(c.n(), n).into());
            }
            c.sign()?;
        }
        for (i, a) in checks.iter().enumerate() {
            for b in &checks[i + 1..] {
                if !a.commutes_unchecked(b) {
                    return Err(CodeError::NonCommuting(a.to_string(), b.to_string()));
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == checks.len() => l,
            Some(l) => {
                return Err(CodeError::Invalid(format!(
                    "{} labels for {} checks",
                    l.len(),
                    checks.len()
                )))
            }
            None => (0..checks.len()).map(|i| format!("s{i}")).collect(),
        };
        Ok(StabilizerCode { n, checks, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn checks(&self) -> &[PauliOp] {
        &self.checks
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Symplectic `[x | z]` check matrix.
    pub fn check_matrix(&self) -> BitMatrix {
        symplectic_matrix(self.n, &self.checks)
    }

    pub fn rank(&self) -> usize {
        self.check_matrix().rank()
    }

    pub fn k(&self) -> usize {
        self.n - self.rank()
    }

    pub fn commutes_with_checks(&self, p: &PauliOp) -> bool {
        p.n() == self.n && self.checks.iter().all(|c| c.commutes_unchecked(p))
    }

    /// Whether `±p` is generated by the checks (signs ignored).
    pub fn in_group(&self, p: &PauliOp) -> bool {
        RowSpace::from_matrix(&self.check_matrix()).contains(&p.symplectic())
    }

    /// Commutes with every check and is not generated by them.
    pub fn is_logical(&self, p: &PauliOp) -> bool {
        self.commutes_with_checks(p) && !self.in_group(p)
    }

    /// `2k` operators spanning the normalizer modulo the check group.
    pub fn logical_basis(&self) -> Vec<PauliOp> {
        let mut group = RowSpace::from_matrix(&self.check_matrix());
        let mut out = Vec::new();
        for v in normalizer(self.n, &self.checks).iter_rows() {
            if group.insert(v.clone()) {
                out.push(PauliOp::from_symplectic(v));
            }
        }
        out
    }

    /// Symplectic logical basis `(X_i, Z_i)` with `<X_i, Z_j> = delta_ij`.
    /// When `first` is given it becomes `X_0`.
    pub fn symplectic_pairs(
        &self,
        first: Option<&PauliOp>,
    ) -> Result<Vec<(PauliOp, PauliOp)>, CodeError> {
        let n = self.n;
        let form = |a: &BitVec, b: &BitVec| {
            a.slice(0, n).dot(&b.slice(n, n)) ^ a.slice(n, n).dot(&b.slice(0, n))
        };
        let mut pool: Vec<BitVec> = self
            .logical_basis()
            .iter()
            .map(PauliOp::symplectic)
            .collect();
        if let Some(f) = first {
            if !self.is_logical(f) {
                return Err(CodeError::NotLogical(
                    f.to_string(),
                    "not a nontrivial logical",
                ));
            }
            pool.insert(0, f.symplectic());
        }
        let mut pairs = Vec::new();
        while !pool.is_empty() {
            let a = pool.remove(0);
            let Some(j) = pool.iter().position(|b| form(&a, b)) else {
                // Orthogonal to everything left, hence in the check group.
                continue;
            };
            let b = pool.remove(j);
            for c in pool.iter_mut() {
                let (ca, cb) = (form(c, &a), form(c, &b));
                if cb {
                    c.xor_assign(&a);
                }
                if ca {
                    c.xor_assign(&b);
                }
            }
            pairs.push((PauliOp::from_symplectic(&a), PauliOp::from_symplectic(&b)));
        }
        Ok(pairs)
    }

    /// The CSS split, when every check is X-type or Z-type.
    pub fn as_css(&self) -> Option<CssCode> {
        let mut hx = BitMatrix::empty(self.n);
        let mut hz = BitMatrix::empty(self.n);
        for c in &self.checks {
            if c.is_identity() {
                continue;
            } else if c.is_x_type() {
                hx.push_row(c.x_bits().clone());
            } else if c.is_z_type() {
                hz.push_row(c.z_bits().clone());
            } else {
                return None;
            }
        }
        Some(CssCode { hx, hz })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "stabilizer",
            "n": self.n,
            "checks": self.checks.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "labels": self.labels,
        })
    }
}

/// CSS code from X- and Z-check matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    hx: BitMatrix,
    hz: BitMatrix,
}

impl CssCode {
    pub fn new(hx: BitMatrix, hz: BitMatrix) -> Result<Self, CodeError> {
        if hx.cols() != hz.cols() {
            return Err(CodeError::Invalid(format!(
                "H_X has {} columns, H_Z has {}",
                hx.cols(),
                hz.cols()
            )));
        }
        if !hx.mul(&hz.transpose())?.is_zero() {
            return Err(CodeError::NotOrthogonal);
        }
        Ok(CssCode { hx, hz })
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.hx.rank() - self.hz.rank()
    }

    /// Checks `X0.., Z0..` in matrix row order.
    pub fn to_stabilizer(&self) -> StabilizerCode {
        let n = self.n();
        let mut checks = Vec::new();
        let mut labels = Vec::new();
        for (i, r) in self.hx.iter_rows().enumerate() {
            checks.push(PauliOp::from_bits(r.clone(), BitVec::zeros(n)));
            labels.push(format!("X{i}"));
        }
        for (i, r) in self.hz.iter_rows().enumerate() {
            checks.push(PauliOp::from_bits(BitVec::zeros(n), r.clone()));
            labels.push(format!("Z{i}"));
        }
        StabilizerCode::new(n, checks, Some(labels)).expect("orthogonal CSS checks commute")
    }
}

pub(crate) fn symplectic_matrix(n: usize, ops: &[PauliOp]) -> BitMatrix {
    BitMatrix::from_rows(2 * n, ops.iter().map(PauliOp::symplectic).collect())
        .expect("operators share a width")
}

/// Basis (as `[x | z]` rows) of Paulis commuting with every operator in `ops`.
pub fn normalizer(n: usize, ops: &[PauliOp]) -> BitMatrix {
    let dual = BitMatrix::from_rows(
        2 * n,
        ops.iter().map(|p| p.z_bits().concat(p.x_bits())).collect(),
    )
    .expect("operators share a width");
    dual.nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;

    #[test]
    fn four_two_two_parameters() {
        let code = library::four_two_two();
        assert_eq!(code.k(), 2);
        assert_eq!(code.logical_basis().len(), 4);
        assert!(code.is_logical(&pauli("XXII")));
        assert!(!code.is_logical(&pauli("XXXX")));
        assert!(!code.is_logical(&pauli("XIII")));
    }

    #[test]
    fn symplectic_pairs_are_dual() {
        let code = library::four_two_two();
        let pairs = code.symplectic_pairs(Some(&pauli("XXII"))).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].0, pauli("XXII"));
        for (i, (xi, zi)) in pairs.iter().enumerate() {
            for (j, (xj, zj)) in pairs.iter().enumerate() {
                assert_eq!(xi.commutes(zj).unwrap(), i != j);
                assert!(xi.commutes(xj).unwrap() && zi.commutes(zj).unwrap());
            }
            assert!(code.is_logical(xi) && code.is_logical(zi));
        }
    }

    #[test]
    fn rejects_noncommuting_checks() {
        let err = StabilizerCode::new(1, vec![pauli("X"), pauli("Z")], None).unwrap_err();
        assert!(matches!(err, CodeError::NonCommuting(..)));
    }

    #[test]
    fn css_round_trip() {
        let css = library::rotated_surface(3);
        assert_eq!(css.k(), 1);
        let back = css.to_stabilizer().as_css().unwrap();
        assert_eq!(back, css);
        assert!(library::toy_zz().as_css().is_some());
        assert!(StabilizerCode::new(2, vec![pauli("XZ")], None)
            .unwrap()
            .as_css()
            .is_none());
    }
}
