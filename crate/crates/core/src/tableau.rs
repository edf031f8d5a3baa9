//! Stabilizer-state simulator on stabilizer/destabilizer generator pairs.

use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::{BitMatrix, BitVec};
use crate::pauli::{Pauli, PauliError, PauliOp, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error("qubit {qubit} out of range for {n} qubits")]
    Index { qubit: usize, n: usize },
    #[error("forced outcome {forced:?} contradicts deterministic outcome for {op}")]
    Contradiction { op: String, forced: Sign },
    #[error("qubit {0} is entangled with the rest of the state")]
    Entangled(usize),
    #[error("invalid generators: {0}")]
    Invalid(String),
}

/// Clifford gates understood by [`Tableau::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    CX(usize, usize),
    H(usize),
    S(usize),
    X(usize),
    Z(usize),
}

impl Gate {
    fn qubits(&self) -> [usize; 2] {
        match *self {
            Gate::CX(c, t) => [c, t],
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Z(q) => [q, q],
        }
    }
}

/// How to resolve a random measurement.
pub enum MeasureMode<'r> {
    Sample(&'r mut dyn RngCore),
    Forced(Sign),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub sign: Sign,
    pub deterministic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitState {
    Zero,
    Plus,
}

/// A labelled measurement result as it appears in serialized logs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub label: String,
    pub value: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    destab: Vec<PauliOp>,
    stab: Vec<PauliOp>,
    record: Vec<Record>,
}

/// Reduced generator set identifying a stabilizer state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    rows: Vec<PauliOp>,
}

impl CanonicalForm {
    pub fn rows(&self) -> &[PauliOp] {
        &self.rows
    }

    /// Symplectic `[x | z]` rows.
    pub fn matrix(&self) -> BitMatrix {
        let n = self.rows.first().map_or(0, PauliOp::n);
        BitMatrix::from_rows(2 * n, self.rows.iter().map(PauliOp::symplectic).collect())
            .expect("rows share a width")
    }

    pub fn signs(&self) -> BitVec {
        let bits: Vec<bool> = self.rows.iter().map(|p| p.phase() == 2).collect();
        BitVec::from_bools(&bits)
    }
}

impl Tableau {
    /// `|0...0>`.
    pub fn new(n: usize) -> Self {
        Tableau {
            n,
            destab: (0..n).map(|q| PauliOp::single(n, q, Pauli::X)).collect(),
            stab: (0..n).map(|q| PauliOp::single(n, q, Pauli::Z)).collect(),
            record: Vec::new(),
        }
    }

    /// State stabilized by `gens`, which must be `n` independent commuting
    /// Hermitian operators on `n` qubits.
    pub fn from_stabilizers(gens: &[PauliOp]) -> Result<Self, TableauError> {
        let n = gens.len();
        for g in gens {
            if g.n() != n {
                return Err(TableauError::Invalid(format!(
                    "{} generators on {} qubits",
                    n,
                    g.n()
                )));
            }
            g.sign()?;
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes_unchecked(b) {
                    return Err(TableauError::Invalid(format!("{a} and {b} anticommute")));
                }
            }
        }
        let destab = complete_destabilizers(gens)?;
        Ok(Tableau {
            n,
            destab,
            stab: gens.to_vec(),
            record: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOp] {
        &self.stab
    }

    pub fn destabilizers(&self) -> &[PauliOp] {
        &self.destab
    }

    pub fn records(&self) -> &[Record] {
        &self.record
    }

    pub fn clear_records(&mut self) {
        self.record.clear();
    }

    fn check_qubit(&self, q: usize) -> Result<(), TableauError> {
        if q >= self.n {
            Err(TableauError::Index {
                qubit: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_op(&self, p: &PauliOp) -> Result<(), TableauError> {
        if p.n() != self.n {
            Err(PauliError::SizeMismatch(p.n(), self.n).into())
        } else {
            Ok(())
        }
    }

    pub fn apply(&mut self, gate: Gate) -> Result<(), TableauError> {
        let [a, b] = gate.qubits();
        self.check_qubit(a)?;
        self.check_qubit(b)?;
        if a == b && matches!(gate, Gate::CX(..)) {
            return Err(TableauError::Invalid(format!(
                "CX with control = target = {a}"
            )));
        }
        for row in self.stab.iter_mut().chain(self.destab.iter_mut()) {
            match gate {
                Gate::CX(c, t) => row.conj_cx(c, t),
                Gate::H(q) => row.conj_h(q),
                Gate::S(q) => row.conj_s(q),
                Gate::X(q) => row.conj_x(q),
                Gate::Z(q) => row.conj_z(q),
            }
        }
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<(), TableauError> {
        gates.iter().try_for_each(|&g| self.apply(g))
    }

    /// Applies a Pauli operator to the state (phase flips on anticommuting
    /// stabilizers).
    pub fn apply_pauli(&mut self, p: &PauliOp) -> Result<(), TableauError> {
        self.check_op(p)?;
        for s in &mut self.stab {
            if !s.commutes_unchecked(p) {
                s.negate();
            }
        }
        Ok(())
    }

    /// Sign of `p` if `±p` lies in the stabilizer group, without changing the
    /// state.
    pub fn expectation(&self, p: &PauliOp) -> Result<Option<Sign>, TableauError> {
        self.check_op(p)?;
        let sign = p.sign()?;
        if self.stab.iter().any(|s| !s.commutes_unchecked(p)) {
            return Ok(None);
        }
        let prod = self.deterministic_product(p);
        if prod.x_bits() != p.x_bits() || prod.z_bits() != p.z_bits() {
            return Ok(None);
        }
        Ok(Some(prod.sign()?.times(sign)))
    }

    fn deterministic_product(&self, p: &PauliOp) -> PauliOp {
        let mut prod = PauliOp::identity(self.n);
        for (d, s) in self.destab.iter().zip(&self.stab) {
            if !d.commutes_unchecked(p) {
                prod.mul_assign_unchecked(s);
            }
        }
        prod
    }

    /// Measures the Hermitian Pauli `p`; the returned sign is the eigenvalue
    /// of `p` (including its own sign).
    pub fn measure(&mut self, p: &PauliOp, mode: MeasureMode<'_>) -> Result<Outcome, TableauError> {
        self.check_op(p)?;
        let p_sign = p.sign()?;
        let pivot = self.stab.iter().position(|s| !s.commutes_unchecked(p));
        match pivot {
            None => {
                let prod = self.deterministic_product(p);
                let sign = prod.sign()?.times(p_sign);
                if let MeasureMode::Forced(f) = mode {
                    if f != sign {
                        return Err(TableauError::Contradiction {
                            op: p.to_string(),
                            forced: f,
                        });
                    }
                }
                Ok(Outcome {
                    sign,
                    deterministic: true,
                })
            }
            Some(i) => {
                let pivot_row = self.stab[i].clone();
                for j in 0..self.n {
                    if j != i && !self.stab[j].commutes_unchecked(p) {
                        self.stab[j].mul_assign_unchecked(&pivot_row);
                    }
                    if j != i && !self.destab[j].commutes_unchecked(p) {
                        self.destab[j].mul_assign_unchecked(&pivot_row);
                    }
                }
                let sign = match mode {
                    MeasureMode::Forced(f) => f,
                    MeasureMode::Sample(rng) => Sign::from_bit(rng.next_u32() & 1 == 1),
                };
                self.destab[i] = pivot_row;
                self.stab[i] = p.unsigned().with_sign(sign.times(p_sign));
                Ok(Outcome {
                    sign,
                    deterministic: false,
                })
            }
        }
    }

    /// [`measure`](Self::measure) and append `(label, value)` to the record.
    pub fn measure_labeled(
        &mut self,
        label: impl Into<String>,
        p: &PauliOp,
        mode: MeasureMode<'_>,
    ) -> Result<Outcome, TableauError> {
        let out = self.measure(p, mode)?;
        self.record.push(Record {
            label: label.into(),
            value: out.sign.value(),
        });
        Ok(out)
    }

    /// Appends `count` fresh qubits in `state`.
    pub fn extend(&mut self, count: usize, state: InitState) {
        let n = self.n + count;
        for row in self.stab.iter_mut().chain(self.destab.iter_mut()) {
            *row = row.resized(n);
        }
        let (s, d) = match state {
            InitState::Zero => (Pauli::Z, Pauli::X),
            InitState::Plus => (Pauli::X, Pauli::Z),
        };
        for q in self.n..n {
            self.stab.push(PauliOp::single(n, q, s));
            self.destab.push(PauliOp::single(n, q, d));
        }
        self.n = n;
    }

    /// Removes `qubits`, each of which must be in a product state with the
    /// rest; the remaining qubits keep their relative order.
    pub fn discard(&mut self, qubits: &[usize]) -> Result<(), TableauError> {
        let mut qs = qubits.to_vec();
        qs.sort_unstable();
        qs.dedup();
        for &q in &qs {
            self.check_qubit(q)?;
        }
        let mut rows = self.stab.clone();
        for &q in qs.iter().rev() {
            rows = split_off_qubit(rows, q)?;
        }
        let keep: Vec<usize> = (0..self.n)
            .filter(|q| qs.binary_search(q).is_err())
            .collect();
        let gens: Vec<PauliOp> = rows.iter().map(|r| r.restrict(&keep)).collect();
        let record = std::mem::take(&mut self.record);
        *self = Tableau::from_stabilizers(&gens)?;
        self.record = record;
        Ok(())
    }

    /// Canonical generator set: Gauss-Jordan over columns ordered
    /// `x_0, z_0, x_1, z_1, ...` with signs carried along.
    pub fn canonical(&self) -> CanonicalForm {
        let mut rows = self.stab.clone();
        let mut r = 0;
        for col in 0..2 * self.n {
            let q = col / 2;
            let bit = |p: &PauliOp| {
                if col % 2 == 0 {
                    p.x_bits().get(q)
                } else {
                    p.z_bits().get(q)
                }
            };
            let Some(pr) = (r..rows.len()).find(|&i| bit(&rows[i])) else {
                continue;
            };
            rows.swap(r, pr);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && bit(row) {
                    row.mul_assign_unchecked(&pivot);
                }
            }
            r += 1;
        }
        CanonicalForm { rows }
    }

    /// Checks commutation, independence and destabilizer pairing.
    pub fn validate(&self) -> Result<(), TableauError> {
        let n = self.n;
        if self.stab.len() != n || self.destab.len() != n {
            return Err(TableauError::Invalid("generator count".into()));
        }
        for (i, s) in self.stab.iter().enumerate() {
            if s.n() != n || self.destab[i].n() != n {
                return Err(TableauError::Invalid(format!("row {i} has wrong width")));
            }
            if !s.is_hermitian() {
                return Err(TableauError::Invalid(format!(
                    "stabilizer {i} not Hermitian"
                )));
            }
            for (j, t) in self.stab.iter().enumerate() {
                if !s.commutes_unchecked(t) {
                    return Err(TableauError::Invalid(format!(
                        "stabilizers {i},{j} anticommute"
                    )));
                }
                let d = &self.destab[j];
                if d.commutes_unchecked(s) != (i != j) {
                    return Err(TableauError::Invalid(format!(
                        "destabilizer {j} vs stabilizer {i}"
                    )));
                }
            }
        }
        let m = BitMatrix::from_rows(2 * n, self.stab.iter().map(PauliOp::symplectic).collect())
            .map_err(|e| TableauError::Invalid(e.to_string()))?;
        if m.rank() != n {
            return Err(TableauError::Invalid("stabilizers dependent".into()));
        }
        Ok(())
    }
}

/// Rewrites `rows` so that exactly one row acts on `q`, as a single-qubit
/// Pauli, which is then dropped.
fn split_off_qubit(mut rows: Vec<PauliOp>, q: usize) -> Result<Vec<PauliOp>, TableauError> {
    let mut touching = Vec::new();
    for sel in [true, false] {
        let bit = |p: &PauliOp| {
            if sel {
                p.x_bits().get(q)
            } else {
                p.z_bits().get(q)
            }
        };
        let Some(pr) = (0..rows.len()).find(|i| !touching.contains(i) && bit(&rows[*i])) else {
            continue;
        };
        let pivot = rows[pr].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pr && bit(row) {
                row.mul_assign_unchecked(&pivot);
            }
        }
        touching.push(pr);
    }
    if touching.len() != 1 {
        return Err(TableauError::Entangled(q));
    }
    let t = touching[0];
    let mut target = rows[t].clone();
    target.set(q, Pauli::I);
    // The rest of row t must be generated by the other rows.
    let others: Vec<usize> = (0..rows.len()).filter(|&i| i != t).collect();
    let basis = BitMatrix::from_rows(
        2 * target.n(),
        others.iter().map(|&i| rows[i].symplectic()).collect(),
    )
    .map_err(|e| TableauError::Invalid(e.to_string()))?;
    let coeffs = basis
        .transpose()
        .solve(&target.symplectic())
        .map_err(|e| TableauError::Invalid(e.to_string()))?
        .ok_or(TableauError::Entangled(q))?;
    let mut cleaned = rows[t].clone();
    for c in coeffs.iter_ones() {
        cleaned.mul_assign_unchecked(&rows[others[c]]);
    }
    debug_assert_eq!(cleaned.weight(), 1);
    rows.remove(t);
    Ok(rows)
}

/// Destabilizers paired with independent commuting `gens`.
fn complete_destabilizers(gens: &[PauliOp]) -> Result<Vec<PauliOp>, TableauError> {
    let n = gens.len();
    // Row i is the symplectic dual of gens[i]: A d = e_i means <d, g_j> = δ_ij.
    let dual = BitMatrix::from_rows(
        2 * n,
        gens.iter().map(|g| g.z_bits().concat(g.x_bits())).collect(),
    )
    .map_err(|e| TableauError::Invalid(e.to_string()))?;
    let red = dual.row_reduce();
    if red.pivots.len() != n {
        return Err(TableauError::Invalid("stabilizers dependent".into()));
    }
    let mut destab: Vec<PauliOp> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = BitVec::zeros(2 * n);
        for (k, &p) in red.pivots.iter().enumerate() {
            if red.transform.get(k, i) {
                v.set(p, true);
            }
        }
        let mut d = PauliOp::from_symplectic(&v);
        for (j, prev) in destab.iter().enumerate() {
            if !d.commutes_unchecked(prev) {
                d.mul_assign_unchecked(&gens[j]);
            }
        }
        destab.push(d.unsigned());
    }
    Ok(destab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn measure_z_on_zero() {
        let mut t = Tableau::new(1);
        let out = t
            .measure(&pauli("Z"), MeasureMode::Forced(Sign::Plus))
            .unwrap();
        assert!(out.deterministic);
        assert_eq!(out.sign, Sign::Plus);
        assert!(t
            .measure(&pauli("Z"), MeasureMode::Forced(Sign::Minus))
            .is_err());
    }

    #[test]
    fn sampled_x_is_balanced() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut plus = 0;
        for _ in 0..400 {
            let mut t = Tableau::new(1);
            let out = t
                .measure(&pauli("X"), MeasureMode::Sample(&mut rng))
                .unwrap();
            assert!(!out.deterministic);
            plus += (out.sign == Sign::Plus) as i32;
            let again = t
                .measure(&pauli("X"), MeasureMode::Forced(out.sign))
                .unwrap();
            assert!(again.deterministic);
        }
        assert!((140..260).contains(&plus), "{plus}");
    }

    #[test]
    fn cx_spreads_x() {
        let mut t = Tableau::from_stabilizers(&[pauli("XI"), pauli("IZ")]).unwrap();
        t.apply(Gate::CX(0, 1)).unwrap();
        assert_eq!(t.expectation(&pauli("XX")).unwrap(), Some(Sign::Plus));
        assert!(t.apply(Gate::H(5)).is_err());
        t.validate().unwrap();
    }

    #[test]
    fn extend_and_discard() {
        let mut t = Tableau::new(1);
        t.extend(1, InitState::Plus);
        assert_eq!(t.stabilizers(), &[pauli("ZI"), pauli("IX")]);
        t.apply(Gate::CX(1, 0)).unwrap();
        assert!(matches!(
            t.clone().discard(&[1]),
            Err(TableauError::Entangled(1))
        ));
        t.measure(&pauli("IZ"), MeasureMode::Forced(Sign::Minus))
            .unwrap();
        t.discard(&[1]).unwrap();
        assert_eq!(t.expectation(&pauli("Z")).unwrap(), Some(Sign::Minus));
    }

    #[test]
    fn canonical_forms() {
        let mut a = Tableau::new(2);
        let b = a.clone();
        a.measure(&pauli("ZI"), MeasureMode::Forced(Sign::Plus))
            .unwrap();
        a.measure(&pauli("ZI"), MeasureMode::Forced(Sign::Plus))
            .unwrap();
        assert_eq!(a.canonical(), b.canonical());
        let mut c = Tableau::new(1);
        c.apply(Gate::X(0)).unwrap();
        let (cc, dc) = (c.canonical(), Tableau::new(1).canonical());
        assert_eq!(cc.matrix(), dc.matrix());
        assert_ne!(cc.signs(), dc.signs());
    }

    #[test]
    fn products_in_group() {
        let t = Tableau::from_stabilizers(&[pauli("XX"), pauli("-ZZ")]).unwrap();
        assert_eq!(t.expectation(&pauli("YY")).unwrap(), Some(Sign::Plus));
        assert_eq!(t.expectation(&pauli("XI")).unwrap(), None);
        t.validate().unwrap();
    }
}
