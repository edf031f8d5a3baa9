//! Pauli operators in symplectic form.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use thiserror::Error;

use crate::f2::BitVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("operators act on {0} and {1} qubits")]
    SizeMismatch(usize, usize),
    #[error("qubit {qubit} out of range for {n} qubits")]
    Index { qubit: usize, n: usize },
    #[error("cannot parse Pauli string {0:?}")]
    Parse(String),
    #[error("operator {0} is not Hermitian")]
    NotHermitian(String),
}

/// Single-qubit Pauli.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Eigenvalue sign of a Hermitian Pauli or a measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(negative: bool) -> Sign {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        Sign::from_bit(self.is_minus() ^ other.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_bit(!self.is_minus())
    }
}

/// `i^phase` times a tensor product of `I, X, Y, Z`, with `Y` the Hermitian
/// Pauli. Hermitian operators have an even phase.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// Positive operator with the given symplectic bits.
    pub fn from_bits(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        PauliOp { x, z, phase: 0 }
    }

    /// Splits a `2n`-bit `[x | z]` row.
    pub fn from_symplectic(row: &BitVec) -> Self {
        let n = row.len() / 2;
        Self::from_bits(row.slice(0, n), row.slice(n, n))
    }

    pub fn x_type<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self::from_bits(BitVec::from_indices(n, support), BitVec::zeros(n))
    }

    pub fn z_type<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        Self::from_bits(BitVec::zeros(n), BitVec::from_indices(n, support))
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(qubit, p);
        op
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Power of `i` in front of the tensor product.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Sign of a Hermitian operator.
    pub fn sign(&self) -> Result<Sign, PauliError> {
        match self.phase {
            0 => Ok(Sign::Plus),
            2 => Ok(Sign::Minus),
            _ => Err(PauliError::NotHermitian(self.to_string())),
        }
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.phase = if sign.is_minus() { 2 } else { 0 };
        self
    }

    /// Same Pauli letters with `+` sign.
    pub fn unsigned(&self) -> Self {
        PauliOp {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) % 4;
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    /// Qubits carrying `Y` or `Z`.
    pub fn z_support(&self) -> Vec<usize> {
        self.z.iter_ones().collect()
    }

    /// Qubits carrying `X` or `Y`.
    pub fn x_support(&self) -> Vec<usize> {
        self.x.iter_ones().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// `[x | z]` as a `2n`-bit vector.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::SizeMismatch(self.n(), other.n()));
        }
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &PauliOp) -> bool {
        self.x.dot(&other.z) == self.z.dot(&other.x)
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::SizeMismatch(self.n(), other.n()));
        }
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// `self <- self * other`.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOp) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        for ((&x1, &z1), (&x2, &z2)) in self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words().iter().zip(other.z.words()))
        {
            let y1 = x1 & z1;
            let xo1 = x1 & !z1;
            let zo1 = !x1 & z1;
            let p = (y1 & z2 & !x2) | (xo1 & x2 & z2) | (zo1 & x2 & !z2);
            let m = (y1 & x2 & !z2) | (xo1 & z2 & !x2) | (zo1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
        }
        let delta = (plus as i64 - minus as i64).rem_euclid(4) as u8;
        self.phase = (self.phase + other.phase + delta) % 4;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Copy on `n` qubits, truncating or padding with identity.
    pub fn resized(&self, n: usize) -> PauliOp {
        PauliOp {
            x: self.x.resized(n),
            z: self.z.resized(n),
            phase: self.phase,
        }
    }

    /// Restriction to `qubits`, in the given order.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOp {
        PauliOp {
            x: self.x.gather(qubits),
            z: self.z.gather(qubits),
            phase: self.phase,
        }
    }

    /// Embeds an operator on `self.n()` qubits into `n` qubits via `map`.
    pub fn embed(&self, n: usize, map: &[usize]) -> PauliOp {
        assert_eq!(map.len(), self.n());
        let mut out = PauliOp::identity(n);
        out.phase = self.phase;
        for (q, &m) in map.iter().enumerate() {
            out.set(m, self.get(q));
        }
        out
    }

    pub(crate) fn conj_h(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        if x && z {
            self.negate();
        }
        self.x.set(q, z);
        self.z.set(q, x);
    }

    pub(crate) fn conj_s(&mut self, q: usize) {
        let (x, z) = (self.x.get(q), self.z.get(q));
        if x && z {
            self.negate();
        }
        if x {
            self.z.set(q, !z);
        }
    }

    pub(crate) fn conj_x(&mut self, q: usize) {
        if self.z.get(q) {
            self.negate();
        }
    }

    pub(crate) fn conj_z(&mut self, q: usize) {
        if self.x.get(q) {
            self.negate();
        }
    }

    pub(crate) fn conj_cx(&mut self, c: usize, t: usize) {
        let (xc, zc, xt, zt) = (self.x.get(c), self.z.get(c), self.x.get(t), self.z.get(t));
        if xc && zt && (xt == zc) {
            self.negate();
        }
        self.x.set(t, xt ^ xc);
        self.z.set(c, zc ^ zt);
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = PauliError;

    /// Accepts an optional `+`, `-`, `+i`, `-i` or `i` prefix followed by
    /// `I/X/Y/Z` letters (`_` is accepted for identity).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let mut op = PauliOp::identity(body.chars().count());
        op.phase = phase;
        for (q, ch) in body.chars().enumerate() {
            let p = match ch {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(PauliError::Parse(s.to_string())),
            };
            op.set(q, p);
        }
        Ok(op)
    }
}

/// Parses a Pauli string, panicking on malformed input. Intended for literals.
pub fn pauli(s: &str) -> PauliOp {
    s.parse().expect("valid Pauli literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        let x = pauli("X");
        let y = pauli("Y");
        let z = pauli("Z");
        assert_eq!(x.mul(&y).unwrap(), pauli("+iZ"));
        assert_eq!(y.mul(&z).unwrap(), pauli("+iX"));
        assert_eq!(z.mul(&x).unwrap(), pauli("+iY"));
        assert_eq!(y.mul(&x).unwrap(), pauli("-iZ"));
        assert_eq!(x.mul(&z).unwrap(), pauli("-iY"));
        assert_eq!(y.mul(&y).unwrap(), pauli("I"));
    }

    #[test]
    fn commutation() {
        assert!(!pauli("XI").commutes(&pauli("ZI")).unwrap());
        assert!(pauli("XX").commutes(&pauli("ZZ")).unwrap());
        assert!(pauli("XYZ").commutes(&pauli("XYZ")).unwrap());
        assert_eq!(
            pauli("XX").commutes(&pauli("Z")),
            Err(PauliError::SizeMismatch(2, 1))
        );
    }

    #[test]
    fn weight_and_supports() {
        let p = pauli("-XIYZ");
        assert_eq!(p.weight(), 3);
        assert_eq!(p.z_support(), vec![2, 3]);
        assert_eq!(p.x_support(), vec![0, 2]);
        assert_eq!(p.sign().unwrap(), Sign::Minus);
        assert!(pauli("iX").sign().is_err());
    }

    #[test]
    fn conjugation_rules() {
        let mut p = pauli("Y");
        p.conj_h(0);
        assert_eq!(p, pauli("-Y"));
        let mut p = pauli("X");
        p.conj_s(0);
        assert_eq!(p, pauli("Y"));
        p.conj_s(0);
        assert_eq!(p, pauli("-X"));
        let mut p = pauli("XI");
        p.conj_cx(0, 1);
        assert_eq!(p, pauli("XX"));
        let mut p = pauli("IZ");
        p.conj_cx(0, 1);
        assert_eq!(p, pauli("ZZ"));
        let mut p = pauli("YY");
        p.conj_cx(0, 1);
        assert_eq!(p, pauli("-XZ"));
    }
}
