//! Dense linear algebra over F2.
//!
//! [`BitVec`] and [`BitMatrix`] pack bits into `u64` words. Every routine that
//! eliminates uses the same pivot rule (leftmost column, lowest row index), so
//! results are reproducible bit for bit.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("index ({row}, {col}) out of range for {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed text matrix: {0}")]
    Parse(String),
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// Inner product over F2.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Bits `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        BitVec::from_indices(
            len,
            self.iter_ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    /// Bits gathered at the given positions.
    pub fn gather(&self, positions: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if self.get(p) {
                v.set(j, true);
            }
        }
        v
    }

    /// Copy resized to `len`, dropping or zero-padding trailing bits.
    pub fn resized(&self, len: usize) -> BitVec {
        BitVec::from_indices(len, self.iter_ones().filter(|&i| i < len))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major dense matrix over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    data: Vec<BitVec>,
}

/// Output of [`BitMatrix::row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: BitMatrix,
    pub pivots: Vec<usize>,
    /// Invertible `rows x rows` matrix with `transform * m = rref`.
    pub transform: BitMatrix,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, F2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(F2Error::Dimension(format!(
                "row of length {} in matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(BitMatrix { cols, data: rows })
    }

    /// Builds from 0/1 integers; all rows must have equal length.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self, F2Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(F2Error::Dimension("ragged rows".into()));
                }
                Ok(BitVec::from_indices(
                    cols,
                    r.iter()
                        .enumerate()
                        .filter(|(_, &b)| b & 1 == 1)
                        .map(|(i, _)| i),
                ))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BitMatrix { cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn checked_get(&self, r: usize, c: usize) -> Result<bool, F2Error> {
        self.check(r, c)?;
        Ok(self.get(r, c))
    }

    pub fn checked_set(&mut self, r: usize, c: usize, value: bool) -> Result<(), F2Error> {
        self.check(r, c)?;
        self.set(r, c, value);
        Ok(())
    }

    fn check(&self, r: usize, c: usize) -> Result<(), F2Error> {
        if r >= self.rows() || c >= self.cols {
            return Err(F2Error::OutOfRange {
                row: r,
                col: c,
                rows: self.rows(),
                cols: self.cols,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut BitVec {
        &mut self.data[r]
    }

    pub fn iter_rows(&self) -> std::slice::Iter<'_, BitVec> {
        self.data.iter()
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.data
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.push(row);
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows(), (0..self.rows()).filter(|&r| self.get(r, c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.data.iter().enumerate() {
            for c in row.iter_ones() {
                t.data[c].set(r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.cols != other.rows() {
            return Err(F2Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols,
                other.rows(),
                other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            data,
        })
    }

    /// `self * v^T` as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, F2Error> {
        if v.len() != self.cols {
            return Err(F2Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(BitVec::from_indices(
            self.rows(),
            self.data
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(v))
                .map(|(i, _)| i),
        ))
    }

    /// `v * self`, i.e. the XOR of the rows selected by `v`.
    pub fn vec_mul(&self, v: &BitVec) -> Result<BitVec, F2Error> {
        if v.len() != self.rows() {
            return Err(F2Error::Dimension(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows()
            )));
        }
        let mut acc = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            acc.xor_assign(&self.data[i]);
        }
        Ok(acc)
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.cols != other.cols {
            return Err(F2Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.rows() != other.rows() {
            return Err(F2Error::Dimension("hstack row mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(BitMatrix {
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: cols.len(),
            data: self.data.iter().map(|r| r.gather(cols)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// Row rank over F2.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        eliminate(&mut rows, self.cols, None).len()
    }

    /// Reduced row echelon form with pivot columns and the row transform.
    pub fn row_reduce(&self) -> RowReduction {
        let mut rows = self.data.clone();
        let mut transform: Vec<BitVec> = BitMatrix::identity(self.rows()).data;
        let pivots = eliminate(&mut rows, self.cols, Some(&mut transform));
        RowReduction {
            rref: BitMatrix {
                cols: self.cols,
                data: rows,
            },
            pivots,
            transform: BitMatrix {
                cols: self.rows(),
                data: transform,
            },
        }
    }

    /// Basis of `{v : self * v^T = 0}` in reduced row echelon form.
    pub fn nullspace(&self) -> BitMatrix {
        let mut rows = self.data.clone();
        let pivots = eliminate(&mut rows, self.cols, None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if rows[i].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        let mut out = BitMatrix {
            cols: self.cols,
            data: basis,
        };
        let n = out.rows();
        eliminate(&mut out.data, self.cols, None);
        debug_assert_eq!(out.rows(), n);
        out
    }

    /// Basis of `{u : u * self = 0}`, the nullspace of the transpose.
    pub fn row_nullspace(&self) -> BitMatrix {
        self.transpose().nullspace()
    }

    /// Dimension of the row nullspace.
    pub fn row_nullity(&self) -> usize {
        self.rows() - self.rank()
    }

    /// Some `x` with `self * x^T = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, F2Error> {
        if b.len() != self.rows() {
            return Err(F2Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows()
            )));
        }
        let mut rows: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut aug = r.resized(self.cols + 1);
                if b.get(i) {
                    aug.set(self.cols, true);
                }
                aug
            })
            .collect();
        let pivots = eliminate(&mut rows, self.cols + 1, None);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if rows[i].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows(), self.cols);
        for r in &self.data {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, F2Error> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| F2Error::Parse("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| F2Error::Parse(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        let [rows, cols] = dims[..] else {
            return Err(F2Error::Parse(format!("bad header {header:?}")));
        };
        let mut data = Vec::with_capacity(rows);
        for (i, line) in lines.enumerate() {
            if i >= rows {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(F2Error::Parse("more rows than declared".into()));
            }
            if line.len() != cols {
                return Err(F2Error::Parse(format!(
                    "row {i} has {} characters, expected {cols}",
                    line.len()
                )));
            }
            let mut v = BitVec::zeros(cols);
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => v.set(c, true),
                    other => return Err(F2Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
            data.push(v);
        }
        if data.len() != rows {
            return Err(F2Error::Parse(format!(
                "declared {rows} rows, found {}",
                data.len()
            )));
        }
        Ok(BitMatrix { cols, data })
    }
}

impl FromStr for BitMatrix {
    type Err = F2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BitMatrix::from_text(s)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination in place. Moves pivot rows to the top, returns the
/// pivot columns, and leaves zero rows at the bottom. When `transform` is given
/// the same row operations are mirrored into it.
fn eliminate(
    rows: &mut [BitVec],
    cols: usize,
    mut transform: Option<&mut Vec<BitVec>>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = transform.as_deref_mut() {
            t.swap(r, p);
        }
        let pivot_row = rows[r].clone();
        let pivot_t = transform.as_deref().map(|t| t[r].clone());
        for i in 0..rows.len() {
            if i != r && rows[i].get(c) {
                rows[i].xor_assign(&pivot_row);
                if let (Some(t), Some(pt)) = (transform.as_deref_mut(), pivot_t.as_ref()) {
                    t[i].xor_assign(pt);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incrementally built row space held in echelon form, for membership tests
/// and greedy independent-set selection.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    basis: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        RowSpace {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut s = RowSpace::new(m.cols());
        for r in m.iter_rows() {
            s.insert(r.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduces `v` against the stored basis.
    pub fn reduce(&self, v: &mut BitVec) {
        for (p, b) in &self.basis {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v;
        self.reduce(&mut w);
        match w.first_one() {
            None => false,
            Some(p) => {
                for (_, b) in self.basis.iter_mut() {
                    if b.get(p) {
                        b.xor_assign(&w);
                    }
                }
                self.basis.push((p, w));
                true
            }
        }
    }

    pub fn basis_matrix(&self) -> BitMatrix {
        let mut rows: Vec<_> = self.basis.clone();
        rows.sort_by_key(|(p, _)| *p);
        BitMatrix {
            cols: self.len,
            data: rows.into_iter().map(|(_, b)| b).collect(),
        }
    }
}
