//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed into `u64` words. Elimination always pivots on the lowest
//! remaining row index and, within a row, the lowest set column, so every
//! witness and kernel basis is reproducible bit for bit.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A bit vector of fixed length. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, leftmost is index 0.
    pub fn from_str_bits(s: &str) -> Self {
        let bits: Vec<bool> = s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect();
        Self::from_bits(&bits)
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let m = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
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

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut v = F2Vector::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A dense GF(2) matrix stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: vec![F2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            cols: n,
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<F2Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: r.len(),
            });
        }
        Ok(F2Matrix { cols, rows })
    }

    /// Rows given as `0`/`1` strings, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Self {
        let rows: Vec<F2Vector> = rows.iter().map(|s| F2Vector::from_str_bits(s)).collect();
        let cols = rows.first().map_or(0, F2Vector::len);
        Self::from_rows(cols, rows).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b);
    }

    pub fn push_row(&mut self, row: F2Vector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `v^T M` for a row-coefficient vector `v`.
    pub fn left_mul(&self, v: &F2Vector) -> Result<F2Vector> {
        if v.len() != self.rows.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                actual: v.len(),
            });
        }
        let mut out = F2Vector::zeros(self.cols);
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `M k` for a column vector `k`.
    pub fn right_mul(&self, k: &F2Vector) -> Result<F2Vector> {
        if k.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: k.len(),
            });
        }
        Ok(F2Vector::from_bits(
            &self.rows.iter().map(|r| r.dot(k)).collect::<Vec<_>>(),
        ))
    }

    /// `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| other.left_mul(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Matrix {
            cols: other.cols,
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(F2Vector::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// Incrementally built reduced row echelon basis of a row space.
///
/// Each stored row has a pivot (its lowest set column) and is zero at every
/// other stored pivot. When witness tracking is on, every stored row carries
/// the combination of inserted rows that produced it.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    basis: Vec<F2Vector>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    combos: Option<Vec<F2Vector>>,
    inserted: usize,
    capacity: usize,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon {
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; cols],
            combos: None,
            inserted: 0,
            capacity: 0,
        }
    }

    /// Tracks, for up to `max_inputs` inserted rows, which inputs combine to
    /// each basis row.
    pub fn with_witnesses(cols: usize, max_inputs: usize) -> Self {
        let mut e = Self::new(cols);
        e.combos = Some(Vec::new());
        e.capacity = max_inputs;
        e
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` modulo the row space; returns the remainder and, when
    /// tracking, the input combination that was subtracted.
    pub fn reduce(&self, v: &F2Vector) -> (F2Vector, Option<F2Vector>) {
        let mut rem = v.clone();
        let mut combo = self.combos.as_ref().map(|_| F2Vector::zeros(self.capacity));
        for (i, &p) in self.pivots.iter().enumerate() {
            if rem.get(p) {
                rem.xor_assign(&self.basis[i]);
                if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                    c.xor_assign(&cs[i]);
                }
            }
        }
        (rem, combo)
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts the next input row. Returns `Ok(None)` if it was independent,
    /// or `Ok(Some(c))` if it reduced to zero, where `c` is a dependency among
    /// the inputs (the left-kernel vector, empty when not tracking).
    pub fn insert(&mut self, v: &F2Vector) -> Result<Option<F2Vector>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let idx = self.inserted;
        self.inserted += 1;
        if self.combos.is_some() && idx >= self.capacity {
            return Err(Error::DimensionMismatch {
                expected: self.capacity,
                actual: idx + 1,
            });
        }
        let (rem, combo) = self.reduce(v);
        let combo = combo.map(|mut c| {
            c.flip(idx);
            c
        });
        let Some(p) = rem.first_one() else {
            return Ok(Some(combo.unwrap_or_default()));
        };
        // Clear the new pivot from existing rows.
        for i in 0..self.basis.len() {
            if self.basis[i].get(p) {
                self.basis[i].xor_assign(&rem);
                if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    cs[i].xor_assign(c);
                }
            }
        }
        self.pivot_row[p] = Some(self.basis.len());
        self.pivots.push(p);
        self.basis.push(rem);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.push(c);
        }
        Ok(None)
    }

    /// Row index in the basis whose pivot is column `c`.
    pub fn pivot_row_of(&self, c: usize) -> Option<usize> {
        self.pivot_row[c]
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    let mut e = RowEchelon::new(m.cols);
    for r in &m.rows {
        e.insert(r).expect("row length checked at construction");
    }
    e.rank()
}

/// Whether `v` is a sum of rows of `m`; on success returns the witness `w`
/// with `w^T m = v`.
pub fn in_span(m: &F2Matrix, v: &F2Vector) -> Result<Option<F2Vector>> {
    if v.len() != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.cols,
            actual: v.len(),
        });
    }
    let mut e = RowEchelon::with_witnesses(m.cols, m.rows());
    for r in &m.rows {
        e.insert(r)?;
    }
    let (rem, combo) = e.reduce(v);
    Ok(rem
        .is_zero()
        .then(|| combo.expect("witness tracking is on")))
}

/// Basis of `{k : M k = 0}`, one vector per free column, in column order.
pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    let mut e = RowEchelon::new(m.cols);
    for r in &m.rows {
        e.insert(r).expect("row length checked at construction");
    }
    (0..m.cols)
        .filter(|&c| e.pivot_row_of(c).is_none())
        .map(|free| {
            let mut k = F2Vector::unit(m.cols, free);
            for (row, &p) in e.basis().iter().zip(e.pivots()) {
                if row.get(free) {
                    k.set(p, true);
                }
            }
            k
        })
        .collect()
}

/// Basis of `{w : w^T M = 0}`, the dependencies among the rows.
pub fn left_kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    let mut e = RowEchelon::with_witnesses(m.cols, m.rows());
    let mut out = Vec::new();
    for r in &m.rows {
        if let Some(dep) = e.insert(r).expect("row length checked at construction") {
            out.push(dep);
        }
    }
    out
}
