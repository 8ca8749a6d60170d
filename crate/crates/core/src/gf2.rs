//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed into `u64` words, bit `i` living in word `i / 64` at
//! position `i % 64`. Addition is XOR. Everything here is exact and
//! deterministic; the reduced row echelon form of a rowspace is unique, so
//! results never depend on the order in which rows were supplied.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is not in reduced row echelon form")]
    NotEchelonized,
}

/// A vector over GF(2) with a fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    /// Builds a vector from explicit 0/1 entries; any nonzero byte counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `positions` (duplicates cancel).
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for p in positions {
            v.flip(p);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from_word(0)
    }

    fn first_one_from_word(&self, start_word: usize) -> Option<usize> {
        self.words[start_word..]
            .iter()
            .position(|&w| w != 0)
            .map(|k| {
                let wi = start_word + k;
                wi * WORD_BITS + self.words[wi].trailing_zeros() as usize
            })
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<(), LinalgError> {
        self.check_len(other.len)?;
        self.xor_from_word(other, 0);
        Ok(())
    }

    // Callers guarantee equal lengths.
    fn xor_from_word(&mut self, other: &BitVector, start_word: usize) {
        for (a, b) in self.words[start_word..]
            .iter_mut()
            .zip(&other.words[start_word..])
        {
            *a ^= *b;
        }
    }

    fn check_len(&self, found: usize) -> Result<(), LinalgError> {
        if self.len != found {
            return Err(LinalgError::Dimension {
                expected: self.len,
                found,
            });
        }
        Ok(())
    }

    /// The entries as a `0`/`1` string, lowest index first.
    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}]", self.to_bitstring())
    }
}

/// A GF(2) matrix stored as a deduplicated list of rows.
///
/// After [`BitMatrix::rref`] the rows are nonzero, sorted by strictly
/// increasing pivot column, and every pivot column has a single 1.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
    pivot_cols: Option<Vec<usize>>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivot_cols: None,
        }
    }

    /// Builds a matrix from rows, dropping exact duplicates (first occurrence kept).
    pub fn from_rows(
        cols: usize,
        rows: impl IntoIterator<Item = BitVector>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::new(cols);
        let mut seen = HashSet::new();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            if seen.insert(row.clone()) {
                m.rows.push(row);
            }
        }
        Ok(m)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, present only on echelonized matrices.
    pub fn pivot_cols(&self) -> Option<&[usize]> {
        self.pivot_cols.as_deref()
    }

    /// Rank, present only on echelonized matrices.
    pub fn rank(&self) -> Option<usize> {
        self.pivot_cols.as_ref().map(Vec::len)
    }

    pub fn is_echelonized(&self) -> bool {
        self.pivot_cols.is_some()
    }

    pub fn rref(&self) -> BitMatrix {
        let mut ech = Echelon::new(self.cols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech.into_rref()
    }

    /// Rowspace membership; `self` must be echelonized.
    pub fn in_rowspace(&self, v: &BitVector) -> Result<bool, LinalgError> {
        Ok(self.residue(v)?.is_zero())
    }

    /// Reduces `v` by the pivot rows and returns what is left.
    pub fn residue(&self, v: &BitVector) -> Result<BitVector, LinalgError> {
        let pivots = self.pivot_cols.as_ref().ok_or(LinalgError::NotEchelonized)?;
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(pivots) {
            if r.get(p) {
                r.xor_from_word(row, p / WORD_BITS);
            }
        }
        Ok(r)
    }

    /// Assembles an already-reduced matrix; used when loading cached bases.
    pub(crate) fn from_rref_parts(cols: usize, rows: Vec<BitVector>) -> Result<Self, LinalgError> {
        let mut pivots = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != cols {
                return Err(LinalgError::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            pivots.push(row.first_one().ok_or(LinalgError::NotEchelonized)?);
        }
        if pivots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LinalgError::NotEchelonized);
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &p) in pivots.iter().enumerate() {
                if i != j && row.get(p) {
                    return Err(LinalgError::NotEchelonized);
                }
            }
        }
        Ok(Self {
            cols,
            rows,
            pivot_cols: Some(pivots),
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} pivots={:?}", self.rows.len(), self.cols, self.pivot_cols)?;
        for row in &self.rows {
            writeln!(f, "  {}", row.to_bitstring())?;
        }
        Ok(())
    }
}

/// Incremental Gaussian elimination.
///
/// Rows are reduced on insertion against the current pivots, so only
/// independent rows are ever stored and memory stays at `rank x cols` bits.
#[derive(Clone)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVector>,
    // column -> index into `rows` of the row whose leading bit it is
    pivot_of: Vec<Option<u32>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivot_of: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` in place until its leading bit is not a pivot (or it is zero).
    fn reduce_leading(&self, v: &mut BitVector) -> Option<usize> {
        let mut word = 0;
        loop {
            let lead = v.first_one_from_word(word)?;
            match self.pivot_of[lead] {
                Some(r) => {
                    word = lead / WORD_BITS;
                    v.xor_from_word(&self.rows[r as usize], word);
                }
                None => return Some(lead),
            }
        }
    }

    /// Inserts a row; returns `true` if it increased the rank.
    ///
    /// Panics on a length mismatch.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        if self.is_full() {
            return false;
        }
        match self.reduce_leading(&mut v) {
            Some(lead) => {
                self.pivot_of[lead] = Some(self.rows.len() as u32);
                self.rows.push(v);
                true
            }
            None => false,
        }
    }

    /// Inserts a sparse row given by its set positions (duplicates cancel).
    pub fn insert_positions(&mut self, positions: &[u32]) -> bool {
        if self.is_full() {
            return false;
        }
        let v = BitVector::from_positions(self.cols, positions.iter().map(|&p| p as usize));
        self.insert(v)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut r = v.clone();
        Ok(self.reduce_leading(&mut r).is_none())
    }

    /// Back-substitutes into reduced row echelon form.
    pub fn into_rref(self) -> BitMatrix {
        let mut order: Vec<(usize, BitVector)> = self
            .rows
            .into_iter()
            .map(|r| (r.first_one().expect("stored rows are nonzero"), r))
            .collect();
        order.sort_by_key(|(p, _)| *p);
        // Clear each pivot column from the rows above it, last pivot first.
        for i in (0..order.len()).rev() {
            let (p, pivot_row) = {
                let (p, r) = &order[i];
                (*p, r.clone())
            };
            let start = p / WORD_BITS;
            for (_, row) in order[..i].iter_mut() {
                if row.get(p) {
                    row.xor_from_word(&pivot_row, start);
                }
            }
        }
        let (pivots, rows): (Vec<usize>, Vec<BitVector>) = order.into_iter().unzip();
        BitMatrix {
            cols: self.cols,
            rows,
            pivot_cols: Some(pivots),
        }
    }
}

/// Expresses `target` as a sum of `rows`, returning the indices used.
///
/// Tracks the row combination alongside elimination, so it costs an extra
/// `rows.len()` bits per stored pivot; meant for certificates on modest inputs.
pub fn solve_combination(
    rows: &[BitVector],
    target: &BitVector,
) -> Result<Option<Vec<usize>>, LinalgError> {
    let cols = target.len();
    let n = rows.len();
    let mut pivots: Vec<(usize, BitVector, BitVector)> = Vec::new();
    let mut pivot_of: Vec<Option<usize>> = vec![None; cols];

    let reduce = |v: &mut BitVector,
                  combo: &mut BitVector,
                  pivots: &[(usize, BitVector, BitVector)],
                  pivot_of: &[Option<usize>]| {
        loop {
            let Some(lead) = v.first_one() else {
                return None;
            };
            match pivot_of[lead] {
                Some(k) => {
                    v.xor_from_word(&pivots[k].1, lead / WORD_BITS);
                    combo.xor_from_word(&pivots[k].2, 0);
                }
                None => return Some(lead),
            }
        }
    };

    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(LinalgError::Dimension {
                expected: cols,
                found: row.len(),
            });
        }
        let mut v = row.clone();
        let mut combo = BitVector::zeros(n);
        combo.set(i, true);
        if let Some(lead) = reduce(&mut v, &mut combo, &pivots, &pivot_of) {
            pivot_of[lead] = Some(pivots.len());
            pivots.push((lead, v, combo));
        }
    }

    let mut v = target.clone();
    let mut combo = BitVector::zeros(n);
    match reduce(&mut v, &mut combo, &pivots, &pivot_of) {
        Some(_) => Ok(None),
        None => Ok(Some(combo.iter_ones().collect())),
    }
}
