//! Dense linear algebra over GF(2).
//!
//! Vectors are rows. `BitMatrix::mul_vec` computes `M·vᵀ` and is the only place
//! a vector plays the role of a column.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

/// Largest rank for which [`BitMatrix::enumerate_span`] will iterate.
pub const SPAN_ENUMERATION_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("span of rank {rank} exceeds the enumeration limit of rank {limit}")]
    SpanTooLarge { rank: usize, limit: usize },
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones at `positions`.
    pub fn from_support(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &p in positions {
            v.set(p, true);
        }
        v
    }

    /// Low `len` bits of `value`, bit `i` of the integer at position `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        debug_assert!(len <= WORD);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == WORD {
                u64::MAX
            } else {
                (1u64 << len) - 1
            };
            v.words[0] = value & mask;
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`]; only meaningful for `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_len(&self, other: &Self) -> Result<(), Gf2Error> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Gf2Error::DimensionMismatch {
                expected: self.len,
                found: other.len,
            })
        }
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<(), Gf2Error> {
        self.check_len(other)?;
        self.xor_assign_unchecked(other);
        Ok(())
    }

    pub(crate) fn xor_assign_unchecked(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Result<Self, Gf2Error> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    pub fn and(&self, other: &Self) -> Result<Self, Gf2Error> {
        self.check_len(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        Ok(out)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &Self) -> Result<bool, Gf2Error> {
        self.check_len(other)?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Positions of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Concatenation `self | other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        let mut out = Self::zeros(end - start);
        for i in self.iter_ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    /// Parses a string of `0`/`1` characters, leftmost character at index 0.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Gf2Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bools(bits))
    }
}

/// Dense GF(2) matrix stored as rows of uniform length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`BitMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    /// Reduced row-echelon form; same shape as the input, zero rows last.
    pub reduced: BitMatrix,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            ncols,
            rows: vec![BitVector::zeros(ncols); nrows],
        }
    }

    /// Matrix with no rows.
    pub fn empty(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVector::from_support(n, &[i])).collect();
        Self { ncols: n, rows }
    }

    /// Builds a matrix with `ncols` columns; every row must have that length.
    pub fn from_rows(ncols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { ncols, rows })
    }

    /// Parses rows of `0`/`1` strings; column count taken from the first row.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()?;
        let ncols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(ncols, parsed)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<(), Gf2Error> {
        if row.len() != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `M·vᵀ`, a vector of length `nrows`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bools(
            self.rows.iter().map(|r| r.dot_unchecked(v)),
        ))
    }

    /// `A·Bᵀ`: entry (i, j) is the inner product of row i of `self` and row j of `other`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.ncols != other.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: other.ncols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bools(other.rows.iter().map(|b| a.dot_unchecked(b))))
            .collect();
        Ok(Self {
            ncols: other.nrows(),
            rows,
        })
    }

    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.ncols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign_unchecked(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        Echelon {
            reduced: Self {
                ncols: self.ncols,
                rows,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{v : M·vᵀ = 0}`, one row per free column.
    pub fn nullspace(&self) -> Self {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.ncols);
                v.set(free, true);
                for (i, &p) in ech.pivots.iter().enumerate() {
                    if ech.reduced.rows[i].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Self {
            ncols: self.ncols,
            rows,
        }
    }

    /// Some `x` with `M·xᵀ = b`, if the system is consistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, Gf2Error> {
        if b.len() != self.nrows() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.nrows(),
                found: b.len(),
            });
        }
        let augmented: Vec<BitVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVector::from_bools([b.get(i)])))
            .collect();
        let ech = Self {
            ncols: self.ncols + 1,
            rows: augmented,
        }
        .rref();
        if ech.pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.ncols);
        for (i, &p) in ech.pivots.iter().enumerate() {
            if ech.reduced.rows[i].get(self.ncols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    pub fn span_contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        RowSpace::new(self).contains(v)
    }

    /// Every element of the row span exactly once, in Gray-code order starting at zero.
    pub fn enumerate_span(&self) -> Result<SpanIter, Gf2Error> {
        let space = RowSpace::new(self);
        let rank = space.dim();
        if rank > SPAN_ENUMERATION_LIMIT {
            return Err(Gf2Error::SpanTooLarge {
                rank,
                limit: SPAN_ENUMERATION_LIMIT,
            });
        }
        Ok(SpanIter {
            basis: space.basis,
            current: BitVector::zeros(self.ncols),
            step: 0,
            total: 1u64 << rank,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.to_string()))
            .finish()
    }
}

/// Iterator returned by [`BitMatrix::enumerate_span`].
#[derive(Debug, Clone)]
pub struct SpanIter {
    basis: Vec<BitVector>,
    current: BitVector,
    step: u64,
    total: u64,
}

impl Iterator for SpanIter {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign_unchecked(&self.basis[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanIter {}

/// A row space held in reduced echelon form for repeated membership tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSpace {
    ncols: usize,
    basis: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &BitMatrix) -> Self {
        let ech = m.rref();
        let mut basis = ech.reduced.rows;
        basis.truncate(ech.rank);
        Self {
            ncols: m.ncols,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    /// Residue of `v` after eliminating every pivot; zero iff `v` is in the span.
    pub fn reduce(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.ncols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign_unchecked(row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool, Gf2Error> {
        Ok(self.reduce(v)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(rows).unwrap()
    }

    /// Rank by brute force: log2 of the number of distinct subset sums.
    fn brute_rank(mat: &BitMatrix) -> usize {
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << mat.nrows()) {
            let mut acc = BitVector::zeros(mat.ncols());
            for r in 0..mat.nrows() {
                if mask >> r & 1 == 1 {
                    acc.xor_assign(mat.row(r)).unwrap();
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.into_iter().map(BitVector::from_bools).collect())
                        .unwrap()
                },
            )
        })
    }

    #[test]
    fn bitvector_parse_display() {
        let v: BitVector = "10110".parse().unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.to_string(), "10110");
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert!("10a".parse::<BitVector>().is_err());
    }

    #[test]
    fn xor_length_mismatch() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert_eq!(
            a.xor(&b),
            Err(Gf2Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let w = v.concat(&BitVector::from_support(3, &[1]));
        assert_eq!(w.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129, 131]);
        assert_eq!(
            w.slice(64, 130).iter_ones().collect::<Vec<_>>(),
            vec![0, 65]
        );
    }

    #[test]
    fn rref_identity() {
        let id = BitMatrix::identity(3);
        let e = id.rref();
        assert_eq!(e.reduced, id);
        assert_eq!(e.rank, 3);
        assert_eq!(e.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows() {
        let e = m(&["11", "11"]).rref();
        assert_eq!(e.reduced, m(&["11", "00"]));
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
    }

    #[test]
    fn rref_random_4x6_matches_enumeration() {
        let mat = m(&["101100", "011010", "110110", "000111"]);
        // subset-sum enumeration gives 8 distinct vectors: row 3 = row 1 + row 2
        assert_eq!(brute_rank(&mat), 3);
        assert_eq!(mat.rank(), 3);
    }

    #[test]
    fn nullspace_even_weight() {
        let ns = m(&["111"]).nullspace();
        assert_eq!(ns.nrows(), 2);
        let span: std::collections::BTreeSet<String> = ns
            .enumerate_span()
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        // all v in GF(2)^3 with v0+v1+v2 = 0
        let expected: std::collections::BTreeSet<String> = ["000", "110", "011", "101"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(span, expected);
    }

    #[test]
    fn nullspace_trivial_and_full() {
        assert_eq!(BitMatrix::identity(4).nullspace().nrows(), 0);
        let full = BitMatrix::zeros(2, 4).nullspace();
        assert_eq!(full.nrows(), 4);
        assert_eq!(full.rank(), 4);
    }

    #[test]
    fn solve_cases() {
        let id = BitMatrix::identity(4);
        let b: BitVector = "1011".parse().unwrap();
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));

        let one = m(&["11"]);
        let b1 = BitVector::from_bools([true]);
        let x = one.solve(&b1).unwrap().unwrap();
        assert_eq!(one.mul_vec(&x).unwrap(), b1);

        let inconsistent = m(&["10", "00"]);
        assert_eq!(inconsistent.solve(&"01".parse().unwrap()).unwrap(), None);

        assert!(matches!(
            id.solve(&BitVector::zeros(3)),
            Err(Gf2Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn span_membership() {
        let basis = m(&["110", "011"]);
        // combinations: 000, 110, 011, 101
        assert!(basis.span_contains(&"101".parse().unwrap()).unwrap());
        assert!(!basis.span_contains(&"100".parse().unwrap()).unwrap());
        assert!(basis.span_contains(&BitVector::zeros(3)).unwrap());
        assert!(basis.span_contains(&BitVector::zeros(2)).is_err());
    }

    #[test]
    fn enumerate_small_spans() {
        let all: Vec<String> = BitMatrix::identity(2)
            .enumerate_span()
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["00", "01", "10", "11"]);
        let rep: Vec<String> = m(&["11"])
            .enumerate_span()
            .unwrap()
            .map(|v| v.to_string())
            .collect();
        assert_eq!(rep, vec!["00", "11"]);
    }

    #[test]
    fn enumerate_hamming_codewords_distinct() {
        let g = m(&["1000110", "0100101", "0010011", "0001111"]);
        let words: Vec<BitVector> = g.enumerate_span().unwrap().collect();
        assert_eq!(words.len(), 16);
        let distinct: std::collections::HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn enumerate_guard() {
        let big = BitMatrix::identity(25);
        assert_eq!(
            big.enumerate_span().unwrap_err(),
            Gf2Error::SpanTooLarge {
                rank: 25,
                limit: 24
            }
        );
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(mat in arb_matrix(6, 9)) {
            let once = mat.rref();
            let twice = once.reduced.rref();
            prop_assert_eq!(&twice.reduced, &once.reduced);
            prop_assert_eq!(twice.rank, once.rank);
        }

        #[test]
        fn rank_matches_enumeration(mat in arb_matrix(6, 8)) {
            prop_assert_eq!(mat.rank(), brute_rank(&mat));
        }

        #[test]
        fn rank_nullity(mat in arb_matrix(7, 10)) {
            let ns = mat.nullspace();
            prop_assert_eq!(mat.rank() + ns.nrows(), mat.ncols());
            for v in ns.rows() {
                prop_assert!(mat.mul_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn span_elements_are_members(mat in arb_matrix(5, 8)) {
            let it = mat.enumerate_span().unwrap();
            prop_assert_eq!(it.len(), 1usize << mat.rank());
            for v in it {
                prop_assert!(mat.span_contains(&v).unwrap());
            }
        }

        #[test]
        fn solve_satisfies_system(mat in arb_matrix(6, 8), bits in proptest::collection::vec(any::<bool>(), 6)) {
            let b = BitVector::from_bools(bits.into_iter().take(mat.nrows()));
            match mat.solve(&b).unwrap() {
                Some(x) => prop_assert_eq!(mat.mul_vec(&x).unwrap(), b),
                None => {
                    // inconsistent: b is outside the column space
                    prop_assert!(!mat.transpose().span_contains(&b).unwrap());
                }
            }
        }
    }
}
