//! Classical binary codes: block codes given by a generator matrix, and
//! convolutional codes given by a polynomial generator matrix over GF(2)[D].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, Gf2Error};

/// Largest dimension for which codeword enumeration is attempted.
pub const MAX_ENUMERATED_DIMENSION: usize = 20;
/// Largest trellis state count (as a power of two) for free-distance search.
pub const MAX_STATE_BITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("generator matrix has rank {rank} but {rows} rows")]
    RankDeficient { rows: usize, rank: usize },
    #[error("generator matrix must have at least one row and one column")]
    EmptyGenerator,
    #[error("repetition length must be at least {min}, got {got}")]
    LengthTooSmall { min: usize, got: usize },
    #[error("code dimension {k} exceeds the enumeration limit {limit}")]
    DimensionTooLarge { k: usize, limit: usize },
    #[error("trellis has 2^{bits} states, limit is 2^{limit}")]
    TooManyStates { bits: usize, limit: usize },
    #[error("convolutional generator: {0}")]
    InvalidConvolutional(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Binary linear `[n, k, d]` block code.
///
/// The dual generator and both minimum distances are computed on first use.
/// A distance of `None` means the code (or its dual) has no nonzero codeword.
#[derive(Debug)]
pub struct BlockCode {
    name: String,
    generator: BitMatrix,
    dual: OnceLock<BitMatrix>,
    distance: OnceLock<Option<usize>>,
    dual_distance: OnceLock<Option<usize>>,
}

impl Clone for BlockCode {
    fn clone(&self) -> Self {
        let out = Self::unchecked(self.name.clone(), self.generator.clone());
        if let Some(d) = self.dual.get() {
            let _ = out.dual.set(d.clone());
        }
        if let Some(&d) = self.distance.get() {
            let _ = out.distance.set(d);
        }
        if let Some(&d) = self.dual_distance.get() {
            let _ = out.dual_distance.set(d);
        }
        out
    }
}

impl PartialEq for BlockCode {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.generator == other.generator
    }
}

impl BlockCode {
    fn unchecked(name: String, generator: BitMatrix) -> Self {
        Self {
            name,
            generator,
            dual: OnceLock::new(),
            distance: OnceLock::new(),
            dual_distance: OnceLock::new(),
        }
    }

    /// Code spanned by `generator`. Rank-deficient matrices are rejected rather
    /// than reduced, so `k` always equals the row count.
    pub fn from_generator(
        name: impl Into<String>,
        generator: BitMatrix,
    ) -> Result<Self, CodeError> {
        if generator.nrows() == 0 || generator.ncols() == 0 {
            return Err(CodeError::EmptyGenerator);
        }
        let rank = generator.rank();
        if rank != generator.nrows() {
            return Err(CodeError::RankDeficient {
                rows: generator.nrows(),
                rank,
            });
        }
        Ok(Self::unchecked(name.into(), generator))
    }

    /// The `[n, 1, n]` majority-vote code.
    pub fn repetition(n: usize) -> Result<Self, CodeError> {
        if n < 1 {
            return Err(CodeError::LengthTooSmall { min: 1, got: n });
        }
        let ones = BitVector::from_bools(std::iter::repeat_n(true, n));
        let generator = BitMatrix::from_rows(n, vec![ones])?;
        let code = Self::unchecked(format!("repetition-{n}"), generator);
        let _ = code.distance.set(Some(n));
        Ok(code)
    }

    /// The `[n, n-1, 2]` even-weight code.
    pub fn parity(n: usize) -> Result<Self, CodeError> {
        if n < 2 {
            return Err(CodeError::LengthTooSmall { min: 2, got: n });
        }
        let rows = (0..n - 1)
            .map(|i| BitVector::from_support(n, &[i, n - 1]))
            .collect();
        Ok(Self::unchecked(
            format!("parity-{n}"),
            BitMatrix::from_rows(n, rows)?,
        ))
    }

    /// Systematic `[7, 4, 3]` Hamming code.
    pub fn hamming74() -> Self {
        let g = BitMatrix::parse_rows(&["1000110", "0100101", "0010011", "0001111"])
            .expect("static generator");
        Self::unchecked("hamming74".into(), g)
    }

    /// `[n, n, 1]` code with the identity generator.
    pub fn trivial(n: usize) -> Result<Self, CodeError> {
        if n < 1 {
            return Err(CodeError::LengthTooSmall { min: 1, got: n });
        }
        Ok(Self::unchecked(
            format!("identity-{n}"),
            BitMatrix::identity(n),
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.generator.ncols()
    }

    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn rate(&self) -> Ratio<usize> {
        Ratio::new(self.k(), self.n())
    }

    /// Rows are the encoded images of the unit information vectors.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Generator of the dual code (a parity-check matrix of this code).
    pub fn dual_generator(&self) -> &BitMatrix {
        self.dual.get_or_init(|| self.generator.nullspace())
    }

    pub fn dual(&self) -> BlockCode {
        let out = Self::unchecked(format!("{}-dual", self.name), self.dual_generator().clone());
        let _ = out.dual.set(self.generator.clone());
        if let Some(&d) = self.dual_distance.get() {
            let _ = out.distance.set(d);
        }
        if let Some(&d) = self.distance.get() {
            let _ = out.dual_distance.set(d);
        }
        out
    }

    /// Minimum Hamming weight over the nonzero codewords.
    pub fn min_distance(&self) -> Result<Option<usize>, CodeError> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let d = min_weight(&self.generator)?;
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Minimum distance of the dual code.
    pub fn dual_distance(&self) -> Result<Option<usize>, CodeError> {
        if let Some(&d) = self.dual_distance.get() {
            return Ok(d);
        }
        let d = min_weight(self.dual_generator())?;
        let _ = self.dual_distance.set(d);
        Ok(d)
    }

    pub fn contains(&self, word: &BitVector) -> Result<bool, CodeError> {
        Ok(self.dual_generator().mul_vec(word)?.is_zero())
    }

    /// `u·G` for an information vector `u` of length `k`.
    pub fn encode(&self, info: &BitVector) -> Result<BitVector, CodeError> {
        if info.len() != self.k() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.k(),
                found: info.len(),
            }
            .into());
        }
        let mut out = BitVector::zeros(self.n());
        for i in info.iter_ones() {
            out.xor_assign(self.generator.row(i))?;
        }
        Ok(out)
    }
}

impl fmt::Display for BlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, {}]", self.name, self.n(), self.k())
    }
}

fn min_weight(generator: &BitMatrix) -> Result<Option<usize>, CodeError> {
    let k = generator.nrows();
    if k > MAX_ENUMERATED_DIMENSION {
        return Err(CodeError::DimensionTooLarge {
            k,
            limit: MAX_ENUMERATED_DIMENSION,
        });
    }
    Ok(generator
        .enumerate_span()?
        .skip(1)
        .map(|w| w.weight())
        .min())
}

/// Free distance of a convolutional code, or a lower bound when the search
/// hit its weight cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FreeDistance {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for FreeDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(d) => write!(f, "{d}"),
            Self::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

/// Rate `k/n` convolutional code. `gpoly[i][j]` is the polynomial from input
/// `i` to output `j`; bit `t` of each coefficient vector is the coefficient of `Dᵗ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionalCode {
    k: usize,
    n: usize,
    gpoly: Vec<Vec<BitVector>>,
    memory: usize,
}

impl ConvolutionalCode {
    pub fn new(k: usize, n: usize, gpoly: Vec<Vec<BitVector>>) -> Result<Self, CodeError> {
        let bad = |msg: String| Err(CodeError::InvalidConvolutional(msg));
        if k == 0 || n == 0 {
            return bad(format!("k and n must be positive (k={k}, n={n})"));
        }
        if gpoly.len() != k {
            return bad(format!("expected {k} input rows, found {}", gpoly.len()));
        }
        let mut memory = 0;
        for (i, row) in gpoly.iter().enumerate() {
            if row.len() != n {
                return bad(format!(
                    "input {i}: expected {n} polynomials, found {}",
                    row.len()
                ));
            }
            if row.iter().all(BitVector::is_zero) {
                return bad(format!("input {i}: all polynomials are zero"));
            }
            for p in row {
                if let Some(deg) = p.iter_ones().last() {
                    memory = memory.max(deg);
                }
            }
        }
        let gpoly = gpoly
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|p| {
                        let mut q = BitVector::zeros(memory + 1);
                        for t in p.iter_ones() {
                            q.set(t, true);
                        }
                        q
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            k,
            n,
            gpoly,
            memory,
        })
    }

    /// Parses one row of coefficient strings per input, e.g. `[["111", "101"]]`.
    pub fn from_strings<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, CodeError> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let gpoly = rows
            .iter()
            .map(|r| r.iter().map(|s| s.as_ref().parse::<BitVector>()).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Self::new(k, n, gpoly)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn rate(&self) -> Ratio<usize> {
        Ratio::new(self.k, self.n)
    }

    pub fn polynomial(&self, input: usize, output: usize) -> &BitVector {
        &self.gpoly[input][output]
    }

    /// Zero-tail block code over `frames` input frames followed by `memory`
    /// flushing zero frames: `[n·(frames+m), k·frames]`.
    pub fn terminate(&self, frames: usize) -> Result<BlockCode, CodeError> {
        if frames < 1 {
            return Err(CodeError::LengthTooSmall {
                min: 1,
                got: frames,
            });
        }
        let k1 = self.k * frames;
        if k1 > MAX_ENUMERATED_DIMENSION {
            return Err(CodeError::DimensionTooLarge {
                k: k1,
                limit: MAX_ENUMERATED_DIMENSION,
            });
        }
        let n1 = self.n * (frames + self.memory);
        let mut rows = Vec::with_capacity(k1);
        for t in 0..frames {
            for i in 0..self.k {
                let mut row = BitVector::zeros(n1);
                for j in 0..self.n {
                    for tau in self.gpoly[i][j].iter_ones() {
                        row.set((t + tau) * self.n + j, true);
                    }
                }
                rows.push(row);
            }
        }
        let g = BitMatrix::from_rows(n1, rows)?;
        BlockCode::from_generator(
            format!("conv-k{}n{}m{}-L{frames}", self.k, self.n, self.memory),
            g,
        )
    }

    /// Minimum output weight over paths that leave the zero state and return
    /// to it, found by lowest-weight-first search over the trellis. Paths of
    /// weight `cap` or more are pruned, yielding `AtLeast(cap)`.
    pub fn free_distance(&self, cap: usize) -> Result<FreeDistance, CodeError> {
        let state_bits = self.k * self.memory;
        if state_bits > MAX_STATE_BITS {
            return Err(CodeError::TooManyStates {
                bits: state_bits,
                limit: MAX_STATE_BITS,
            });
        }
        let num_states = 1usize << state_bits;
        let num_inputs = 1usize << self.k;

        // State packs the last `memory` input frames, most recent frame in the low k bits.
        let step = |state: usize, input: usize| -> (usize, usize) {
            let mut weight = 0;
            for j in 0..self.n {
                let mut bit = false;
                for i in 0..self.k {
                    let g = &self.gpoly[i][j];
                    if g.get(0) && input >> i & 1 == 1 {
                        bit ^= true;
                    }
                    for tau in 1..=self.memory {
                        let past = state >> ((tau - 1) * self.k) & ((1 << self.k) - 1);
                        if g.get(tau) && past >> i & 1 == 1 {
                            bit ^= true;
                        }
                    }
                }
                weight += usize::from(bit);
            }
            let next = if self.memory == 0 {
                0
            } else {
                ((state << self.k) | input) & (num_states - 1)
            };
            (next, weight)
        };

        // Node `num_states` is the absorbing "returned to zero" target.
        let target = num_states;
        let mut best = vec![usize::MAX; num_states + 1];
        let mut heap = BinaryHeap::new();
        for input in 1..num_inputs {
            let (next, w) = step(0, input);
            let node = if next == 0 { target } else { next };
            if w < cap && w < best[node] {
                best[node] = w;
                heap.push(Reverse((w, node)));
            }
        }
        while let Some(Reverse((w, node))) = heap.pop() {
            if w > best[node] {
                continue;
            }
            if node == target {
                return Ok(FreeDistance::Exact(w));
            }
            for input in 0..num_inputs {
                let (next, dw) = step(node, input);
                let nw = w + dw;
                let dest = if next == 0 { target } else { next };
                if nw < cap && nw < best[dest] {
                    best[dest] = nw;
                    heap.push(Reverse((nw, dest)));
                }
            }
        }
        Ok(FreeDistance::AtLeast(cap))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn conv75() -> ConvolutionalCode {
        ConvolutionalCode::from_strings(&[vec!["111", "101"]]).unwrap()
    }

    /// Oracle: minimum weight over every nonzero information vector, via `encode`.
    fn enumerated_distance(c: &BlockCode) -> Option<usize> {
        (1u64..(1 << c.k()))
            .map(|u| c.encode(&BitVector::from_u64(c.k(), u)).unwrap().weight())
            .min()
    }

    #[test]
    fn repetition_codes() {
        let r1 = BlockCode::repetition(1).unwrap();
        assert_eq!(
            (r1.n(), r1.k(), r1.min_distance().unwrap()),
            (1, 1, Some(1))
        );
        assert_eq!(r1.generator().row(0), &bv("1"));

        let r3 = BlockCode::repetition(3).unwrap();
        let words: Vec<String> = r3
            .generator()
            .enumerate_span()
            .unwrap()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["000", "111"]);

        let r5 = BlockCode::repetition(5).unwrap();
        assert_eq!(enumerated_distance(&r5), Some(5));
        for n in 1..=8 {
            let r = BlockCode::repetition(n).unwrap();
            assert_eq!(min_weight(r.generator()).unwrap(), Some(n));
            assert_eq!(r.min_distance().unwrap(), Some(n));
        }
        assert!(BlockCode::repetition(0).is_err());
    }

    #[test]
    fn catalog_distances() {
        let p4 = BlockCode::parity(4).unwrap();
        assert_eq!((p4.n(), p4.k()), (4, 3));
        assert_eq!(enumerated_distance(&p4), Some(2));
        assert_eq!(p4.min_distance().unwrap(), Some(2));

        let h = BlockCode::hamming74();
        assert_eq!(enumerated_distance(&h), Some(3));
        assert_eq!(h.min_distance().unwrap(), Some(3));

        let c = BlockCode::from_generator("c322", BitMatrix::parse_rows(&["110", "011"]).unwrap())
            .unwrap();
        assert_eq!((c.n(), c.k()), (3, 2));
        assert_eq!(enumerated_distance(&c), Some(2));
        assert_eq!(c.min_distance().unwrap(), Some(2));
        assert!(BlockCode::parity(1).is_err());
    }

    #[test]
    fn rank_deficient_rejected() {
        let g = BitMatrix::parse_rows(&["110", "011", "101"]).unwrap();
        assert_eq!(
            BlockCode::from_generator("bad", g).unwrap_err(),
            CodeError::RankDeficient { rows: 3, rank: 2 }
        );
        assert_eq!(
            BlockCode::from_generator("empty", BitMatrix::empty(3)).unwrap_err(),
            CodeError::EmptyGenerator
        );
    }

    #[test]
    fn duals() {
        let d = BlockCode::repetition(3).unwrap().dual();
        assert_eq!((d.n(), d.k()), (3, 2));
        assert_eq!(enumerated_distance(&d), Some(2));
        // every dual word has even weight
        for w in d.generator().enumerate_span().unwrap() {
            assert_eq!(w.weight() % 2, 0);
        }

        let simplex = BlockCode::hamming74().dual();
        assert_eq!((simplex.n(), simplex.k()), (7, 3));
        assert_eq!(enumerated_distance(&simplex), Some(4));
        assert_eq!(BlockCode::hamming74().dual_distance().unwrap(), Some(4));

        let full = BlockCode::repetition(1).unwrap();
        assert_eq!(full.dual().k(), 0);
        assert_eq!(full.dual_distance().unwrap(), None);
    }

    #[test]
    fn duality_invariants_over_catalog() {
        let mut codes = vec![BlockCode::hamming74()];
        for n in 1..=8 {
            codes.push(BlockCode::repetition(n).unwrap());
        }
        for n in 2..=8 {
            codes.push(BlockCode::parity(n).unwrap());
        }
        for c in &codes {
            let h = c.dual_generator();
            assert!(c
                .generator()
                .mul_transpose(h)
                .unwrap()
                .rows()
                .iter()
                .all(BitVector::is_zero));
            assert_eq!(c.k() + h.nrows(), c.n());
            // biduality: the dual of the dual spans the original row space
            let dd = c.dual().dual();
            assert_eq!(dd.k(), c.k());
            for row in dd.generator().rows() {
                assert!(c.generator().span_contains(row).unwrap());
            }
            for w in c.generator().enumerate_span().unwrap() {
                assert!(c.contains(&w).unwrap());
            }
        }
    }

    #[test]
    fn distance_guard() {
        let c = BlockCode::trivial(21).unwrap();
        assert_eq!(
            c.min_distance().unwrap_err(),
            CodeError::DimensionTooLarge { k: 21, limit: 20 }
        );
    }

    #[test]
    fn terminate_memoryless_repetition() {
        let rep = ConvolutionalCode::from_strings(&[vec!["1", "1", "1"]]).unwrap();
        assert_eq!(rep.memory(), 0);
        let b = rep.terminate(2).unwrap();
        assert_eq!(
            b.generator(),
            &BitMatrix::parse_rows(&["111000", "000111"]).unwrap()
        );
        assert_eq!(b.min_distance().unwrap(), Some(3));
    }

    #[test]
    fn terminate_memoryless_is_block_copies() {
        let frame =
            ConvolutionalCode::from_strings(&[vec!["1", "0", "1"], vec!["0", "1", "1"]]).unwrap();
        let b = frame.terminate(3).unwrap();
        assert_eq!((b.n(), b.k()), (9, 6));
        let expected = BitMatrix::parse_rows(&[
            "101000000",
            "011000000",
            "000101000",
            "000011000",
            "000000101",
            "000000011",
        ])
        .unwrap();
        assert_eq!(b.generator(), &expected);
    }

    #[test]
    fn terminate_conv75() {
        let b = conv75().terminate(4).unwrap();
        assert_eq!((b.n(), b.k()), (12, 4));
        assert_eq!(b.generator().row(0), &bv("111011000000"));
        assert_eq!(b.generator().row(3), &bv("000000111011"));
        let d = enumerated_distance(&b).unwrap();
        assert!(d >= 5);
        assert_eq!(b.min_distance().unwrap(), Some(d));
        assert!(conv75().terminate(21).is_err());
    }

    #[test]
    fn free_distance_conv75() {
        let c = conv75();
        assert_eq!(c.free_distance(64).unwrap(), FreeDistance::Exact(5));
        // zero-tail enumeration at L=8 agrees
        assert_eq!(enumerated_distance(&c.terminate(8).unwrap()), Some(5));
        assert_eq!(c.free_distance(5).unwrap(), FreeDistance::AtLeast(5));
    }

    #[test]
    fn free_distance_memoryless() {
        let c = ConvolutionalCode::from_strings(&[vec!["1", "1"]]).unwrap();
        assert_eq!(c.free_distance(10).unwrap(), FreeDistance::Exact(2));
    }

    #[test]
    fn terminated_distance_bounds_free_distance() {
        let codes = [
            conv75(),
            ConvolutionalCode::from_strings(&[vec!["1101", "1111"]]).unwrap(),
            ConvolutionalCode::from_strings(&[vec!["11", "10", "01"]]).unwrap(),
            ConvolutionalCode::from_strings(&[vec!["11", "01", "10"], vec!["01", "11", "00"]])
                .unwrap(),
        ];
        for c in &codes {
            let FreeDistance::Exact(df) = c.free_distance(64).unwrap() else {
                panic!("cap reached")
            };
            for frames in 1..=6 {
                let b = c.terminate(frames).unwrap();
                assert!(enumerated_distance(&b).unwrap() >= df, "L={frames}");
            }
        }
    }

    #[test]
    fn conv_validation() {
        assert!(ConvolutionalCode::from_strings(&[vec!["0", "00"]]).is_err());
        assert!(ConvolutionalCode::from_strings::<&str>(&[]).is_err());
        assert!(ConvolutionalCode::from_strings(&[vec!["1", "1"], vec!["1"]]).is_err());
        let big = ConvolutionalCode::from_strings(&[vec!["1".to_string() + &"0".repeat(16) + "1"]])
            .unwrap();
        assert!(matches!(
            big.free_distance(10),
            Err(CodeError::TooManyStates { .. })
        ));
    }
}
