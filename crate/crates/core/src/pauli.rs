//! Phase-free Pauli operators in binary symplectic `(x|z)` form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, RowSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid Pauli string {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Single-qubit factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    /// Non-identity letters in search order.
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | '_' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// n-qubit Pauli operator up to global phase.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    x: BitVector,
    z: BitVector,
}

impl PauliOperator {
    pub fn new(x: BitVector, z: BitVector) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::SizeMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn from_x(x: BitVector) -> Self {
        let z = BitVector::zeros(x.len());
        Self { x, z }
    }

    pub fn from_z(z: BitVector) -> Self {
        let x = BitVector::zeros(z.len());
        Self { x, z }
    }

    /// `letter` on each of `qubits` (0-based), identity elsewhere.
    pub fn on(n: usize, letter: Letter, qubits: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for &q in qubits {
            p.set(q, letter);
        }
        p
    }

    /// Inverse of [`PauliOperator::symplectic`].
    pub fn from_symplectic(v: &BitVector) -> Self {
        assert!(v.len().is_multiple_of(2), "symplectic vector has odd length");
        let n = v.len() / 2;
        Self {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, letter: Letter) {
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&q| self.letter(q) != Letter::I)
            .collect()
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

    /// `(x | z)` row of length `2n`.
    pub fn symplectic(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    fn check(&self, other: &Self) -> Result<(), PauliError> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(PauliError::SizeMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    /// Symplectic form `x_P·z_Q + z_P·x_Q` mod 2.
    pub fn anticommutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check(other)?;
        Ok(self.x.dot_unchecked(&other.z) ^ self.z.dot_unchecked(&other.x))
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        Ok(!self.anticommutes(other)?)
    }

    /// Phase-free product.
    pub fn mul(&self, other: &Self) -> Result<Self, PauliError> {
        self.check(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        self.x.xor_assign_unchecked(&other.x);
        self.z.xor_assign_unchecked(&other.z);
    }

    /// Space-separated 1-based form, e.g. `X1 Z3`; identity renders as `I`.
    pub fn indexed(&self) -> String {
        let parts: Vec<String> = (0..self.n())
            .filter_map(|q| match self.letter(q) {
                Letter::I => None,
                l => Some(format!("{}{}", l.as_char(), q + 1)),
            })
            .collect();
        if parts.is_empty() {
            "I".to_string()
        } else {
            parts.join(" ")
        }
    }

    /// Parses the 1-based indexed form on `n` qubits. Repeated indices multiply.
    pub fn parse_indexed(text: &str, n: usize) -> Result<Self, PauliError> {
        let err = |reason: String| PauliError::Parse {
            text: text.to_string(),
            reason,
        };
        let mut p = Self::identity(n);
        for token in text.split_whitespace() {
            if token == "I" {
                continue;
            }
            let mut chars = token.chars();
            let letter = chars
                .next()
                .and_then(Letter::from_char)
                .ok_or_else(|| err(format!("bad token {token:?}")))?;
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| err(format!("bad qubit index in {token:?}")))?;
            if index == 0 || index > n {
                return Err(err(format!("qubit {index} out of range 1..={n}")));
            }
            let mut single = Self::identity(n);
            single.set(index - 1, letter);
            p.mul_assign_unchecked(&single);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    /// Compact form, one letter per qubit: `XXXIIIIII`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.letter(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| PauliError::Parse {
                    text: s.to_string(),
                    reason: format!("unexpected character {c:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut p = Self::identity(letters.len());
        for (q, l) in letters.into_iter().enumerate() {
            p.set(q, l);
        }
        Ok(p)
    }
}

/// A list of Pauli generators and the group they generate.
#[derive(Debug, Clone)]
pub struct PauliGroupBasis {
    n: usize,
    generators: Vec<PauliOperator>,
    matrix: BitMatrix,
    span: RowSpace,
}

impl PartialEq for PauliGroupBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generators == other.generators
    }
}

impl PauliGroupBasis {
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, PauliError> {
        if let Some(bad) = generators.iter().find(|g| g.n() != n) {
            return Err(PauliError::SizeMismatch {
                left: n,
                right: bad.n(),
            });
        }
        let matrix = BitMatrix::from_rows(
            2 * n,
            generators.iter().map(PauliOperator::symplectic).collect(),
        )
        .expect("rows have length 2n");
        let span = RowSpace::new(&matrix);
        Ok(Self {
            n,
            generators,
            matrix,
            span,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Stacked `(x|z)` rows, one per generator.
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.span.dim()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.generators.len()
    }

    fn check(&self, p: &PauliOperator) -> Result<(), PauliError> {
        if p.n() == self.n {
            Ok(())
        } else {
            Err(PauliError::SizeMismatch {
                left: self.n,
                right: p.n(),
            })
        }
    }

    /// Group membership up to phase.
    pub fn in_group(&self, p: &PauliOperator) -> Result<bool, PauliError> {
        self.check(p)?;
        Ok(self.span.contains(&p.symplectic()).expect("length checked"))
    }

    /// True iff `p` commutes with every generator.
    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool, PauliError> {
        self.check(p)?;
        Ok(self
            .generators
            .iter()
            .all(|g| !g.anticommutes(p).expect("length checked")))
    }
}
