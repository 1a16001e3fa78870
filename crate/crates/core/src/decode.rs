//! Two-stage decoding for [`ConcatenatedCode`]: spin flips are corrected
//! inside each repetition block, phase flips through a coset-leader table over
//! block parities modulo `C₁`. Also a seeded depolarizing-channel simulation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::ConcatenatedCode;
use crate::gf2::BitVector;
use crate::pauli::{Letter, PauliError, PauliOperator};
use crate::stabilizer::{StabilizerCode, StabilizerError};

/// Largest `n₁` for which the phase-stage table is built.
pub const MAX_TABLE_BLOCKS: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("coset table needs 2^{blocks} entries, limit is 2^{limit}")]
    TableTooLarge { blocks: usize, limit: usize },
    #[error("syndrome has {found} bits, code has {expected} generators")]
    SyndromeLength { expected: usize, found: usize },
    #[error("error probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// One bit per generator, in generator order: 1 iff the Pauli anticommutes with it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome(pub BitVector);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn syndrome(code: &StabilizerCode, p: &PauliOperator) -> Result<Syndrome, PauliError> {
    let bits = code
        .generators()
        .iter()
        .map(|g| g.anticommutes(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Syndrome(BitVector::from_bools(bits)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    /// Residual `recovery·error` lies in the stabilizer.
    Success,
    /// Residual is a nontrivial logical operator.
    LogicalFailure,
    /// Residual still has a nonzero syndrome.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub recovery: PauliOperator,
    pub status: DecodeStatus,
}

/// Decoder specialised to the block layout of a [`ConcatenatedCode`].
#[derive(Debug, Clone)]
pub struct TwoStageDecoder<'a> {
    built: &'a ConcatenatedCode,
    /// Minimum-weight block-parity vector for each X-block syndrome value.
    leaders: Vec<Option<u32>>,
}

impl<'a> TwoStageDecoder<'a> {
    pub fn new(built: &'a ConcatenatedCode) -> Result<Self, DecodeError> {
        let n1 = built.blocks();
        if n1 > MAX_TABLE_BLOCKS {
            return Err(DecodeError::TableTooLarge {
                blocks: n1,
                limit: MAX_TABLE_BLOCKS,
            });
        }
        let checks = built.c1().dual_generator();
        let mut leaders: Vec<Option<u32>> = vec![None; 1 << checks.nrows()];
        let mut leader_weight = vec![u32::MAX; leaders.len()];
        for parity in 0u32..(1 << n1) {
            let v = BitVector::from_u64(n1, u64::from(parity));
            let s = checks.mul_vec(&v).expect("n1 columns").to_u64() as usize;
            // strict comparison keeps the smallest integer among equal weights
            if parity.count_ones() < leader_weight[s] {
                leader_weight[s] = parity.count_ones();
                leaders[s] = Some(parity);
            }
        }
        Ok(Self { built, leaders })
    }

    pub fn code(&self) -> &ConcatenatedCode {
        self.built
    }

    pub fn decode(&self, s: &Syndrome) -> Result<PauliOperator, DecodeError> {
        let built = self.built;
        let code = built.code();
        if s.len() != code.generators().len() {
            return Err(DecodeError::SyndromeLength {
                expected: code.generators().len(),
                found: s.len(),
            });
        }
        let d2 = built.d2();
        let mut recovery = PauliOperator::identity(built.n());

        // spin stage: within a block the Z-pair bits fix the X pattern up to complement
        for block in 0..built.blocks() {
            let flips: Vec<usize> = (1..d2)
                .filter(|&l| s.get(built.z_pair_index(block, l)))
                .collect();
            let complemented = d2 - flips.len() < flips.len();
            for position in 0..d2 {
                let flipped = if position == 0 {
                    complemented
                } else {
                    flips.contains(&position) != complemented
                };
                if flipped {
                    recovery.set(built.qubit(block, position), Letter::X);
                }
            }
        }

        // phase stage: X-block bits are the C₁ parity checks of the block parities
        let checks = built.c1().dual_generator().nrows();
        let mut index = 0usize;
        for row in 0..checks {
            if s.get(built.x_block_index(row)) {
                index |= 1 << row;
            }
        }
        if let Some(parity) = self.leaders[index] {
            for block in (0..built.blocks()).filter(|b| parity >> b & 1 == 1) {
                let q = built.qubit(block, 0);
                let letter = match recovery.letter(q) {
                    Letter::X => Letter::Y,
                    _ => Letter::Z,
                };
                recovery.set(q, letter);
            }
        }
        Ok(recovery)
    }

    /// Decodes the syndrome of `error` and classifies the residual.
    pub fn correct(&self, error: &PauliOperator) -> Result<DecodeOutcome, DecodeError> {
        let code = self.built.code();
        let recovery = self.decode(&syndrome(code, error)?)?;
        let residual = recovery.mul(error)?;
        let status = if !syndrome(code, &residual)?.is_zero() {
            DecodeStatus::Inconsistent
        } else if code.stabilizer().in_group(&residual)? {
            DecodeStatus::Success
        } else {
            DecodeStatus::LogicalFailure
        };
        Ok(DecodeOutcome { recovery, status })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelStats {
    pub trials: u64,
    pub failures: u64,
    pub inconsistent: u64,
    pub logical_error_rate: f64,
    pub seed: u64,
    pub p: f64,
}

impl ChannelStats {
    /// Upper end of the normal-approximation interval at `z` standard errors.
    pub fn upper_bound(&self, z: f64) -> f64 {
        let r = self.logical_error_rate;
        r + z * (r * (1.0 - r) / self.trials as f64).sqrt()
    }
}

/// I.i.d. depolarizing noise on every qubit: I with probability `1-p`, X, Y, Z
/// each with `p/3`. Trial `t` draws from stream `t` of a ChaCha8 generator
/// seeded with `seed`, so results do not depend on how trials are grouped.
pub fn simulate_depolarizing(
    decoder: &TwoStageDecoder<'_>,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<ChannelStats, DecodeError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DecodeError::InvalidProbability(p));
    }
    let n = decoder.code().n();
    let mut failures = 0;
    let mut inconsistent = 0;
    for trial in 0..trials {
        let error = sample_error(n, p, seed, trial);
        match decoder.correct(&error)?.status {
            DecodeStatus::Success => {}
            DecodeStatus::LogicalFailure => failures += 1,
            DecodeStatus::Inconsistent => inconsistent += 1,
        }
    }
    Ok(ChannelStats {
        trials,
        failures,
        inconsistent,
        logical_error_rate: if trials == 0 {
            0.0
        } else {
            failures as f64 / trials as f64
        },
        seed,
        p,
    })
}

/// The error drawn for `trial`.
pub fn sample_error(n: usize, p: f64, seed: u64, trial: u64) -> PauliOperator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut error = PauliOperator::identity(n);
    for q in 0..n {
        if rng.random::<f64>() < p {
            error.set(q, Letter::NON_IDENTITY[rng.random_range(0..3)]);
        }
    }
    error
}
