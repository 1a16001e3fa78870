//! Quantum stabilizer codes obtained by concatenating a classical binary code
//! `C₁` (through a Hadamard layer) with a majority-vote repetition code, plus
//! the exhaustive machinery needed to check their parameters.
//!
//! * [`gf2`]: bit-packed GF(2) linear algebra.
//! * [`classical`]: block and convolutional codes, duals, distances.
//! * [`pauli`]: phase-free Paulis in symplectic form.
//! * [`stabilizer`]: generic stabilizer codes, error classes, distance search.
//! * [`construction`]: the concatenated construction and its verification report.
//! * [`decode`]: two-stage decoder and depolarizing-channel simulation.

pub mod classical;
pub mod construction;
pub mod decode;
pub mod gf2;
pub mod pauli;
pub mod stabilizer;

pub use classical::{BlockCode, CodeError, ConvolutionalCode, FreeDistance};
pub use construction::{
    claimed_parameters, construct, construct_conv, verify, ClaimedParameters, ClassicalInput,
    ConcatenatedCode, ConstructionError, ConstructionSpec, VerificationReport,
};
pub use decode::{
    simulate_depolarizing, syndrome, ChannelStats, DecodeError, DecodeStatus, Syndrome,
    TwoStageDecoder,
};
pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use pauli::{Letter, PauliError, PauliGroupBasis, PauliOperator};
pub use stabilizer::{
    DistanceResult, DistanceStatus, ErrorClass, PauliFilter, StabilizerCode, StabilizerError,
};

/// Exact code rates.
pub type Rate = num_rational::Ratio<usize>;
