//! Quantum codes built from a classical code `C₁` and a length-`d₂` repetition
//! code: encode with `C₁`, apply a Hadamard to every qubit, then repetition-encode
//! each qubit into a block of `d₂` qubits.
//!
//! Qubit `(j, k)` (block `j`, position `k`, both 0-based) has index `d₂·j + k`.
//! The stabilizer is generated by
//!
//! * `Z(j,0)·Z(j,l)` for every block `j` and `l = 1..d₂`, and
//! * for every dual codeword row `g` of `C₁`, `X` on every qubit of every block `j` with `g(j) = 1`.
//!
//! The Hadamard layer never appears as state data; it is the X/Z role
//! exchange already present in these generators.

use std::fmt;

use log::warn;
use num_rational::Ratio;
use thiserror::Error;

use crate::classical::{BlockCode, CodeError, ConvolutionalCode, FreeDistance};
use crate::gf2::BitVector;
use crate::pauli::{Letter, PauliOperator};
use crate::stabilizer::{
    max_admissible_weight, next_combination, CssDistance, DistanceResult, ErrorClass, LogicalPair,
    PauliFilter, StabilizerCode, StabilizerError, SweepTally,
};

/// Largest qubit count for which exhaustive verification is intended.
pub const VERIFY_QUBIT_LIMIT: usize = 32;

/// Weight cap used for free-distance searches of convolutional inputs.
const FREE_DISTANCE_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("repetition length d2 must be at least 1")]
    InvalidRepetition,
    #[error("{n} qubits exceeds the verification limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },
    #[error(transparent)]
    Classical(#[from] CodeError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

/// The classical outer code, either given directly or as a convolutional code
/// terminated after `frames` frames.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicalInput {
    Block(BlockCode),
    Convolutional {
        code: ConvolutionalCode,
        frames: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionSpec {
    pub c1: ClassicalInput,
    pub d2: usize,
}

impl ConstructionSpec {
    pub fn block(c1: BlockCode, d2: usize) -> Self {
        Self {
            c1: ClassicalInput::Block(c1),
            d2,
        }
    }

    pub fn convolutional(code: ConvolutionalCode, frames: usize, d2: usize) -> Self {
        Self {
            c1: ClassicalInput::Convolutional { code, frames },
            d2,
        }
    }

    /// `C₁` as a block code (terminating a convolutional input).
    pub fn block_code(&self) -> Result<BlockCode, ConstructionError> {
        match &self.c1 {
            ClassicalInput::Block(c) => Ok(c.clone()),
            ClassicalInput::Convolutional { code, frames } => Ok(code.terminate(*frames)?),
        }
    }
}

/// A constructed code together with its layout.
#[derive(Debug, Clone)]
pub struct ConcatenatedCode {
    c1: BlockCode,
    d2: usize,
    code: StabilizerCode,
    block_logicals_valid: bool,
}

impl ConcatenatedCode {
    pub fn c1(&self) -> &BlockCode {
        &self.c1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    /// Number of repetition blocks, `n₁`.
    pub fn blocks(&self) -> usize {
        self.c1.n()
    }

    pub fn n(&self) -> usize {
        self.c1.n() * self.d2
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn into_code(self) -> StabilizerCode {
        self.code
    }

    /// Whether the operator formulas taken directly from the construction
    /// (block-wise products following the rows of `C₁`) form valid logical pairs.
    pub fn block_logicals_valid(&self) -> bool {
        self.block_logicals_valid
    }

    pub fn qubit(&self, block: usize, position: usize) -> usize {
        debug_assert!(block < self.blocks() && position < self.d2);
        self.d2 * block + position
    }

    /// Number of Z-pair generators; they come first in generator order.
    pub fn z_pair_count(&self) -> usize {
        self.blocks() * (self.d2 - 1)
    }

    /// Generator index of `Z(block,0)·Z(block,position)`, `position >= 1`.
    pub fn z_pair_index(&self, block: usize, position: usize) -> usize {
        debug_assert!(position >= 1 && position < self.d2);
        block * (self.d2 - 1) + position - 1
    }

    /// Generator index of the X-block generator for dual row `row`.
    pub fn x_block_index(&self, row: usize) -> usize {
        self.z_pair_count() + row
    }

    /// Parity of the Z component of `p` inside each block.
    pub fn block_parities(&self, p: &PauliOperator) -> BitVector {
        let mut out = BitVector::zeros(self.blocks());
        for q in p.z().iter_ones() {
            out.flip(q / self.d2);
        }
        out
    }
}

/// Full-block logical candidates read off the construction: for row `f` of
/// `C₁`, `X` (resp. `Z`) on every qubit of every block `j` with `f(j) = 1`.
pub fn block_logicals(c1: &BlockCode, d2: usize) -> Vec<LogicalPair> {
    let n = c1.n() * d2;
    c1.generator()
        .rows()
        .iter()
        .map(|f| {
            let qubits: Vec<usize> = f
                .iter_ones()
                .flat_map(|j| (0..d2).map(move |k| d2 * j + k))
                .collect();
            LogicalPair::new(
                PauliOperator::on(n, Letter::X, &qubits),
                PauliOperator::on(n, Letter::Z, &qubits),
            )
        })
        .collect()
}

pub fn construct(c1: &BlockCode, d2: usize) -> Result<ConcatenatedCode, ConstructionError> {
    if d2 < 1 {
        return Err(ConstructionError::InvalidRepetition);
    }
    if d2.is_multiple_of(2) {
        warn!("repetition length {d2} is even; majority vote is ambiguous");
    }
    let n1 = c1.n();
    let n = n1 * d2;
    if n > VERIFY_QUBIT_LIMIT {
        warn!("{n} qubits: exhaustive verification will be refused or bounded");
    }
    let mut gens = Vec::with_capacity(n1 * (d2 - 1) + c1.dual_generator().nrows());
    for j in 0..n1 {
        for l in 1..d2 {
            gens.push(PauliOperator::on(n, Letter::Z, &[d2 * j, d2 * j + l]));
        }
    }
    for g in c1.dual_generator().rows() {
        let qubits: Vec<usize> = g
            .iter_ones()
            .flat_map(|j| (0..d2).map(move |k| d2 * j + k))
            .collect();
        gens.push(PauliOperator::on(n, Letter::X, &qubits));
    }
    let code = StabilizerCode::new(n, gens)?;

    let literal = block_logicals(c1, d2);
    let literal_ok = code.logical_contract_violations(&literal).is_empty();
    let logicals = if literal_ok {
        // lightest Z representative: one Z per block instead of the whole block
        literal
            .into_iter()
            .map(|pair| {
                let firsts: Vec<usize> = pair.z().z().iter_ones().filter(|q| q % d2 == 0).collect();
                LogicalPair::new(pair.x().clone(), PauliOperator::on(n, Letter::Z, &firsts))
            })
            .collect()
    } else {
        code.complete_logicals()?
    };
    let code = code.with_logicals(logicals)?;
    Ok(ConcatenatedCode {
        c1: c1.clone(),
        d2,
        code,
        block_logicals_valid: literal_ok,
    })
}

/// Parameters asserted for the construction: rate `r₁·r₂ = k₁/(n₁·d₂)` and
/// distance `min(d₁⊥, d₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimedParameters {
    pub rate: Ratio<usize>,
    pub distance: usize,
    /// `None` when `C₁` has no nonzero codeword.
    pub d1: Option<usize>,
    /// `None` when the dual of `C₁` is the zero code.
    pub d1_perp: Option<usize>,
    pub d2: usize,
}

pub fn claimed_parameters(
    c1: &BlockCode,
    d2: usize,
) -> Result<ClaimedParameters, ConstructionError> {
    if d2 < 1 {
        return Err(ConstructionError::InvalidRepetition);
    }
    let d1 = c1.min_distance()?;
    let d1_perp = c1.dual_distance()?;
    Ok(ClaimedParameters {
        rate: c1.rate() * Ratio::new(1, d2),
        distance: d1_perp.map_or(d2, |d| d.min(d2)),
        d1,
        d1_perp,
        d2,
    })
}

/// Extra facts recorded for a convolutional `C₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvolutionalContext {
    pub frames: usize,
    pub memory: usize,
    pub free_distance: FreeDistance,
}

/// Builds from the zero-tail termination of `conv`. The claimed `d₁⊥` is the
/// dual distance of the terminated block code; `d₁` is reported as the free distance.
pub fn construct_conv(
    conv: &ConvolutionalCode,
    frames: usize,
    d2: usize,
) -> Result<(ConcatenatedCode, ClaimedParameters, ConvolutionalContext), ConstructionError> {
    let terminated = conv.terminate(frames)?;
    let built = construct(&terminated, d2)?;
    let mut claimed = claimed_parameters(&terminated, d2)?;
    let free_distance = conv.free_distance(FREE_DISTANCE_CAP)?;
    if let FreeDistance::Exact(d) = free_distance {
        claimed.d1 = Some(d);
    }
    let context = ConvolutionalContext {
        frames,
        memory: conv.memory(),
        free_distance,
    };
    Ok((built, claimed, context))
}

/// Result of checking that pure-Z errors with even parity in every block lie in the stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegeneracyCheck {
    pub wmax: usize,
    /// Number of non-identity pure-Z Paulis with all block parities even.
    pub checked: u64,
    pub holds: bool,
}

pub fn degeneracy_check(
    built: &ConcatenatedCode,
    wmax: usize,
) -> Result<DegeneracyCheck, ConstructionError> {
    let n = built.n();
    let wmax = max_admissible_weight(n, wmax, PauliFilter::PureZ);
    let mut checked = 0;
    let mut holds = true;
    for w in 1..=wmax {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let p = PauliOperator::on(n, Letter::Z, &support);
            if built.block_parities(&p).is_zero() {
                checked += 1;
                if built.code.classify_error(&p)? != ErrorClass::InStabilizer {
                    holds = false;
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    Ok(DegeneracyCheck {
        wmax,
        checked,
        holds,
    })
}

/// Claimed-versus-computed comparison for one construction. Records
/// agreement or mismatch per claim; nothing here assumes the claims hold.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: String,
    pub n: usize,
    pub k_computed: usize,
    pub rate_claimed: Ratio<usize>,
    pub rate_computed: Ratio<usize>,
    pub d_claimed: usize,
    pub d_computed: DistanceResult,
    pub d1: Option<usize>,
    pub d1_perp: Option<usize>,
    pub d2: usize,
    pub rate_match: bool,
    pub distance_match: bool,
    pub spin_detection_holds: bool,
    pub phase_literal_holds: bool,
    pub phase_undetected_holds: bool,
    pub css: bool,
    pub block_logicals_valid: bool,
    pub d_css: Option<CssDistance>,
    /// `distance_css` agrees with the exhaustive distance (only when the latter is exact).
    pub oracles_agree: Option<bool>,
    /// Weight bound the distance scan actually used.
    pub wmax: usize,
    /// False when any scan had to be clipped to stay inside its volume guard.
    pub complete: bool,
    pub convolutional: Option<ConvolutionalContext>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Rate and distance claims both confirmed.
    pub fn all_match(&self) -> bool {
        self.rate_match && self.distance_match
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |d: Option<usize>| d.map_or("none".to_string(), |v| v.to_string());
        let computed = match (self.d_computed.exact(), self.d_computed.status) {
            (Some(d), _) => format!("{d} (exact)"),
            (None, crate::stabilizer::DistanceStatus::LowerBoundOnly { wmax }) => {
                format!("> {wmax} (lower bound)")
            }
            (None, _) => "unknown".to_string(),
        };
        writeln!(f, "code            {} (d2 = {})", self.name, self.d2)?;
        writeln!(f, "parameters      n = {}, k = {}", self.n, self.k_computed)?;
        writeln!(
            f,
            "classical       d1 = {}, d1_perp = {}, d2 = {}",
            opt(self.d1),
            opt(self.d1_perp),
            self.d2
        )?;
        writeln!(
            f,
            "rate            claimed {}, computed {}  [{}]",
            self.rate_claimed,
            self.rate_computed,
            verdict(self.rate_match)
        )?;
        writeln!(
            f,
            "distance        claimed {}, computed {}  [{}]",
            self.d_claimed,
            computed,
            verdict(self.distance_match)
        )?;
        if let Some(w) = &self.d_computed.witness {
            writeln!(f, "witness         {}", w.indexed())?;
        }
        writeln!(f, "spin detection  {}", holds(self.spin_detection_holds))?;
        writeln!(f, "phase (literal) {}", holds(self.phase_literal_holds))?;
        writeln!(f, "phase (undet.)  {}", holds(self.phase_undetected_holds))?;
        writeln!(f, "css             {}", self.css)?;
        writeln!(
            f,
            "block logicals  {}",
            if self.block_logicals_valid {
                "valid"
            } else {
                "replaced by completion"
            }
        )?;
        if !self.complete {
            writeln!(f, "status          incomplete (search bounded)")?;
        }
        for note in &self.notes {
            writeln!(f, "note            {note}")?;
        }
        Ok(())
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "match"
    } else {
        "MISMATCH"
    }
}

fn holds(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn bounded_sweep(
    code: &StabilizerCode,
    wmax: usize,
    filter: PauliFilter,
) -> Result<(SweepTally, bool), ConstructionError> {
    let admissible = max_admissible_weight(code.n(), wmax, filter);
    let complete = admissible >= wmax.min(code.n());
    Ok((code.sweep_errors(admissible, filter)?, complete))
}

/// Builds the code and checks every claim against exhaustive oracles.
/// `wmax` defaults to `min(n, d_claimed + 2)`.
pub fn verify(
    spec: &ConstructionSpec,
    wmax: Option<usize>,
) -> Result<VerificationReport, ConstructionError> {
    let (built, claimed, conv) = match &spec.c1 {
        ClassicalInput::Block(c1) => (
            construct(c1, spec.d2)?,
            claimed_parameters(c1, spec.d2)?,
            None,
        ),
        ClassicalInput::Convolutional { code, frames } => {
            let (built, claimed, ctx) = construct_conv(code, *frames, spec.d2)?;
            (built, claimed, Some(ctx))
        }
    };
    let code = built.code();
    let n = code.n();
    if n > VERIFY_QUBIT_LIMIT {
        return Err(ConstructionError::TooManyQubits {
            n,
            limit: VERIFY_QUBIT_LIMIT,
        });
    }
    let mut notes = Vec::new();
    let diagnostics = code.validate();
    if !diagnostics.is_ok() {
        notes.push(format!("stabilizer diagnostics: {diagnostics:?}"));
    }

    let k_computed = code.k();
    let rate_computed = Ratio::new(k_computed, n);
    let rate_match = rate_computed == claimed.rate;

    let requested = wmax.unwrap_or(claimed.distance + 2).min(n);
    let scan_wmax = max_admissible_weight(n, requested, PauliFilter::All);
    let mut complete = true;
    if scan_wmax < requested {
        complete = false;
        notes.push(format!(
            "distance scan clipped from weight {requested} to {scan_wmax} by the volume guard"
        ));
    }
    let d_computed = code.distance(scan_wmax)?;
    if !d_computed.is_exact() {
        complete = false;
    }
    let distance_match = d_computed.exact() == Some(claimed.distance);

    let css = code.is_css();
    let (d_css, oracles_agree) = if css {
        match code.distance_css() {
            Ok(dc) => {
                let agree = d_computed.exact().map(|d| dc.min() == Some(d));
                if agree == Some(false) {
                    notes.push(format!(
                        "exhaustive and CSS distance disagree: {:?} vs {:?}",
                        d_computed.d, dc
                    ));
                }
                (Some(dc), agree)
            }
            Err(e) => {
                notes.push(format!("CSS cross-check skipped: {e}"));
                (None, None)
            }
        }
    } else {
        (None, None)
    };

    let (spin, spin_complete) = bounded_sweep(code, spec.d2.saturating_sub(1), PauliFilter::PureX)?;
    let spin_detection_holds = spin.logical_total() == 0;
    let (phase, phase_complete) =
        bounded_sweep(code, claimed.distance.saturating_sub(1), PauliFilter::PureZ)?;
    let phase_literal_holds = phase.logical_total() == 0 && phase.detected_total() == 0;
    let phase_undetected_holds = phase.logical_total() == 0;
    if !(spin_complete && phase_complete) {
        complete = false;
        notes.push("error sweeps clipped by the volume guard".into());
    }

    notes.push(format!(
        "d1 = {}, d1_perp = {}, d2 = {}",
        claimed.d1.map_or("none".into(), |d| d.to_string()),
        claimed.d1_perp.map_or("none".into(), |d| d.to_string()),
        spec.d2
    ));
    if let Some(ctx) = &conv {
        notes.push(format!(
            "convolutional C1 terminated at L = {} frames (memory {}); free distance {}; d1_perp taken from the terminated code",
            ctx.frames, ctx.memory, ctx.free_distance
        ));
    }

    Ok(VerificationReport {
        name: built.c1().name().to_string(),
        n,
        k_computed,
        rate_claimed: claimed.rate,
        rate_computed,
        d_claimed: claimed.distance,
        d_computed,
        d1: claimed.d1,
        d1_perp: claimed.d1_perp,
        d2: spec.d2,
        rate_match,
        distance_match,
        spin_detection_holds,
        phase_literal_holds,
        phase_undetected_holds,
        css,
        block_logicals_valid: built.block_logicals_valid(),
        d_css,
        oracles_agree,
        wmax: scan_wmax,
        complete,
        convolutional: conv,
        notes,
    })
}
