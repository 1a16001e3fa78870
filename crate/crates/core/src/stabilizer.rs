//! Generic stabilizer codes: validation, logical-operator completion, error
//! classification and exhaustive minimum-distance search.
//!
//! Distance follows the degenerate convention: the minimum weight over
//! `N(S) \ S`. Stabilizer elements never count as logical errors.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector, Gf2Error, RowSpace};
use crate::pauli::{Letter, PauliError, PauliGroupBasis, PauliOperator};

/// Upper bound on the number of Paulis an exhaustive scan may visit.
pub const MAX_SEARCH_VOLUME: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("generator {index} ({generator}) is neither pure X nor pure Z")]
    NotCss { index: usize, generator: String },
    #[error("search volume {volume} exceeds the limit {limit}")]
    SearchTooLarge { volume: u128, limit: u128 },
    #[error("invalid stabilizer: {0}")]
    InvalidStabilizer(String),
}

/// Which Paulis a scan visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PauliFilter {
    All,
    PureX,
    PureZ,
}

impl PauliFilter {
    fn letters(self) -> &'static [Letter] {
        match self {
            PauliFilter::All => &Letter::NON_IDENTITY,
            PauliFilter::PureX => &[Letter::X],
            PauliFilter::PureZ => &[Letter::Z],
        }
    }
}

/// Partition of the Pauli group relative to a stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    Identity,
    InStabilizer,
    Detected,
    Logical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalPair {
    pub x_bar: PauliString,
    pub z_bar: PauliString,
}

/// Serde wrapper rendering a [`PauliOperator`] in compact form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(pub PauliOperator);

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse()
            .map(PauliString)
            .map_err(serde::de::Error::custom)
    }
}

impl LogicalPair {
    pub fn new(x_bar: PauliOperator, z_bar: PauliOperator) -> Self {
        Self {
            x_bar: PauliString(x_bar),
            z_bar: PauliString(z_bar),
        }
    }

    pub fn x(&self) -> &PauliOperator {
        &self.x_bar.0
    }

    pub fn z(&self) -> &PauliOperator {
        &self.z_bar.0
    }
}

/// Findings of [`StabilizerCode::validate`]. Empty lists mean no violation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rank: usize,
    pub k: usize,
    /// Generator index pairs `(i, j)`, `i < j`, that anticommute.
    pub anticommuting: Vec<(usize, usize)>,
    /// Generators lying in the span of the ones before them.
    pub dependent: Vec<usize>,
    pub logical_violations: Vec<String>,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.anticommuting.is_empty()
            && self.dependent.is_empty()
            && self.logical_violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DistanceStatus {
    Exact,
    /// No logical operator of weight `<= wmax` exists.
    LowerBoundOnly {
        wmax: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: Option<usize>,
    pub status: DistanceStatus,
    /// Lexicographically first minimum-weight logical, when exact.
    pub witness: Option<PauliOperator>,
}

impl DistanceResult {
    pub fn is_exact(&self) -> bool {
        self.status == DistanceStatus::Exact
    }

    /// Exact distance, if known.
    pub fn exact(&self) -> Option<usize> {
        if self.is_exact() {
            self.d
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub identity: u64,
    pub in_stabilizer: u64,
    pub detected: u64,
    pub logical: u64,
}

impl ClassCounts {
    fn bump(&mut self, class: ErrorClass) {
        match class {
            ErrorClass::Identity => self.identity += 1,
            ErrorClass::InStabilizer => self.in_stabilizer += 1,
            ErrorClass::Detected => self.detected += 1,
            ErrorClass::Logical => self.logical += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.identity + self.in_stabilizer + self.detected + self.logical
    }
}

/// Exact per-weight class counts from [`StabilizerCode::sweep_errors`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepTally {
    pub filter: PauliFilter,
    /// Index `w` holds the counts for weight `w`.
    pub by_weight: Vec<ClassCounts>,
}

impl SweepTally {
    pub fn logical_total(&self) -> u64 {
        self.by_weight.iter().map(|c| c.logical).sum()
    }

    pub fn detected_total(&self) -> u64 {
        self.by_weight.iter().map(|c| c.detected).sum()
    }
}

/// Minimum weights of pure-X and pure-Z logical operators of a CSS code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssDistance {
    pub x: Option<usize>,
    pub z: Option<usize>,
}

impl CssDistance {
    pub fn min(&self) -> Option<usize> {
        match (self.x, self.z) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// `Σ_{w ≤ wmax} C(n, w)·letters^w`, saturating.
pub fn search_volume(n: usize, wmax: usize, letters: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut pow: u128 = 1;
    for w in 0..=wmax.min(n) {
        if w > 0 {
            binom = binom.saturating_mul((n - w + 1) as u128) / w as u128;
            pow = pow.saturating_mul(letters as u128);
        }
        total = total.saturating_add(binom.saturating_mul(pow));
    }
    total
}

/// Largest `w <= wmax` whose search volume stays within [`MAX_SEARCH_VOLUME`].
pub fn max_admissible_weight(n: usize, wmax: usize, filter: PauliFilter) -> usize {
    let letters = filter.letters().len();
    let mut w = wmax.min(n);
    while w > 0 && search_volume(n, w, letters) > MAX_SEARCH_VOLUME {
        w -= 1;
    }
    w
}

fn symplectic_product(u: &BitVector, v: &BitVector) -> bool {
    let n = u.len() / 2;
    let (ux, uz) = (u.slice(0, n), u.slice(n, 2 * n));
    let (vx, vz) = (v.slice(0, n), v.slice(n, 2 * n));
    ux.dot_unchecked(&vz) ^ uz.dot_unchecked(&vx)
}

/// Stabilizer code on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerCode {
    stabilizer: PauliGroupBasis,
    logicals: Vec<LogicalPair>,
}

impl StabilizerCode {
    /// Code without logical operators; see [`StabilizerCode::complete_logicals`].
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self, StabilizerError> {
        Ok(Self {
            stabilizer: PauliGroupBasis::new(n, generators)?,
            logicals: Vec::new(),
        })
    }

    pub fn with_logicals(mut self, logicals: Vec<LogicalPair>) -> Result<Self, StabilizerError> {
        for p in logicals.iter().flat_map(|l| [l.x(), l.z()]) {
            if p.n() != self.n() {
                return Err(PauliError::SizeMismatch {
                    left: self.n(),
                    right: p.n(),
                }
                .into());
            }
        }
        self.logicals = logicals;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.stabilizer.n()
    }

    pub fn k(&self) -> usize {
        self.n().saturating_sub(self.stabilizer.rank())
    }

    pub fn generators(&self) -> &[PauliOperator] {
        self.stabilizer.generators()
    }

    pub fn stabilizer(&self) -> &PauliGroupBasis {
        &self.stabilizer
    }

    pub fn logicals(&self) -> &[LogicalPair] {
        &self.logicals
    }

    pub fn validate(&self) -> Diagnostics {
        let gens = self.generators();
        let mut diag = Diagnostics {
            rank: self.stabilizer.rank(),
            k: self.k(),
            ..Default::default()
        };
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if gens[i].anticommutes(&gens[j]).expect("uniform n") {
                    diag.anticommuting.push((i, j));
                }
            }
        }
        let mut span = BitMatrix::empty(2 * self.n());
        for (i, g) in gens.iter().enumerate() {
            let row = g.symplectic();
            if span.span_contains(&row).expect("uniform n") {
                diag.dependent.push(i);
            }
            span.push_row(row).expect("uniform n");
        }
        if !self.logicals.is_empty() {
            diag.logical_violations = self.logical_contract_violations(&self.logicals);
        }
        diag
    }

    /// Every way `logicals` fails the logical-operator contract for this stabilizer.
    pub fn logical_contract_violations(&self, logicals: &[LogicalPair]) -> Vec<String> {
        let mut out = Vec::new();
        if logicals.len() != self.k() {
            out.push(format!(
                "{} logical pairs for k = {}",
                logicals.len(),
                self.k()
            ));
        }
        let anti = |a: &PauliOperator, b: &PauliOperator| a.anticommutes(b).unwrap_or(true);
        for (i, pair) in logicals.iter().enumerate() {
            for (label, op) in [("Xbar", pair.x()), ("Zbar", pair.z())] {
                if !self.stabilizer.in_normalizer(op).unwrap_or(false) {
                    out.push(format!("{label}{} anticommutes with a generator", i + 1));
                }
                if self.stabilizer.in_group(op).unwrap_or(true) {
                    out.push(format!("{label}{} lies in the stabilizer", i + 1));
                }
            }
            if !anti(pair.x(), pair.z()) {
                out.push(format!("Xbar{0} commutes with Zbar{0}", i + 1));
            }
            for (j, other) in logicals.iter().enumerate().skip(i + 1) {
                if anti(pair.x(), other.x()) {
                    out.push(format!("Xbar{} anticommutes with Xbar{}", i + 1, j + 1));
                }
                if anti(pair.z(), other.z()) {
                    out.push(format!("Zbar{} anticommutes with Zbar{}", i + 1, j + 1));
                }
                if anti(pair.x(), other.z()) {
                    out.push(format!("Xbar{} anticommutes with Zbar{}", i + 1, j + 1));
                }
                if anti(other.x(), pair.z()) {
                    out.push(format!("Xbar{} anticommutes with Zbar{}", j + 1, i + 1));
                }
            }
        }
        out
    }

    /// `k` logical pairs obtained by symplectic Gram-Schmidt on a complement
    /// of the stabilizer inside its normalizer. On CSS codes every `Xbar` is
    /// pure X and every `Zbar` pure Z.
    pub fn complete_logicals(&self) -> Result<Vec<LogicalPair>, StabilizerError> {
        let diag = self.validate();
        if let Some(&(i, j)) = diag.anticommuting.first() {
            return Err(StabilizerError::InvalidStabilizer(format!(
                "generators {i} and {j} anticommute"
            )));
        }
        let n = self.n();
        let normalizer = match self.css_split() {
            Ok((xs, zs)) => {
                let hx = BitMatrix::from_rows(n, xs.iter().map(|p| p.x().clone()).collect())?;
                let hz = BitMatrix::from_rows(n, zs.iter().map(|p| p.z().clone()).collect())?;
                let zero = BitVector::zeros(n);
                hz.nullspace()
                    .rows()
                    .iter()
                    .map(|v| v.concat(&zero))
                    .chain(hx.nullspace().rows().iter().map(|v| zero.concat(v)))
                    .collect::<Vec<_>>()
            }
            Err(_) => {
                // (a|b) commutes with (gx|gz) iff a·gz + b·gx = 0
                let swapped = BitMatrix::from_rows(
                    2 * n,
                    self.generators()
                        .iter()
                        .map(|g| g.z().concat(g.x()))
                        .collect(),
                )?;
                swapped.nullspace().into_rows()
            }
        };

        let mut span = self.stabilizer.matrix().clone();
        let mut complement = Vec::new();
        for v in normalizer {
            if !span.span_contains(&v)? {
                span.push_row(v.clone())?;
                complement.push(v);
            }
        }

        let mut pairs = Vec::new();
        while !complement.is_empty() {
            let a = complement.remove(0);
            let partner = complement
                .iter()
                .position(|c| symplectic_product(&a, c))
                .ok_or_else(|| {
                    StabilizerError::InvalidStabilizer("degenerate symplectic complement".into())
                })?;
            let b = complement.remove(partner);
            for c in complement.iter_mut() {
                let with_b = symplectic_product(c, &b);
                let with_a = symplectic_product(c, &a);
                if with_b {
                    c.xor_assign(&a)?;
                }
                if with_a {
                    c.xor_assign(&b)?;
                }
            }
            pairs.push(LogicalPair::new(
                PauliOperator::from_symplectic(&a),
                PauliOperator::from_symplectic(&b),
            ));
        }
        Ok(pairs)
    }

    pub fn classify_error(&self, p: &PauliOperator) -> Result<ErrorClass, StabilizerError> {
        if p.n() != self.n() {
            return Err(PauliError::SizeMismatch {
                left: self.n(),
                right: p.n(),
            }
            .into());
        }
        Ok(if p.is_identity() {
            ErrorClass::Identity
        } else if !self.stabilizer.in_normalizer(p)? {
            ErrorClass::Detected
        } else if self.stabilizer.in_group(p)? {
            ErrorClass::InStabilizer
        } else {
            ErrorClass::Logical
        })
    }

    fn check_volume(&self, wmax: usize, filter: PauliFilter) -> Result<(), StabilizerError> {
        let volume = search_volume(self.n(), wmax, filter.letters().len());
        if volume > MAX_SEARCH_VOLUME {
            return Err(StabilizerError::SearchTooLarge {
                volume,
                limit: MAX_SEARCH_VOLUME,
            });
        }
        Ok(())
    }

    /// Exhaustive scan by ascending weight, lexicographic support and letter
    /// order X < Y < Z. The first logical found fixes the distance.
    pub fn distance(&self, wmax: usize) -> Result<DistanceResult, StabilizerError> {
        self.check_volume(wmax, PauliFilter::All)?;
        let wmax = wmax.min(self.n());
        let scanner = Scanner::new(self);
        let mut witness = None;
        scanner.scan(wmax, PauliFilter::All, |w, candidate, syndrome_zero| {
            if w == 0 || !syndrome_zero {
                return ControlFlow::Continue(());
            }
            let p = candidate.pauli();
            if !self.stabilizer.in_group(&p).expect("uniform n") {
                witness = Some(p);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(match witness {
            Some(p) => DistanceResult {
                d: Some(p.weight()),
                status: DistanceStatus::Exact,
                witness: Some(p),
            },
            None => DistanceResult {
                d: None,
                status: DistanceStatus::LowerBoundOnly { wmax },
                witness: None,
            },
        })
    }

    /// Exact class counts at every weight `<= wmax` among Paulis of the chosen type.
    pub fn sweep_errors(
        &self,
        wmax: usize,
        filter: PauliFilter,
    ) -> Result<SweepTally, StabilizerError> {
        self.check_volume(wmax, filter)?;
        let wmax = wmax.min(self.n());
        let mut by_weight = vec![ClassCounts::default(); wmax + 1];
        Scanner::new(self).scan(wmax, filter, |w, candidate, syndrome_zero| {
            let class = if w == 0 {
                ErrorClass::Identity
            } else if !syndrome_zero {
                ErrorClass::Detected
            } else if self
                .stabilizer
                .in_group(&candidate.pauli())
                .expect("uniform n")
            {
                ErrorClass::InStabilizer
            } else {
                ErrorClass::Logical
            };
            by_weight[w].bump(class);
            ControlFlow::Continue(())
        });
        Ok(SweepTally { filter, by_weight })
    }

    /// Generators split into (pure X, pure Z). Identity generators go to the X side.
    pub fn css_split(&self) -> Result<(Vec<PauliOperator>, Vec<PauliOperator>), StabilizerError> {
        let mut xs = Vec::new();
        let mut zs = Vec::new();
        for (index, g) in self.generators().iter().enumerate() {
            if g.is_x_type() {
                xs.push(g.clone());
            } else if g.is_z_type() {
                zs.push(g.clone());
            } else {
                return Err(StabilizerError::NotCss {
                    index,
                    generator: g.to_string(),
                });
            }
        }
        Ok((xs, zs))
    }

    pub fn is_css(&self) -> bool {
        self.css_split().is_ok()
    }

    /// Minimum pure-type logical weights, by enumerating `ker(Hz)` (resp.
    /// `ker(Hx)`) and discarding the elements of `rowspace(Hx)` (resp. `Hz`).
    pub fn distance_css(&self) -> Result<CssDistance, StabilizerError> {
        let (xs, zs) = self.css_split()?;
        let n = self.n();
        let hx = BitMatrix::from_rows(n, xs.iter().map(|p| p.x().clone()).collect())?;
        let hz = BitMatrix::from_rows(n, zs.iter().map(|p| p.z().clone()).collect())?;
        let min_outside = |kernel_of: &BitMatrix,
                           excluded: &BitMatrix|
         -> Result<Option<usize>, StabilizerError> {
            let excluded = RowSpace::new(excluded);
            let kernel = kernel_of.nullspace();
            let words = kernel.enumerate_span().map_err(|e| match e {
                Gf2Error::SpanTooLarge { rank, .. } => StabilizerError::SearchTooLarge {
                    volume: 1u128 << rank,
                    limit: 1u128 << crate::gf2::SPAN_ENUMERATION_LIMIT,
                },
                other => other.into(),
            })?;
            let mut best: Option<usize> = None;
            for w in words {
                let weight = w.weight();
                if weight == 0 || best.is_some_and(|b| weight >= b) {
                    continue;
                }
                if !excluded.contains(&w)? {
                    best = Some(weight);
                }
            }
            Ok(best)
        };
        Ok(CssDistance {
            x: min_outside(&hz, &hx)?,
            z: min_outside(&hx, &hz)?,
        })
    }
}

/// Precomputed per-qubit syndrome words for fast exhaustive scans.
struct Scanner {
    n: usize,
    words: usize,
    /// `table[q][l]`: syndrome of letter `Letter::NON_IDENTITY[l]` on qubit `q`.
    table: Vec<[Vec<u64>; 3]>,
}

impl Scanner {
    fn new(code: &StabilizerCode) -> Self {
        let n = code.n();
        let gens = code.generators();
        let words = gens.len().div_ceil(64).max(1);
        let table = (0..n)
            .map(|q| {
                Letter::NON_IDENTITY.map(|l| {
                    let single = PauliOperator::on(n, l, &[q]);
                    let mut s = vec![0u64; words];
                    for (gi, g) in gens.iter().enumerate() {
                        if g.anticommutes(&single).expect("uniform n") {
                            s[gi / 64] |= 1 << (gi % 64);
                        }
                    }
                    s
                })
            })
            .collect();
        Self { n, words, table }
    }

    /// Calls `visit(weight, candidate, syndrome_is_zero)` in search order.
    fn scan<F>(&self, wmax: usize, filter: PauliFilter, mut visit: F)
    where
        F: FnMut(usize, &Candidate<'_>, bool) -> ControlFlow<()>,
    {
        let letters = filter.letters();
        let column = |l: Letter| {
            Letter::NON_IDENTITY
                .iter()
                .position(|&m| m == l)
                .expect("non-identity")
        };
        let columns: Vec<usize> = letters.iter().map(|&l| column(l)).collect();
        let mut syndrome = vec![0u64; self.words];
        let empty = Candidate {
            n: self.n,
            support: &[],
            choice: &[],
            letters,
        };
        if visit(0, &empty, true).is_break() {
            return;
        }
        for w in 1..=wmax.min(self.n) {
            let mut support: Vec<usize> = (0..w).collect();
            loop {
                let mut choice = vec![0usize; w];
                loop {
                    syndrome.iter_mut().for_each(|s| *s = 0);
                    for (&q, &c) in support.iter().zip(&choice) {
                        for (s, r) in syndrome.iter_mut().zip(&self.table[q][columns[c]]) {
                            *s ^= r;
                        }
                    }
                    let zero = syndrome.iter().all(|&s| s == 0);
                    let candidate = Candidate {
                        n: self.n,
                        support: &support,
                        choice: &choice,
                        letters,
                    };
                    if visit(w, &candidate, zero).is_break() {
                        return;
                    }
                    // odometer over letters, last qubit fastest
                    let mut pos = w;
                    let advanced = loop {
                        if pos == 0 {
                            break false;
                        }
                        pos -= 1;
                        choice[pos] += 1;
                        if choice[pos] < letters.len() {
                            break true;
                        }
                        choice[pos] = 0;
                    };
                    if !advanced {
                        break;
                    }
                }
                if !next_combination(&mut support, self.n) {
                    break;
                }
            }
        }
    }
}

/// A Pauli visited by [`Scanner::scan`], materialised on demand.
struct Candidate<'a> {
    n: usize,
    support: &'a [usize],
    choice: &'a [usize],
    letters: &'a [Letter],
}

impl Candidate<'_> {
    fn pauli(&self) -> PauliOperator {
        let mut p = PauliOperator::identity(self.n);
        for (&q, &c) in self.support.iter().zip(self.choice) {
            p.set(q, self.letters[c]);
        }
        p
    }
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let w = c.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if c[i] < n - w + i {
            c[i] += 1;
            for j in i + 1..w {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
