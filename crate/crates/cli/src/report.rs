//! Machine-readable verification report. Field names are part of the
//! command-line contract and must not change.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use stabcat_core::{DistanceStatus, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    /// SHA-256 of the canonical input description.
    pub input_digest: String,
    /// Omitted under `--deterministic`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub rate_claimed: String,
    pub rate_computed: String,
    pub d_claimed: usize,
    pub d_computed: Option<usize>,
    /// `exact` or `lower_bound`.
    pub d_status: String,
    pub wmax: usize,
    pub witness: Option<String>,
    pub d1: Option<usize>,
    pub d1_perp: Option<usize>,
    pub d2: usize,
    pub rate_match: bool,
    pub distance_match: bool,
    pub spin_detection_holds: bool,
    pub phase_literal_holds: bool,
    pub phase_undetected_holds: bool,
    pub css: bool,
    pub paper_logicals_valid: bool,
    pub d_css_x: Option<usize>,
    pub d_css_z: Option<usize>,
    pub oracles_agree: Option<bool>,
    pub complete: bool,
    pub conv_frames: Option<usize>,
    pub free_distance: Option<String>,
    pub notes: Vec<String>,
}

pub fn digest(description: &str) -> String {
    Sha256::digest(description.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl ReportDocument {
    pub fn from_report(
        r: &VerificationReport,
        description: &str,
        wall_time_us: Option<u64>,
    ) -> Self {
        let (d_computed, d_status) = match r.d_computed.status {
            DistanceStatus::Exact => (r.d_computed.d, "exact"),
            DistanceStatus::LowerBoundOnly { .. } => (None, "lower_bound"),
        };
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest(description),
            wall_time_us,
            name: r.name.clone(),
            n: r.n,
            k: r.k_computed,
            rate_claimed: r.rate_claimed.to_string(),
            rate_computed: r.rate_computed.to_string(),
            d_claimed: r.d_claimed,
            d_computed,
            d_status: d_status.to_string(),
            wmax: r.wmax,
            witness: r.d_computed.witness.as_ref().map(|w| w.indexed()),
            d1: r.d1,
            d1_perp: r.d1_perp,
            d2: r.d2,
            rate_match: r.rate_match,
            distance_match: r.distance_match,
            spin_detection_holds: r.spin_detection_holds,
            phase_literal_holds: r.phase_literal_holds,
            phase_undetected_holds: r.phase_undetected_holds,
            css: r.css,
            paper_logicals_valid: r.block_logicals_valid,
            d_css_x: r.d_css.and_then(|d| d.x),
            d_css_z: r.d_css.and_then(|d| d.z),
            oracles_agree: r.oracles_agree,
            complete: r.complete,
            conv_frames: r.convolutional.map(|c| c.frames),
            free_distance: r.convolutional.map(|c| c.free_distance.to_string()),
            notes: r.notes.clone(),
        }
    }
}
