//! JSON report emitted by the `crop` and `partition` subcommands.
//!
//! Field order is fixed by struct declaration order and mass values are
//! rounded to 6 significant digits before serialization, so output for a
//! given input is byte-stable apart from the timing block.

use salpart_core::{Orientation, PartitionConfig, PartitionResult};
use serde::Serialize;

/// Version tag carried by every report.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub schema_version: String,
    pub input: InputInfo,
    pub config: ConfigEcho,
    pub boxes: Vec<BoxEntry>,
    pub boundaries: Vec<BoundaryEntry>,
    pub rounds: Vec<RoundEntry>,
    pub timing: Timing,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub height: usize,
    pub width: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub k: usize,
    pub r: f64,
    pub epsilon: f64,
    pub tau_max: f64,
    pub strict_disjoint: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxEntry {
    pub top: usize,
    pub left: usize,
    pub bottom: usize,
    pub right: usize,
    pub mass: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryEntry {
    pub orientation: String,
    pub position: usize,
    pub span: [usize; 2],
    pub between: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundEntry {
    pub round_index: usize,
    pub s_r_before: f64,
    pub t_used: f64,
    pub outcome: String,
    pub windows_searched: usize,
    pub rows_advanced: usize,
}

/// Wall-clock per phase, milliseconds. Not covered by golden comparisons.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Timing {
    pub load_ms: f64,
    pub partition_ms: f64,
    pub overlay_ms: f64,
    pub total_ms: f64,
}

/// Rounds to 6 significant decimal digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    format!("{x:.5e}").parse().expect("sig-digit format round-trips")
}

impl PartitionReport {
    pub fn new(
        input_path: &str,
        dims: (usize, usize),
        config: &PartitionConfig,
        result: &PartitionResult,
        timing: Timing,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            input: InputInfo {
                path: input_path.to_string(),
                height: dims.0,
                width: dims.1,
            },
            config: ConfigEcho {
                k: config.k,
                r: config.aspect_ratio,
                epsilon: config.epsilon,
                tau_max: config.tau_max,
                strict_disjoint: config.strict_disjoint,
            },
            boxes: result
                .boxes
                .iter()
                .map(|b| BoxEntry {
                    top: b.top,
                    left: b.left,
                    bottom: b.bottom,
                    right: b.right,
                    mass: sig6(b.mass),
                })
                .collect(),
            boundaries: result
                .boundaries
                .iter()
                .map(|l| BoundaryEntry {
                    orientation: match l.orientation {
                        Orientation::Vertical => "vertical".to_string(),
                        Orientation::Horizontal => "horizontal".to_string(),
                    },
                    position: l.position,
                    span: [l.span.0, l.span.1],
                    between: [l.between.0, l.between.1],
                })
                .collect(),
            rounds: result
                .rounds
                .iter()
                .map(|r| RoundEntry {
                    round_index: r.round_index,
                    s_r_before: sig6(r.mass_before),
                    t_used: sig6(r.threshold),
                    outcome: if r.found { "found" } else { "absent" }.to_string(),
                    windows_searched: r.windows_searched,
                    rows_advanced: r.rows_advanced,
                })
                .collect(),
            timing: Timing {
                load_ms: sig6(timing.load_ms),
                partition_ms: sig6(timing.partition_ms),
                overlay_ms: sig6(timing.overlay_ms),
                total_ms: sig6(timing.total_ms),
            },
        }
    }

    /// Pretty-printed JSON, stable field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
