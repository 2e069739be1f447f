//! Multi-region saliency partitioning.
//!
//! Given a saliency (attention) map, this crate extracts `k` disjoint
//! fixed-aspect-ratio crop boxes and the boundary lines that separate them.
//! Each round picks the smallest box whose captured mass clears a threshold
//! derived from the attention still on the map, then zeroes the selected
//! region so later rounds look elsewhere. The per-round search runs a
//! two-pointer sweep over row bands with a rolling fixed-width window scan
//! per band, so one round costs O(mn) and `k` crops cost O(k·mn) — no
//! quadratic candidate enumeration.
//!
//! The building blocks are exposed individually:
//!
//! - [`SaliencyMap`]: validated grid of non-negative attention values.
//! - [`IntegralMap`] / [`ColumnIntegralMap`]: O(1) rectangle sums and O(1)
//!   per-column row-band sums after an O(mn) build.
//! - [`max_subarray_fl`]: best fixed-width window of a row vector, one pass.
//! - [`smallest_far_crop`]: smallest fixed-aspect-ratio box meeting a mass
//!   threshold.
//! - [`partition`]: the full k-round extraction with diagnostics.
//! - [`render_overlay`]: box/boundary overlay for visual checks.
//!
//! Exhaustive reference searches ([`max_subarray_fl_oracle`],
//! [`far_crop_oracle`]) ship alongside the fast paths; they recompute
//! everything by brute force and exist so tests and benchmarks can compare
//! against an independent route.
//!
//! The crate is `no_std` (with `alloc`) and has no dependencies; file
//! formats, synthesis, and the CLI live in the companion `salpart` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod boxes;
mod error;
mod far_crop;
mod integral;
mod map;
mod partition;
mod render;
mod subarray;

pub use boxes::CropBox;
pub use error::{Error, Result};
pub use far_crop::{far_crop_oracle, smallest_far_crop, smallest_far_crop_avoiding, CropSearchOutcome};
pub use integral::{ColumnIntegralMap, IntegralMap};
pub use map::SaliencyMap;
pub use partition::{
    compute_boundaries, compute_threshold, partition, sort_boxes, suppress, BoundaryLine,
    Orientation, PartitionConfig, PartitionResult, RoundDiagnostics, DEFAULT_EPSILON,
    DEFAULT_TAU_MAX,
};
pub use render::{render_overlay, OverlaySpec, RgbGrid};
pub use subarray::{max_subarray_fl, max_subarray_fl_oracle, WindowHit};
