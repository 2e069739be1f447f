use alloc::vec::Vec;

use crate::boxes::CropBox;
use crate::error::{Error, Result};
use crate::far_crop::{smallest_far_crop, smallest_far_crop_avoiding};
use crate::integral::ColumnIntegralMap;
use crate::map::SaliencyMap;

/// Default margin by which a round's threshold sits above the even split of
/// the remaining mass.
pub const DEFAULT_EPSILON: f64 = 0.05;

/// Default cap on the threshold as a fraction of the remaining mass. Without
/// it the final round would demand more mass than is left on the map.
pub const DEFAULT_TAU_MAX: f64 = 0.95;

/// Parameters of a k-crop partition run.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionConfig {
    /// Number of crops to extract.
    pub k: usize,
    /// Crop aspect ratio, width / height.
    pub aspect_ratio: f64,
    /// Threshold margin; each round demands `(1 + epsilon) / (k - selected)`
    /// of the remaining mass, capped by `tau_max`.
    pub epsilon: f64,
    /// Threshold cap as a fraction of remaining mass, in `(0, 1]`.
    pub tau_max: f64,
    /// Reject candidates that spatially intersect an already accepted box.
    /// When off, suppression alone keeps rounds apart, which matches the
    /// plain greedy procedure but permits geometric overlap with zeroed areas.
    pub strict_disjoint: bool,
    /// Return fewer than `k` boxes when a round finds nothing, instead of
    /// erroring out.
    pub allow_partial: bool,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            k: 1,
            aspect_ratio: 1.0,
            epsilon: DEFAULT_EPSILON,
            tau_max: DEFAULT_TAU_MAX,
            strict_disjoint: true,
            allow_partial: true,
        }
    }
}

impl PartitionConfig {
    /// Config with the default thresholds and modes.
    pub fn new(k: usize, aspect_ratio: f64) -> Self {
        Self { k, aspect_ratio, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1"));
        }
        if !(self.aspect_ratio.is_finite() && self.aspect_ratio > 0.0) {
            return Err(Error::InvalidConfig("aspect ratio must be finite and > 0"));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::InvalidConfig("epsilon must be finite and >= 0"));
        }
        if !(self.tau_max.is_finite() && self.tau_max > 0.0 && self.tau_max <= 1.0) {
            return Err(Error::InvalidConfig("tau_max must be in (0, 1]"));
        }
        Ok(())
    }
}

/// What one extraction round saw and did.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundDiagnostics {
    /// 1-based round number.
    pub round_index: usize,
    /// Mass remaining on the map when the round started.
    pub mass_before: f64,
    /// Absolute threshold the round demanded.
    pub threshold: f64,
    /// Whether a crop was accepted.
    pub found: bool,
    /// Window scans performed by the round's search.
    pub windows_searched: usize,
    /// Pointer moves performed by the round's search.
    pub rows_advanced: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// Axis-aligned dividing line between two adjacent crop boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryLine {
    pub orientation: Orientation,
    /// Column (vertical) or row (horizontal) the line sits on.
    pub position: usize,
    /// Inclusive extent along the line: rows for vertical, columns for horizontal.
    pub span: (usize, usize),
    /// Indices into the sorted box list of the pair this line separates.
    pub between: (usize, usize),
}

/// Output of [`partition`]: sorted boxes, the lines separating consecutive
/// pairs, and per-round diagnostics (including rounds that found nothing).
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub boxes: Vec<CropBox>,
    pub boundaries: Vec<BoundaryLine>,
    pub rounds: Vec<RoundDiagnostics>,
}

/// Threshold for the next round: the remaining mass split over the crops
/// still to select, raised by `epsilon` and capped at `tau_max * remaining`.
pub fn compute_threshold(
    remaining: f64,
    k: usize,
    selected: usize,
    epsilon: f64,
    tau_max: f64,
) -> Result<f64> {
    if selected >= k {
        return Err(Error::InvalidConfig("all k crops already selected"));
    }
    let split = (1.0 + epsilon) * remaining / ((k - selected) as f64);
    Ok(split.min(tau_max * remaining))
}

/// Returns a copy of `map` with the region under `rect` zeroed, plus the
/// mass that was removed. The input map is never mutated.
pub fn suppress(map: &SaliencyMap, rect: &CropBox) -> Result<(SaliencyMap, f64)> {
    if !map.contains(rect) {
        return Err(Error::BoxOutOfBounds {
            bottom: rect.bottom,
            right: rect.right,
            height: map.height(),
            width: map.width(),
        });
    }
    let mut out = map.clone();
    let removed = out.zero_region(rect);
    Ok((out, removed))
}

/// Orders boxes left-to-right, top-to-bottom: lexicographic on
/// `(left, top, right, bottom)`. Stable, so equal-coordinate boxes keep
/// their discovery order.
pub fn sort_boxes(boxes: &mut [CropBox]) {
    boxes.sort_by_key(|b| (b.left, b.top, b.right, b.bottom));
}

/// Midline between two disjoint boxes: vertical when their row ranges
/// overlap (side-by-side pair), horizontal when their column ranges overlap
/// (stacked pair), and the larger-gap orientation for diagonal neighbours.
/// An intersecting pair has no defined boundary and yields `None`.
fn boundary_between(a: &CropBox, b: &CropBox, index: usize, height: usize, width: usize) -> Option<BoundaryLine> {
    let rows_overlap = a.top <= b.bottom && b.top <= a.bottom;
    let cols_overlap = a.left <= b.right && b.left <= a.right;
    if rows_overlap && cols_overlap {
        return None;
    }
    // boxes arrive sorted by left, so when columns are disjoint `a` is the
    // left box and `b.left > a.right`
    let vertical = || BoundaryLine {
        orientation: Orientation::Vertical,
        position: (a.right + b.left) / 2,
        span: (0, height - 1),
        between: (index, index + 1),
    };
    let horizontal = |upper: &CropBox, lower: &CropBox| BoundaryLine {
        orientation: Orientation::Horizontal,
        position: (upper.bottom + lower.top) / 2,
        span: (0, width - 1),
        between: (index, index + 1),
    };
    if rows_overlap {
        Some(vertical())
    } else {
        let (upper, lower) = if a.top <= b.top { (a, b) } else { (b, a) };
        if cols_overlap {
            Some(horizontal(upper, lower))
        } else {
            let col_gap = b.left - a.right;
            let row_gap = lower.top - upper.bottom;
            if col_gap >= row_gap {
                Some(vertical())
            } else {
                Some(horizontal(upper, lower))
            }
        }
    }
}

/// Boundary lines between each consecutive pair of sorted boxes on an
/// `height x width` map. Pairs that spatially intersect (possible when
/// strict-disjoint mode is off) get no line.
pub fn compute_boundaries(boxes: &[CropBox], height: usize, width: usize) -> Vec<BoundaryLine> {
    let mut lines = Vec::new();
    for i in 0..boxes.len().saturating_sub(1) {
        if let Some(line) = boundary_between(&boxes[i], &boxes[i + 1], i, height, width) {
            lines.push(line);
        }
    }
    lines
}

/// Runs the full k-round extraction.
///
/// Each round: derive the threshold from the remaining mass, rebuild the
/// column integral map of the working copy (suppression invalidates it),
/// search for the smallest qualifying crop, then zero the accepted region
/// and subtract its mass. Rounds that find nothing are recorded; with
/// `allow_partial` off they abort the run instead. The caller's map is
/// never mutated.
pub fn partition(map: &SaliencyMap, config: &PartitionConfig) -> Result<PartitionResult> {
    config.validate()?;
    let mut working = map.clone();
    let mut remaining = working.total_mass();
    let mut boxes: Vec<CropBox> = Vec::new();
    let mut rounds: Vec<RoundDiagnostics> = Vec::with_capacity(config.k);

    for round_index in 1..=config.k {
        let threshold =
            compute_threshold(remaining, config.k, boxes.len(), config.epsilon, config.tau_max)?;
        let colint = ColumnIntegralMap::build(&working);
        let outcome = if config.strict_disjoint {
            smallest_far_crop_avoiding(&colint, config.aspect_ratio, threshold, &boxes)?
        } else {
            smallest_far_crop(&colint, config.aspect_ratio, threshold)?
        };
        rounds.push(RoundDiagnostics {
            round_index,
            mass_before: remaining,
            threshold,
            found: outcome.best.is_some(),
            windows_searched: outcome.windows_searched,
            rows_advanced: outcome.rows_advanced,
        });
        match outcome.best {
            Some(accepted) => {
                let (next, removed) = suppress(&working, &accepted)?;
                working = next;
                remaining -= removed;
                boxes.push(accepted);
            }
            None => {
                if !config.allow_partial {
                    return Err(Error::RoundFailed { round: round_index, threshold, remaining });
                }
            }
        }
    }

    sort_boxes(&mut boxes);
    let boundaries = compute_boundaries(&boxes, map.height(), map.width());
    Ok(PartitionResult { boxes, boundaries, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integral::IntegralMap;

    #[test]
    fn threshold_plain_split() {
        let t = compute_threshold(100.0, 2, 0, 0.05, 0.95).unwrap();
        assert_eq!(t, 52.5);
    }

    #[test]
    fn threshold_clamp_engages() {
        let t = compute_threshold(100.0, 2, 1, 0.05, 0.95).unwrap();
        assert_eq!(t, 95.0);
    }

    #[test]
    fn threshold_zero_mass_is_zero() {
        assert_eq!(compute_threshold(0.0, 5, 2, 0.05, 0.95).unwrap(), 0.0);
    }

    #[test]
    fn threshold_rejects_exhausted_budget() {
        assert!(compute_threshold(10.0, 2, 2, 0.05, 0.95).is_err());
    }

    #[test]
    fn suppress_full_map() {
        let map = SaliencyMap::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let (out, removed) = suppress(&map, &CropBox::new(0, 0, 1, 1)).unwrap();
        assert_eq!(removed, 10.0);
        assert_eq!(out.total_mass(), 0.0);
    }

    #[test]
    fn suppress_zero_region_is_identity() {
        let map = SaliencyMap::from_rows(&[[0.0, 2.0], [0.0, 4.0]]).unwrap();
        let (out, removed) = suppress(&map, &CropBox::new(0, 0, 1, 0)).unwrap();
        assert_eq!(removed, 0.0);
        assert_eq!(out, map);
    }

    #[test]
    fn suppress_region_resums_to_zero_and_mass_balances() {
        let map = SaliencyMap::from_rows(&[
            [1.0, 2.0, 3.0, 4.0],
            [5.0, 6.0, 7.0, 8.0],
            [9.0, 1.0, 2.0, 3.0],
        ])
        .unwrap();
        let rect = CropBox::new(0, 1, 1, 2);
        let before = IntegralMap::build(&map).rect_sum(&rect).unwrap();
        let (out, removed) = suppress(&map, &rect).unwrap();
        assert_eq!(removed, before);
        assert_eq!(IntegralMap::build(&out).rect_sum(&rect).unwrap(), 0.0);
        assert_eq!(out.total_mass(), map.total_mass() - removed);
    }

    #[test]
    fn suppress_rejects_out_of_bounds() {
        let map = SaliencyMap::zeros(2, 2).unwrap();
        assert!(suppress(&map, &CropBox::new(0, 0, 2, 0)).is_err());
    }

    #[test]
    fn sort_orders_by_left_then_top() {
        let mut boxes = [
            CropBox::new(0, 10, 1, 11),
            CropBox::new(5, 2, 6, 3),
            CropBox::new(1, 2, 2, 3),
        ];
        sort_boxes(&mut boxes);
        assert_eq!(boxes[0].left, 2);
        assert_eq!(boxes[0].top, 1);
        assert_eq!(boxes[1].left, 2);
        assert_eq!(boxes[1].top, 5);
        assert_eq!(boxes[2].left, 10);

        let snapshot = boxes;
        sort_boxes(&mut boxes);
        assert_eq!(boxes, snapshot); // idempotent
    }

    #[test]
    fn boundary_side_by_side_is_vertical() {
        let boxes = [CropBox::new(0, 0, 3, 3), CropBox::new(0, 10, 3, 13)];
        let lines = compute_boundaries(&boxes, 8, 16);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].orientation, Orientation::Vertical);
        assert_eq!(lines[0].position, 6);
        assert_eq!(lines[0].span, (0, 7));
        assert_eq!(lines[0].between, (0, 1));
    }

    #[test]
    fn boundary_stacked_is_horizontal() {
        let boxes = [CropBox::new(0, 0, 2, 7), CropBox::new(8, 0, 10, 7)];
        let lines = compute_boundaries(&boxes, 12, 8);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].orientation, Orientation::Horizontal);
        assert_eq!(lines[0].position, 5);
        assert_eq!(lines[0].span, (0, 7));
    }

    #[test]
    fn boundary_diagonal_uses_larger_gap() {
        let boxes = [CropBox::new(0, 0, 1, 1), CropBox::new(6, 10, 7, 11)];
        let lines = compute_boundaries(&boxes, 8, 12);
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].orientation, Orientation::Vertical);
        assert_eq!(lines[0].position, 5);
    }

    #[test]
    fn boundary_omitted_for_intersecting_pair() {
        let boxes = [CropBox::new(0, 0, 3, 3), CropBox::new(2, 2, 5, 5)];
        assert!(compute_boundaries(&boxes, 8, 8).is_empty());
    }

    fn two_blob_map() -> SaliencyMap {
        // 8x16: blob of mass 40 around column 3, blob of mass 60 around column 12
        let mut values = vec![0.0; 8 * 16];
        for r in 2..=4 {
            for c in 2..=4 {
                values[r * 16 + c] = 4.0;
            }
        }
        values[3 * 16 + 3] = 8.0;
        for r in 3..=5 {
            for c in 11..=13 {
                values[r * 16 + c] = 6.0;
            }
        }
        values[4 * 16 + 12] = 12.0;
        SaliencyMap::from_values(8, 16, values).unwrap()
    }

    #[test]
    fn single_round_reduces_to_crop_search() {
        let mut values = vec![0.0; 36];
        values[2 * 6 + 3] = 5.0;
        values[3 * 6 + 3] = 5.0;
        let map = SaliencyMap::from_values(6, 6, values).unwrap();
        let config = PartitionConfig::new(1, 1.0);
        let result = partition(&map, &config).unwrap();
        assert_eq!(result.boxes.len(), 1);
        assert!(result.boundaries.is_empty());
        assert_eq!(result.rounds.len(), 1);

        // k = 1: one round with T = min(1.05, 0.95) * S, same as calling the
        // search directly
        let threshold = compute_threshold(10.0, 1, 0, 0.05, 0.95).unwrap();
        assert_eq!(result.rounds[0].threshold, threshold);
        let direct = smallest_far_crop(&ColumnIntegralMap::build(&map), 1.0, threshold)
            .unwrap()
            .best
            .unwrap();
        assert_eq!(result.boxes[0], direct);
        assert_eq!(direct.mass, 10.0);
    }

    #[test]
    fn two_blobs_split_into_two_boxes_with_vertical_boundary() {
        let map = two_blob_map();
        let config = PartitionConfig::new(2, 1.0);
        let result = partition(&map, &config).unwrap();
        assert_eq!(result.boxes.len(), 2);

        // heavier blob clears round 1 (T = 52.5), lighter blob round 2 (T = 38)
        assert_eq!(result.rounds[0].threshold, 52.5);
        assert_eq!(result.rounds[1].threshold, 38.0);
        assert!(result.rounds.iter().all(|r| r.found));

        // sorted output: left box holds the column-3 blob
        let (a, b) = (&result.boxes[0], &result.boxes[1]);
        assert_eq!((a.top, a.left, a.bottom, a.right, a.mass), (2, 2, 4, 4, 40.0));
        assert_eq!((b.top, b.left, b.bottom, b.right, b.mass), (3, 11, 5, 13, 60.0));

        assert_eq!(result.boundaries.len(), 1);
        let line = &result.boundaries[0];
        assert_eq!(line.orientation, Orientation::Vertical);
        assert_eq!(line.position, 7);
        assert!(line.position > a.right && line.position < b.left);
    }

    #[test]
    fn uniform_map_second_round_needs_clamp() {
        let map = SaliencyMap::from_values(8, 8, vec![1.0; 64]).unwrap();
        let config = PartitionConfig { strict_disjoint: false, ..PartitionConfig::new(2, 1.0) };
        let result = partition(&map, &config).unwrap();
        assert_eq!(result.boxes.len(), 2);

        // round 1: T = 33.6 -> smallest square is 6x6 = 36
        assert_eq!(result.rounds[0].threshold, 1.05 * 64.0 / 2.0);
        let first = result.boxes.iter().find(|b| b.area() == 36).unwrap();
        assert_eq!(first.mass, 36.0);

        // round 2: clamp takes over (0.95 * 28 < 1.05 * 28); only the full
        // map retains enough of the leftover L-shape
        assert_eq!(result.rounds[1].threshold, 0.95 * 28.0);
        let second = result.boxes.iter().find(|b| b.area() == 64).unwrap();
        assert_eq!(second.mass, 28.0);
    }

    #[test]
    fn zero_map_yields_degenerate_boxes() {
        let map = SaliencyMap::zeros(4, 4).unwrap();
        let config = PartitionConfig { strict_disjoint: false, ..PartitionConfig::new(2, 1.0) };
        let result = partition(&map, &config).unwrap();
        assert_eq!(result.boxes.len(), 2);
        assert!(result.rounds.iter().all(|r| r.threshold == 0.0));
        assert!(result.boxes.iter().all(|b| b.area() == 1 && b.mass == 0.0));
        // identical degenerate boxes intersect, so no boundary is defined
        assert!(result.boundaries.is_empty());
    }

    #[test]
    fn strict_mode_keeps_degenerate_boxes_disjoint() {
        let map = SaliencyMap::zeros(4, 4).unwrap();
        let result = partition(&map, &PartitionConfig::new(3, 1.0)).unwrap();
        assert_eq!(result.boxes.len(), 3);
        for i in 0..result.boxes.len() {
            for j in (i + 1)..result.boxes.len() {
                assert!(!result.boxes[i].intersects(&result.boxes[j]));
            }
        }
    }

    #[test]
    fn partial_failure_errors_unless_allowed() {
        let map = SaliencyMap::from_values(4, 4, vec![1.0; 16]).unwrap();
        let config = PartitionConfig {
            allow_partial: false,
            ..PartitionConfig::new(3, 8.0) // ratio 8 never fits a 4-wide map
        };
        let err = partition(&map, &config).unwrap_err();
        assert!(matches!(err, Error::RoundFailed { round: 1, .. }));

        let config = PartitionConfig { allow_partial: true, ..config };
        let result = partition(&map, &config).unwrap();
        assert!(result.boxes.is_empty());
        assert_eq!(result.rounds.len(), 3);
        assert!(result.rounds.iter().all(|r| !r.found));
    }

    #[test]
    fn rejects_invalid_config() {
        let map = SaliencyMap::zeros(2, 2).unwrap();
        assert!(partition(&map, &PartitionConfig::new(0, 1.0)).is_err());
        assert!(partition(&map, &PartitionConfig::new(1, 0.0)).is_err());
        let bad_tau = PartitionConfig { tau_max: 0.0, ..PartitionConfig::new(1, 1.0) };
        assert!(partition(&map, &bad_tau).is_err());
        let bad_eps = PartitionConfig { epsilon: -0.1, ..PartitionConfig::new(1, 1.0) };
        assert!(partition(&map, &bad_eps).is_err());
    }

    #[test]
    fn remaining_mass_is_non_increasing_and_conserved() {
        let map = two_blob_map();
        let result = partition(&map, &PartitionConfig::new(2, 1.0)).unwrap();
        assert!(result.rounds[1].mass_before < result.rounds[0].mass_before);
        // both blobs are captured whole, so the boxes account for all mass
        let removed: f64 = result.boxes.iter().map(|b| b.mass).sum();
        assert_eq!(removed, map.total_mass());
        assert_eq!(result.rounds[1].mass_before, 40.0);
    }
}
