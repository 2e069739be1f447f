use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::SaliencyMap;
use crate::partition::{Orientation, PartitionResult};

/// Plain row-major RGB pixel grid, the in-memory form of an overlay image.
/// Encoding to PNG lives in the companion crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbGrid {
    height: usize,
    width: usize,
    pixels: Vec<[u8; 3]>,
}

impl RgbGrid {
    pub fn new(height: usize, width: usize, fill: [u8; 3]) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyMap);
        }
        Ok(Self { height, width, pixels: vec![fill; height * width] })
    }

    /// Grayscale view of a saliency map, replicated across channels.
    /// Values in `[0, 1]` map to `0..=255` rounding half up; anything above
    /// 1 saturates at white.
    pub fn from_gray_map(map: &SaliencyMap) -> Self {
        let pixels = map
            .values()
            .iter()
            .map(|&v| {
                let level = (v * 255.0 + 0.5) as u8; // truncation of x+0.5 is round-half-up; saturates
                [level, level, level]
            })
            .collect();
        Self { height: map.height(), width: map.width(), pixels }
    }

    /// Wraps an existing row-major pixel buffer.
    pub fn from_pixels(height: usize, width: usize, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyMap);
        }
        if pixels.len() != height * width {
            return Err(Error::ValueCountMismatch { expected: height * width, got: pixels.len() });
        }
        Ok(Self { height, width, pixels })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, row: usize, col: usize) -> [u8; 3] {
        self.pixels[row * self.width + col]
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    fn set(&mut self, row: usize, col: usize, color: [u8; 3]) {
        self.pixels[row * self.width + col] = color;
    }

    fn fill_rect(&mut self, top: usize, left: usize, bottom: usize, right: usize, color: [u8; 3]) {
        for row in top..=bottom {
            for col in left..=right {
                self.set(row, col, color);
            }
        }
    }
}

/// Colors and stroke width for [`render_overlay`]. Defaults follow the usual
/// presentation: red box outlines, cyan partition lines, 2px strokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlaySpec {
    pub box_color: [u8; 3],
    pub line_color: [u8; 3],
    pub stroke: usize,
}

impl Default for OverlaySpec {
    fn default() -> Self {
        Self { box_color: [255, 0, 0], line_color: [0, 255, 255], stroke: 2 }
    }
}

/// Draws a partition result onto a copy of `base`: boundary lines first,
/// then box outlines on top. Box strokes grow inward from the border; line
/// strokes extend toward higher coordinates and clamp at the image edge.
/// Pixels under no stroke are untouched, and the output is a pure function
/// of its inputs.
pub fn render_overlay(
    base: &RgbGrid,
    result: &PartitionResult,
    spec: &OverlaySpec,
) -> Result<RgbGrid> {
    if spec.stroke < 1 {
        return Err(Error::InvalidConfig("stroke width must be at least 1"));
    }
    let (h, w) = (base.height, base.width);
    for b in &result.boxes {
        if b.bottom >= h || b.right >= w {
            return Err(Error::DimensionMismatch { height: h, width: w });
        }
    }
    for line in &result.boundaries {
        let (pos_limit, span_limit) = match line.orientation {
            Orientation::Vertical => (w, h),
            Orientation::Horizontal => (h, w),
        };
        if line.position >= pos_limit || line.span.0 > line.span.1 || line.span.1 >= span_limit {
            return Err(Error::DimensionMismatch { height: h, width: w });
        }
    }

    let mut out = base.clone();
    let s = spec.stroke;

    for line in &result.boundaries {
        match line.orientation {
            Orientation::Vertical => {
                let last_col = (line.position + s - 1).min(w - 1);
                out.fill_rect(line.span.0, line.position, line.span.1, last_col, spec.line_color);
            }
            Orientation::Horizontal => {
                let last_row = (line.position + s - 1).min(h - 1);
                out.fill_rect(line.position, line.span.0, last_row, line.span.1, spec.line_color);
            }
        }
    }

    for b in &result.boxes {
        let top_band = (b.top + s - 1).min(b.bottom);
        let bottom_band = b.bottom.saturating_sub(s - 1).max(b.top);
        let left_band = (b.left + s - 1).min(b.right);
        let right_band = b.right.saturating_sub(s - 1).max(b.left);
        out.fill_rect(b.top, b.left, top_band, b.right, spec.box_color);
        out.fill_rect(bottom_band, b.left, b.bottom, b.right, spec.box_color);
        out.fill_rect(b.top, b.left, b.bottom, left_band, spec.box_color);
        out.fill_rect(b.top, right_band, b.bottom, b.right, spec.box_color);
    }

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::CropBox;
    use crate::partition::{BoundaryLine, PartitionResult};

    fn empty_result() -> PartitionResult {
        PartitionResult { boxes: Vec::new(), boundaries: Vec::new(), rounds: Vec::new() }
    }

    #[test]
    fn gray_conversion_rounds_half_up_and_saturates() {
        let map = SaliencyMap::from_rows(&[[0.0, 1.0, 0.5, 1.0 / 510.0, 2.0]]).unwrap();
        let grid = RgbGrid::from_gray_map(&map);
        assert_eq!(grid.get(0, 0), [0, 0, 0]);
        assert_eq!(grid.get(0, 1), [255, 255, 255]);
        assert_eq!(grid.get(0, 2), [128, 128, 128]); // 127.5 + 0.5
        assert_eq!(grid.get(0, 3), [1, 1, 1]); // exactly 0.5 rounds up
        assert_eq!(grid.get(0, 4), [255, 255, 255]);
    }

    #[test]
    fn empty_result_is_identity() {
        let base = RgbGrid::new(4, 5, [9, 9, 9]).unwrap();
        let out = render_overlay(&base, &empty_result(), &OverlaySpec::default()).unwrap();
        assert_eq!(out, base);
    }

    #[test]
    fn full_image_box_strokes_border_only() {
        let base = RgbGrid::new(8, 8, [10, 20, 30]).unwrap();
        let result = PartitionResult {
            boxes: vec![CropBox::new(0, 0, 7, 7)],
            boundaries: Vec::new(),
            rounds: Vec::new(),
        };
        let spec = OverlaySpec { stroke: 1, ..OverlaySpec::default() };
        let out = render_overlay(&base, &result, &spec).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                let on_border = r == 0 || r == 7 || c == 0 || c == 7;
                let expected = if on_border { [255, 0, 0] } else { [10, 20, 30] };
                assert_eq!(out.get(r, c), expected, "pixel ({r}, {c})");
            }
        }
    }

    #[test]
    fn untouched_pixels_survive_and_output_is_deterministic() {
        let map = SaliencyMap::from_rows(&[[0.1; 10]; 10]).unwrap();
        let base = RgbGrid::from_gray_map(&map);
        let result = PartitionResult {
            boxes: vec![CropBox::new(1, 1, 6, 6)],
            boundaries: vec![BoundaryLine {
                orientation: Orientation::Vertical,
                position: 7,
                span: (0, 9),
                between: (0, 1),
            }],
            rounds: Vec::new(),
        };
        let spec = OverlaySpec::default();
        let first = render_overlay(&base, &result, &spec).unwrap();
        let second = render_overlay(&base, &result, &spec).unwrap();
        assert_eq!(first, second);
        // inside the box but off the 2px stroke ring, and away from the line
        assert_eq!(first.get(3, 3), base.get(3, 3));
        assert_eq!(first.get(0, 0), base.get(0, 0));
        // line occupies columns 7..=8 over all rows
        assert_eq!(first.get(9, 7), [0, 255, 255]);
        assert_eq!(first.get(9, 8), [0, 255, 255]);
        assert_eq!(first.get(9, 6), base.get(9, 6));
    }

    #[test]
    fn stroke_clamps_at_image_edge() {
        let base = RgbGrid::new(3, 3, [0, 0, 0]).unwrap();
        let result = PartitionResult {
            boxes: Vec::new(),
            boundaries: vec![BoundaryLine {
                orientation: Orientation::Horizontal,
                position: 2,
                span: (0, 2),
                between: (0, 1),
            }],
            rounds: Vec::new(),
        };
        let out = render_overlay(&base, &result, &OverlaySpec::default()).unwrap();
        for c in 0..3 {
            assert_eq!(out.get(2, c), [0, 255, 255]);
            assert_eq!(out.get(1, c), [0, 0, 0]);
        }
    }

    #[test]
    fn rejects_result_larger_than_base() {
        let base = RgbGrid::new(4, 4, [0, 0, 0]).unwrap();
        let result = PartitionResult {
            boxes: vec![CropBox::new(0, 0, 4, 4)],
            boundaries: Vec::new(),
            rounds: Vec::new(),
        };
        assert_eq!(
            render_overlay(&base, &result, &OverlaySpec::default()),
            Err(Error::DimensionMismatch { height: 4, width: 4 })
        );
    }

    #[test]
    fn rejects_zero_stroke() {
        let base = RgbGrid::new(4, 4, [0, 0, 0]).unwrap();
        let spec = OverlaySpec { stroke: 0, ..OverlaySpec::default() };
        assert!(render_overlay(&base, &empty_result(), &spec).is_err());
    }

    #[test]
    fn tiny_box_fills_under_wide_stroke() {
        let base = RgbGrid::new(5, 5, [0, 0, 0]).unwrap();
        let result = PartitionResult {
            boxes: vec![CropBox::new(2, 2, 2, 2)],
            boundaries: Vec::new(),
            rounds: Vec::new(),
        };
        let out = render_overlay(&base, &result, &OverlaySpec::default()).unwrap();
        assert_eq!(out.get(2, 2), [255, 0, 0]);
        assert_eq!(out.get(2, 3), [0, 0, 0]);
    }
}
