use alloc::vec;
use alloc::vec::Vec;

use crate::boxes::CropBox;
use crate::error::{Error, Result};
use crate::map::SaliencyMap;

/// Cumulative sums over the top-left subgrid, with an implicit zero border.
///
/// The table is `(m+1) x (n+1)`; row 0 and column 0 are zero, and
/// `table(i, j)` holds the sum of the first `i` rows and `j` columns of the
/// source map. Any rectangle then sums in O(1) by inclusion-exclusion, and
/// accumulation stays in f64 regardless of the source bit depth.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralMap {
    height: usize,
    width: usize,
    table: Vec<f64>, // (height + 1) * (width + 1)
}

impl IntegralMap {
    /// Builds the table in a single pass over the map.
    pub fn build(map: &SaliencyMap) -> Self {
        let values = map.values();
        let width = map.width();
        Self::from_fn(map.height(), width, |i, j| values[i * width + j])
    }

    /// Builds from a value source, reading each pixel exactly once.
    pub fn from_fn(height: usize, width: usize, mut pixel: impl FnMut(usize, usize) -> f64) -> Self {
        let stride = width + 1;
        let mut table = vec![0.0; (height + 1) * stride];
        for i in 0..height {
            let mut row_sum = 0.0;
            for j in 0..width {
                row_sum += pixel(i, j);
                table[(i + 1) * stride + (j + 1)] = table[i * stride + (j + 1)] + row_sum;
            }
        }
        Self { height, width, table }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Raw table entry; `at(i, j)` is the sum of the first `i` rows and `j` columns.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.table[i * (self.width + 1) + j]
    }

    /// Total mass of the underlying map.
    pub fn total(&self) -> f64 {
        self.at(self.height, self.width)
    }

    /// Sum of the values covered by `rect`, in O(1).
    pub fn rect_sum(&self, rect: &CropBox) -> Result<f64> {
        if rect.bottom >= self.height || rect.right >= self.width {
            return Err(Error::BoxOutOfBounds {
                bottom: rect.bottom,
                right: rect.right,
                height: self.height,
                width: self.width,
            });
        }
        let (t, l, b, r) = (rect.top, rect.left, rect.bottom, rect.right);
        Ok(self.at(b + 1, r + 1) - self.at(t, r + 1) - self.at(b + 1, l) + self.at(t, l))
    }
}

/// Per-column prefix sums: `table(i, j)` is the sum of the first `i` values
/// of column `j`. Row 0 is zero, so the column sum over rows `i1..=i2` is a
/// single subtraction per column.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnIntegralMap {
    height: usize,
    width: usize,
    table: Vec<f64>, // (height + 1) * width
}

impl ColumnIntegralMap {
    /// Builds the table in a single pass over the map.
    pub fn build(map: &SaliencyMap) -> Self {
        let values = map.values();
        let width = map.width();
        Self::from_fn(map.height(), width, |i, j| values[i * width + j])
    }

    /// Builds from a value source, reading each pixel exactly once.
    pub fn from_fn(height: usize, width: usize, mut pixel: impl FnMut(usize, usize) -> f64) -> Self {
        let mut table = vec![0.0; (height + 1) * width];
        for i in 0..height {
            for j in 0..width {
                table[(i + 1) * width + j] = table[i * width + j] + pixel(i, j);
            }
        }
        Self { height, width, table }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Raw table entry; row `i` holds per-column sums of the first `i` rows.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.width + j]
    }

    /// Per-column sums over the row band `i1..=i2` (inclusive), in O(n).
    pub fn band_sums(&self, i1: usize, i2: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.width];
        self.band_sums_into(i1, i2, &mut out)?;
        Ok(out)
    }

    /// As [`Self::band_sums`] but writing into a caller-owned buffer, so the
    /// band sweep in the crop search can reuse one allocation.
    pub fn band_sums_into(&self, i1: usize, i2: usize, out: &mut [f64]) -> Result<()> {
        if i1 > i2 || i2 >= self.height {
            return Err(Error::InvalidRowRange { i1, i2, height: self.height });
        }
        assert_eq!(out.len(), self.width, "band buffer length mismatch");
        let hi = &self.table[(i2 + 1) * self.width..(i2 + 2) * self.width];
        let lo = &self.table[i1 * self.width..(i1 + 1) * self.width];
        for ((o, &h), &l) in out.iter_mut().zip(hi).zip(lo) {
            *o = h - l;
        }
        Ok(())
    }
}
