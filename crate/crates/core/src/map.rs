use alloc::vec;
use alloc::vec::Vec;

use crate::boxes::CropBox;
use crate::error::{Error, Result};

/// An `m x n` grid of non-negative attention values, stored row-major.
///
/// Construction validates every value (finite, `>= 0`); after that the map is
/// immutable and safe to share across threads. Normalized loaders keep values
/// in `[0, 1]`, but in-memory maps may carry any non-negative scale (tests use
/// small integers so sums stay exact).
#[derive(Debug, Clone, PartialEq)]
pub struct SaliencyMap {
    height: usize,
    width: usize,
    values: Vec<f64>,
}

impl SaliencyMap {
    /// Builds a map from a row-major value buffer.
    pub fn from_values(height: usize, width: usize, values: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyMap);
        }
        let expected = height
            .checked_mul(width)
            .ok_or(Error::ValueCountMismatch { expected: usize::MAX, got: values.len() })?;
        if values.len() != expected {
            return Err(Error::ValueCountMismatch { expected, got: values.len() });
        }
        for (idx, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidValue { row: idx / width, col: idx % width });
            }
        }
        Ok(Self { height, width, values })
    }

    /// Builds a map from equal-length rows. Handy in tests.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyMap);
        }
        let width = rows[0].as_ref().len();
        let mut values = Vec::with_capacity(rows.len() * width);
        for row in rows {
            let row = row.as_ref();
            if row.len() != width {
                return Err(Error::ValueCountMismatch { expected: width, got: row.len() });
            }
            values.extend_from_slice(row);
        }
        Self::from_values(rows.len(), width, values)
    }

    /// All-zero map.
    pub fn zeros(height: usize, width: usize) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::EmptyMap);
        }
        Ok(Self { height, width, values: vec![0.0; height * width] })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Value at `(row, col)`. Panics if out of bounds.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.height && col < self.width, "pixel out of bounds");
        self.values[row * self.width + col]
    }

    /// Row-major value buffer.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Total attention mass `S`.
    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Checks that `rect` lies inside the map.
    pub fn contains(&self, rect: &CropBox) -> bool {
        rect.bottom < self.height && rect.right < self.width
    }

    /// Zeroes the region covered by `rect`, returning the mass removed.
    /// Callers guarantee bounds; the public path is [`crate::suppress`].
    pub(crate) fn zero_region(&mut self, rect: &CropBox) -> f64 {
        let mut removed = 0.0;
        for row in rect.top..=rect.bottom {
            let base = row * self.width;
            for v in &mut self.values[base + rect.left..=base + rect.right] {
                removed += *v;
                *v = 0.0;
            }
        }
        removed
    }
}
