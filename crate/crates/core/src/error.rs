use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by map construction, integral queries, and partitioning.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A map dimension is zero.
    EmptyMap,
    /// The value buffer length does not match `height * width`.
    ValueCountMismatch { expected: usize, got: usize },
    /// A saliency value is negative or non-finite.
    InvalidValue { row: usize, col: usize },
    /// A crop box reaches outside the map it is applied to.
    BoxOutOfBounds {
        bottom: usize,
        right: usize,
        height: usize,
        width: usize,
    },
    /// A row band `i1..=i2` is not valid for the map height.
    InvalidRowRange { i1: usize, i2: usize, height: usize },
    /// Window width outside `1..=len`; distinct from "no window met the threshold".
    InvalidWindowWidth { width: usize, len: usize },
    /// A parameter violates its documented range.
    InvalidConfig(&'static str),
    /// Base image dimensions cannot hold the partition result drawn onto them.
    DimensionMismatch { height: usize, width: usize },
    /// A round found no crop meeting its threshold and partial results were not allowed.
    RoundFailed {
        round: usize,
        threshold: f64,
        remaining: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyMap => write!(f, "map dimensions must be at least 1x1"),
            Error::ValueCountMismatch { expected, got } => {
                write!(f, "expected {expected} values, got {got}")
            }
            Error::InvalidValue { row, col } => {
                write!(f, "negative or non-finite value at pixel ({row}, {col})")
            }
            Error::BoxOutOfBounds {
                bottom,
                right,
                height,
                width,
            } => write!(
                f,
                "box extends to ({bottom}, {right}) outside a {height}x{width} map"
            ),
            Error::InvalidRowRange { i1, i2, height } => {
                write!(f, "row band {i1}..={i2} invalid for height {height}")
            }
            Error::InvalidWindowWidth { width, len } => {
                write!(f, "window width {width} outside 1..={len}")
            }
            Error::InvalidConfig(msg) => write!(f, "{msg}"),
            Error::DimensionMismatch { height, width } => {
                write!(f, "partition result does not fit a {height}x{width} base image")
            }
            Error::RoundFailed {
                round,
                threshold,
                remaining,
            } => write!(
                f,
                "round {round} found no crop with mass >= {threshold} (remaining mass {remaining})"
            ),
        }
    }
}

impl core::error::Error for Error {}
