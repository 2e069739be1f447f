//! Saliency map ingestion and the raw-f32 interchange format.
//!
//! Four on-disk formats are understood:
//!
//! - `png-gray`: any PNG; the first channel is taken as luminance, divided
//!   by 255 (8-bit) or 65535 (16-bit).
//! - `pgm`: binary (P5) or ASCII (P2) portable graymap, divided by the
//!   header maxval.
//! - `raw-f32`: 16-byte header — magic `SALF`, u32 LE height, u32 LE width,
//!   u32 reserved = 0 — followed by `height * width` little-endian f32
//!   values in row-major order.
//! - `csv`: one row per line, comma-separated decimals, no header.
//!
//! PNG and PGM sources land in `[0, 1]` by construction; raw-f32 and CSV
//! values are accepted as-is but must be non-negative and finite.

use std::fs;
use std::io;
use std::path::Path;

use salpart_core::SaliencyMap;
use thiserror::Error;

/// Magic bytes opening a raw-f32 file.
pub const RAW_F32_MAGIC: &[u8; 4] = b"SALF";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Decode(String),
    #[error("negative or non-finite value at pixel ({row}, {col})")]
    InvalidValue { row: usize, col: usize },
    #[error("{0}")]
    Map(#[from] salpart_core::Error),
}

/// On-disk formats accepted by [`load_saliency`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFormat {
    PngGray,
    Pgm,
    RawF32,
    Csv,
}

impl MapFormat {
    /// Parses the CLI spelling: `png-gray`, `pgm`, `raw-f32`, `csv`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "png-gray" => Some(Self::PngGray),
            "pgm" => Some(Self::Pgm),
            "raw-f32" => Some(Self::RawF32),
            "csv" => Some(Self::Csv),
            _ => None,
        }
    }

    /// Guesses the format from a file extension.
    pub fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "png" => Some(Self::PngGray),
            "pgm" => Some(Self::Pgm),
            "salf" | "raw" => Some(Self::RawF32),
            "csv" => Some(Self::Csv),
            _ => None,
        }
    }
}

/// Loads and normalizes a saliency map from disk.
pub fn load_saliency(path: &Path, format: MapFormat) -> Result<SaliencyMap, FormatError> {
    match format {
        MapFormat::PngGray => load_png_gray(path),
        MapFormat::Pgm => parse_pgm(&fs::read(path)?),
        MapFormat::RawF32 => parse_raw_f32(&fs::read(path)?),
        MapFormat::Csv => parse_csv(&fs::read_to_string(path)?),
    }
}

fn load_png_gray(path: &Path) -> Result<SaliencyMap, FormatError> {
    let img = image::open(path).map_err(|e| FormatError::Decode(e.to_string()))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    if w == 0 || h == 0 {
        return Err(salpart_core::Error::EmptyMap.into());
    }
    // first channel as luminance, scaled by the source bit depth
    use image::DynamicImage::*;
    let values: Vec<f64> = match img {
        ImageLuma8(buf) => buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect(),
        ImageLumaA8(buf) => buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect(),
        ImageRgb8(buf) => buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect(),
        ImageRgba8(buf) => buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect(),
        ImageLuma16(buf) => buf.pixels().map(|p| p.0[0] as f64 / 65535.0).collect(),
        ImageLumaA16(buf) => buf.pixels().map(|p| p.0[0] as f64 / 65535.0).collect(),
        ImageRgb16(buf) => buf.pixels().map(|p| p.0[0] as f64 / 65535.0).collect(),
        ImageRgba16(buf) => buf.pixels().map(|p| p.0[0] as f64 / 65535.0).collect(),
        other => {
            return Err(FormatError::Decode(format!(
                "unsupported PNG pixel layout {:?}",
                other.color()
            )))
        }
    };
    Ok(SaliencyMap::from_values(h, w, values)?)
}

/// Parses a P5 (binary) or P2 (ASCII) PGM buffer, normalizing by maxval.
pub fn parse_pgm(bytes: &[u8]) -> Result<SaliencyMap, FormatError> {
    let malformed = |what: &str| FormatError::Decode(format!("malformed PGM: {what}"));

    let magic = bytes.get(..2).ok_or_else(|| malformed("truncated magic"))?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        _ => return Err(malformed("expected P5 or P2 magic")),
    };

    // header tokens (width, height, maxval) with '#' comments allowed
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        // skip whitespace and comments
        loop {
            match bytes.get(pos) {
                Some(b'#') => {
                    while !matches!(bytes.get(pos), None | Some(b'\n')) {
                        pos += 1;
                    }
                }
                Some(c) if c.is_ascii_whitespace() => pos += 1,
                Some(_) => break,
                None => return Err(malformed("truncated header")),
            }
        }
        let start = pos;
        while matches!(bytes.get(pos), Some(c) if c.is_ascii_digit()) {
            pos += 1;
        }
        if pos == start {
            return Err(malformed("expected a decimal header field"));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).expect("digits are ascii");
        *field = text.parse().map_err(|_| malformed("header field out of range"))?;
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(salpart_core::Error::EmptyMap.into());
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed("maxval must be in 1..=65535"));
    }

    let count = width * height;
    let mut values = Vec::with_capacity(count);
    if binary {
        // single whitespace byte separates header from samples
        match bytes.get(pos) {
            Some(c) if c.is_ascii_whitespace() => pos += 1,
            _ => return Err(malformed("missing separator before samples")),
        }
        let data = &bytes[pos..];
        if maxval < 256 {
            if data.len() < count {
                return Err(malformed("truncated sample data"));
            }
            values.extend(data[..count].iter().map(|&b| b as f64 / maxval as f64));
        } else {
            // two-byte big-endian samples
            if data.len() < 2 * count {
                return Err(malformed("truncated sample data"));
            }
            values.extend(data[..2 * count].chunks_exact(2).map(|c| {
                u16::from_be_bytes([c[0], c[1]]) as f64 / maxval as f64
            }));
        }
    } else {
        let text = std::str::from_utf8(&bytes[pos..])
            .map_err(|_| malformed("non-ASCII sample data"))?;
        for token in text.split_ascii_whitespace().take(count) {
            let sample: u32 =
                token.parse().map_err(|_| malformed("non-numeric ASCII sample"))?;
            values.push(sample as f64 / maxval as f64);
        }
        if values.len() < count {
            return Err(malformed("truncated sample data"));
        }
    }
    // over-range samples would break the [0, 1] guarantee
    if let Some(idx) = values.iter().position(|&v| v > 1.0) {
        return Err(malformed(&format!(
            "sample above maxval at pixel ({}, {})",
            idx / width,
            idx % width
        )));
    }
    Ok(SaliencyMap::from_values(height, width, values)?)
}

/// Parses the raw-f32 interchange format.
pub fn parse_raw_f32(bytes: &[u8]) -> Result<SaliencyMap, FormatError> {
    let malformed = |what: &str| FormatError::Decode(format!("malformed raw-f32: {what}"));
    if bytes.len() < 16 {
        return Err(malformed("truncated header"));
    }
    if &bytes[0..4] != RAW_F32_MAGIC {
        return Err(malformed("bad magic, expected SALF"));
    }
    let height = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let width = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let reserved = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
    if reserved != 0 {
        return Err(malformed("reserved field must be zero"));
    }
    if height == 0 || width == 0 {
        return Err(salpart_core::Error::EmptyMap.into());
    }
    let count = height
        .checked_mul(width)
        .ok_or_else(|| malformed("dimensions overflow"))?;
    let expected = 16 + 4 * count;
    if bytes.len() != expected {
        return Err(malformed(&format!(
            "expected {expected} bytes for {height}x{width}, got {}",
            bytes.len()
        )));
    }
    let mut values = Vec::with_capacity(count);
    for (idx, chunk) in bytes[16..].chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().unwrap()) as f64;
        if !v.is_finite() || v < 0.0 {
            return Err(FormatError::InvalidValue { row: idx / width, col: idx % width });
        }
        values.push(v);
    }
    Ok(SaliencyMap::from_values(height, width, values)?)
}

/// Encodes a map in the raw-f32 format. Values are narrowed to f32; loading
/// the result back reproduces them bit-exactly at f32 precision.
pub fn encode_raw_f32(map: &SaliencyMap) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + 4 * map.values().len());
    out.extend_from_slice(RAW_F32_MAGIC);
    out.extend_from_slice(&(map.height() as u32).to_le_bytes());
    out.extend_from_slice(&(map.width() as u32).to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    for &v in map.values() {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    out
}

/// Writes a map to disk in the raw-f32 format.
pub fn save_raw_f32(path: &Path, map: &SaliencyMap) -> Result<(), FormatError> {
    Ok(fs::write(path, encode_raw_f32(map))?)
}

/// Parses comma-separated rows of decimals.
pub fn parse_csv(text: &str) -> Result<SaliencyMap, FormatError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, cell) in line.split(',').enumerate() {
            let v: f64 = cell.trim().parse().map_err(|_| {
                FormatError::Decode(format!(
                    "malformed CSV: cell ({line_no}, {col}) is not a number"
                ))
            })?;
            if !v.is_finite() || v < 0.0 {
                return Err(FormatError::InvalidValue { row: line_no, col });
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(FormatError::Decode(format!(
                    "malformed CSV: row {line_no} has {} cells, expected {}",
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(salpart_core::Error::EmptyMap.into());
    }
    Ok(SaliencyMap::from_rows(&rows)?)
}

/// Renders a map as CSV text, the inverse of [`parse_csv`] for test setups.
pub fn encode_csv(map: &SaliencyMap) -> String {
    let mut out = String::new();
    for row in 0..map.height() {
        for col in 0..map.width() {
            if col > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", map.get(row, col)));
        }
        out.push('\n');
    }
    out
}
