//! Synthetic saliency maps built from Gaussian bumps, for demos and tests.

use salpart_core::{Error, Result, SaliencyMap};

/// One isotropic Gaussian bump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Blob {
    /// Center row, fractional centers allowed.
    pub row: f64,
    /// Center column.
    pub col: f64,
    /// Standard deviation in pixels.
    pub sigma: f64,
    /// Peak value before clipping.
    pub amplitude: f64,
}

impl Blob {
    pub fn new(row: f64, col: f64, sigma: f64, amplitude: f64) -> Self {
        Self { row, col, sigma, amplitude }
    }
}

/// Sums the blobs over an `height x width` grid and clips to `[0, 1]`.
/// An empty blob list yields the zero map.
pub fn synth_blobs(height: usize, width: usize, blobs: &[Blob]) -> Result<SaliencyMap> {
    if height == 0 || width == 0 {
        return Err(Error::EmptyMap);
    }
    for b in blobs {
        if !(b.sigma.is_finite() && b.sigma > 0.0) {
            return Err(Error::InvalidConfig("blob sigma must be finite and > 0"));
        }
        if !(b.amplitude.is_finite() && b.amplitude > 0.0) {
            return Err(Error::InvalidConfig("blob amplitude must be finite and > 0"));
        }
        if !(b.row.is_finite() && b.col.is_finite()) {
            return Err(Error::InvalidConfig("blob center must be finite"));
        }
    }
    let mut values = Vec::with_capacity(height * width);
    for i in 0..height {
        for j in 0..width {
            let mut v = 0.0;
            for b in blobs {
                let dr = i as f64 - b.row;
                let dc = j as f64 - b.col;
                v += b.amplitude * (-(dr * dr + dc * dc) / (2.0 * b.sigma * b.sigma)).exp();
            }
            values.push(v.clamp(0.0, 1.0));
        }
    }
    SaliencyMap::from_values(height, width, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_blob_list_is_zero_map() {
        let map = synth_blobs(4, 4, &[]).unwrap();
        assert_eq!(map.total_mass(), 0.0);
    }

    #[test]
    fn single_blob_peaks_at_center() {
        let map = synth_blobs(9, 9, &[Blob::new(4.0, 4.0, 1.0, 1.0)]).unwrap();
        let peak = map.get(4, 4);
        assert_eq!(peak, 1.0);
        for i in 0..9 {
            for j in 0..9 {
                assert!(map.get(i, j) <= peak);
            }
        }
    }

    #[test]
    fn two_disjoint_blobs_match_direct_evaluation() {
        let blobs = [Blob::new(3.0, 3.0, 1.0, 0.8), Blob::new(3.0, 20.0, 1.5, 0.6)];
        let map = synth_blobs(8, 24, &blobs).unwrap();
        for i in 0..8 {
            for j in 0..24 {
                let direct: f64 = blobs
                    .iter()
                    .map(|b| {
                        let dr = i as f64 - b.row;
                        let dc = j as f64 - b.col;
                        b.amplitude * (-(dr * dr + dc * dc) / (2.0 * b.sigma * b.sigma)).exp()
                    })
                    .sum();
                assert_eq!(map.get(i, j), direct.clamp(0.0, 1.0), "pixel ({i}, {j})");
            }
        }
        // the two supports stay separated: everything between is negligible
        for i in 0..8 {
            for j in 9..15 {
                assert!(map.get(i, j) < 1e-3);
            }
        }
    }

    #[test]
    fn overlapping_blobs_clip_at_one() {
        let blobs = [Blob::new(2.0, 2.0, 2.0, 1.0), Blob::new(2.0, 2.0, 2.0, 1.0)];
        let map = synth_blobs(5, 5, &blobs).unwrap();
        assert_eq!(map.get(2, 2), 1.0);
        assert!(map.values().iter().all(|&v| v <= 1.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(synth_blobs(0, 4, &[]).is_err());
        assert!(synth_blobs(4, 4, &[Blob::new(0.0, 0.0, 0.0, 1.0)]).is_err());
        assert!(synth_blobs(4, 4, &[Blob::new(0.0, 0.0, 1.0, -1.0)]).is_err());
        assert!(synth_blobs(4, 4, &[Blob::new(f64::NAN, 0.0, 1.0, 1.0)]).is_err());
    }
}
