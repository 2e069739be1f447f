//! Scaling harness: times k-crop partitions of a seeded random map and
//! collects the exact operation counters alongside wall time. Wall clock at
//! desk scale is noisy; the counters are the reliable linearity witness.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use salpart_core::{partition, PartitionConfig, Result, SaliencyMap};

/// Exact CSV header line for [`rows_to_csv`].
pub const CSV_HEADER: &str = "k,ms_mean,ms_stddev,subarray_calls,rows_advanced";

/// Timing and counter summary of the runs at one value of k.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub ms_mean: f64,
    pub ms_stddev: f64,
    /// Fixed-width window scans summed over all rounds; identical across
    /// repeats for a fixed map.
    pub subarray_calls: usize,
    pub rows_advanced: usize,
}

/// Uniform random map in `[0, 1)`, reproducible from the seed.
pub fn random_map(height: usize, width: usize, seed: u64) -> Result<SaliencyMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..height * width).map(|_| rng.random::<f64>()).collect();
    SaliencyMap::from_values(height, width, values)
}

/// Runs `repeats` timed partitions for every k in `1..=k_max`.
pub fn run_bench(
    height: usize,
    width: usize,
    k_max: usize,
    ratio: f64,
    repeats: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let map = random_map(height, width, seed)?;
    let repeats = repeats.max(1);
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let config = PartitionConfig::new(k, ratio);
        let mut samples_ms = Vec::with_capacity(repeats);
        let mut subarray_calls = 0;
        let mut rows_advanced = 0;
        for _ in 0..repeats {
            let started = Instant::now();
            let result = partition(&map, &config)?;
            samples_ms.push(started.elapsed().as_secs_f64() * 1e3);
            subarray_calls = result.rounds.iter().map(|r| r.windows_searched).sum();
            rows_advanced = result.rounds.iter().map(|r| r.rows_advanced).sum();
        }
        let mean = samples_ms.iter().sum::<f64>() / samples_ms.len() as f64;
        let variance = samples_ms.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>()
            / samples_ms.len() as f64;
        rows.push(BenchRow {
            k,
            ms_mean: mean,
            ms_stddev: variance.sqrt(),
            subarray_calls,
            rows_advanced,
        });
    }
    Ok(rows)
}

/// CSV table with [`CSV_HEADER`] and one line per k.
pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{:.3},{:.3},{},{}\n",
            row.k, row.ms_mean, row.ms_stddev, row.subarray_calls, row.rows_advanced
        ));
    }
    out
}
