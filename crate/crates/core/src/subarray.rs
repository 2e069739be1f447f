use crate::error::{Error, Result};

/// Best fixed-width window found by [`max_subarray_fl`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowHit {
    /// 0-indexed start column of the window.
    pub start: usize,
    /// Window mass; at least the threshold passed to the search.
    pub sum: f64,
}

/// Operation counts of one rolling-sum pass, checked by the unit tests
/// against the expected `n` additions and `n - w` subtractions.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
struct PassOps {
    additions: usize,
    subtractions: usize,
}

/// Finds the maximum-sum window of width `width` in one rolling pass.
///
/// Evaluates all `n - width + 1` window sums, keeping the leftmost window
/// that attains the maximum; the result is returned only if that maximum is
/// at least `threshold`. Width outside `1..=n` is a contract violation,
/// distinct from the `Ok(None)` "no window met the threshold" outcome.
/// Values are assumed non-negative (saliency band sums).
pub fn max_subarray_fl(values: &[f64], width: usize, threshold: f64) -> Result<Option<WindowHit>> {
    rolling_pass(values, width, threshold).map(|(hit, _)| hit)
}

fn rolling_pass(values: &[f64], width: usize, threshold: f64) -> Result<(Option<WindowHit>, PassOps)> {
    let n = values.len();
    if width < 1 || width > n {
        return Err(Error::InvalidWindowWidth { width, len: n });
    }
    debug_assert!(values.iter().all(|&v| v >= 0.0), "negative band value");
    debug_assert!(threshold >= 0.0, "negative threshold");

    let mut ops = PassOps::default();
    let mut sum = 0.0;
    for &v in &values[..width] {
        sum += v;
        ops.additions += 1;
    }
    let mut best = WindowHit { start: 0, sum };
    for start in 1..=(n - width) {
        sum += values[start + width - 1];
        sum -= values[start - 1];
        ops.additions += 1;
        ops.subtractions += 1;
        // strict improvement only, so ties keep the leftmost window
        if sum > best.sum {
            best = WindowHit { start, sum };
        }
    }
    let hit = (best.sum >= threshold).then_some(best);
    Ok((hit, ops))
}

/// Exhaustive reference for [`max_subarray_fl`]: recomputes every window sum
/// from scratch and applies the same leftmost-maximum selection rule. Kept
/// free of rolling-sum reuse so the two routes stay independent.
pub fn max_subarray_fl_oracle(
    values: &[f64],
    width: usize,
    threshold: f64,
) -> Result<Option<WindowHit>> {
    let n = values.len();
    if width < 1 || width > n {
        return Err(Error::InvalidWindowWidth { width, len: n });
    }
    let mut best: Option<WindowHit> = None;
    for start in 0..=(n - width) {
        let sum: f64 = values[start..start + width].iter().sum();
        let better = match best {
            None => true,
            Some(b) => sum > b.sum,
        };
        if better {
            best = Some(WindowHit { start, sum });
        }
    }
    Ok(best.filter(|hit| hit.sum >= threshold))
}
