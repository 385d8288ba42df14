//! Shared pieces of the repetition wrappers: budget, trial count and the
//! parallel best-of-trials scan.

use crate::{Error, Exec, Result};

#[derive(Clone, Copy, Debug)]
pub struct ApproxOptions {
    /// Trials run is `ceil(repeat_multiplier / r)`.
    pub repeat_multiplier: f64,
    pub max_trials: u64,
    pub exec: Exec,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions { repeat_multiplier: 1.0, max_trials: 10_000_000, exec: Exec::default() }
    }
}

/// `floor(alpha * k)` with a small guard against representation error.
pub fn budget(alpha: f64, k: usize) -> usize {
    (alpha * k as f64 + 1e-9).floor() as usize
}

/// Number of independent runs needed for success probability `r` each.
pub(crate) fn trial_count(r: f64, multiplier: f64, cap: u64) -> Result<u64> {
    if r <= 0.0 {
        return Err(Error::CertainFailure);
    }
    let t = (multiplier / r).ceil().max(1.0);
    if t > cap as f64 {
        return Err(Error::SizeCap(format!("{t} trials exceeds the cap of {cap}")));
    }
    Ok(t as u64)
}

/// Runs `run(trial)` for every trial, returning the index with the
/// smallest size (lowest index on ties).
pub(crate) fn best_trial<F>(trials: u64, exec: Exec, size: F) -> u64
where
    F: Fn(u64) -> usize + Sync + Send,
{
    let sizes = exec.map_range(trials as usize, |i| size(i as u64));
    let mut best = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s < sizes[best] {
            best = i;
        }
    }
    best as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_guard() {
        assert_eq!(budget(1.15, 20), 23);
        assert_eq!(budget(1.5, 3), 4);
        assert_eq!(budget(1.1, 10), 11);
    }

    #[test]
    fn trial_counts() {
        assert!(matches!(trial_count(0.0, 1.0, 10), Err(Error::CertainFailure)));
        assert_eq!(trial_count(0.3, 1.0, 10).unwrap(), 4);
        assert!(trial_count(1e-9, 1.0, 10).is_err());
    }
}
