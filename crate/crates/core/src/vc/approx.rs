use serde::Serialize;

use super::algorithms::{run_algo, CoverResult};
use super::config::{Algo, VcConfig};
use super::graph::Graph;
use crate::recurrence::{dp_eval_with, CompositeRecurrence, DpOptions};
use crate::repeat::{best_trial, budget, trial_count, ApproxOptions};
use crate::rng::trial_seed;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxResult {
    pub best: CoverResult,
    pub budget: usize,
    pub success: bool,
    pub trials: u64,
    /// Lower bound on the per-trial success probability.
    pub r: f64,
    pub best_trial: u64,
}

/// Repeats `algo` enough times that a cover of size `floor(alpha k)` is found
/// with constant probability whenever one of size `k` exists.
#[allow(clippy::too_many_arguments)]
pub fn alpha_approx(
    g: &Graph,
    k: usize,
    alpha: f64,
    algo: Algo,
    cfg: &VcConfig,
    rec: &CompositeRecurrence,
    seed: u64,
    opts: ApproxOptions,
) -> Result<ApproxResult> {
    let b = budget(alpha, k);
    let table = dp_eval_with(rec, b, k, DpOptions { exec: opts.exec, ..Default::default() })?;
    let r = table.prob(b as i64, k as i64);
    let trials = trial_count(r, opts.repeat_multiplier, opts.max_trials)?;
    // errors surface on the rerun of trial 0 below
    let size = |t: u64| run_algo(algo, g, cfg, trial_seed(seed, t)).map_or(usize::MAX, |c| c.cover.len());
    let best_trial = best_trial(trials, opts.exec, size);
    let best = run_algo(algo, g, cfg, trial_seed(seed, best_trial))?;
    Ok(ApproxResult { success: best.cover.len() <= b, budget: b, best, trials, r, best_trial })
}
