use super::planted::PlantedInstance;
use super::Check;
use crate::hs::{three_hs_run, Catalog, Hypergraph3};
use crate::recurrence::{dp_eval_with, CompositeRecurrence, DpOptions};
use crate::repeat::budget;
use crate::rng::trial_seed;
use crate::vc::{build_recurrence, run_algo, Algo, Graph, VcConfig};
use crate::{Error, Exec, Result};

/// Largest admissible exponent gap at the last `k` of a convergence check.
pub const CONVERGENCE_TOL: f64 = 0.03;

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarlo {
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    /// Lower bound from the recurrence.
    pub dp_bound: f64,
    /// `dp_bound` minus three standard errors of `p_hat`.
    pub threshold: f64,
}

impl MonteCarlo {
    pub fn pass(&self) -> bool {
        self.p_hat >= self.threshold
    }

    pub fn check(&self, name: impl Into<String>) -> Check {
        Check::new(name, self.pass(), self.p_hat, self.threshold)
    }
}

/// Runs `trial(t)` for `t` in `0..trials` and compares the success rate to
/// `dp_bound` with a one-sided three-sigma slack.
pub fn monte_carlo<F>(trials: u64, dp_bound: f64, exec: Exec, trial: F) -> Result<MonteCarlo>
where
    F: Fn(u64) -> Result<bool> + Sync + Send,
{
    if trials == 0 {
        return Err(Error::SizeCap("at least one trial is required".into()));
    }
    let outcomes = exec.map_range(trials as usize, |t| trial(t as u64));
    let mut successes = 0;
    for o in outcomes {
        successes += u64::from(o?);
    }
    let p_hat = successes as f64 / trials as f64;
    let sigma = (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
    Ok(MonteCarlo { successes, trials, p_hat, dp_bound, threshold: dp_bound - 3.0 * sigma })
}

/// Success means a cover of size at most `b`; the bound is `p(b, k)` of the
/// algorithm's recurrence under `cfg`.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_bound_check(
    algo: Algo,
    cfg: &VcConfig,
    inst: &PlantedInstance<Graph>,
    b: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarlo> {
    let rec = build_recurrence(algo, cfg)?;
    let table = dp_eval_with(&rec, b, inst.k, DpOptions { exec, ..Default::default() })?;
    let bound = table.prob(b as i64, inst.k as i64);
    monte_carlo(trials, bound, exec, |t| {
        Ok(run_algo(algo, &inst.structure, cfg, trial_seed(seed, t))?.cover.len() <= b)
    })
}

pub fn monte_carlo_hs_check(
    cat: &Catalog,
    rec: &CompositeRecurrence,
    inst: &PlantedInstance<Hypergraph3>,
    b: usize,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarlo> {
    let table = dp_eval_with(rec, b, inst.k, DpOptions { exec, ..Default::default() })?;
    let bound = table.prob(b as i64, inst.k as i64);
    monte_carlo(trials, bound, exec, |t| {
        Ok(three_hs_run(&inst.structure, cat, trial_seed(seed, t))?.hitting_set.len() <= b)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Convergence {
    /// `(k, |-(1/k) ln p(floor(alpha k), k) - m|)` per requested `k`.
    pub gaps: Vec<(usize, f64)>,
}

impl Convergence {
    /// Gaps never grow and the last one is within [`CONVERGENCE_TOL`].
    pub fn pass(&self) -> bool {
        self.gaps.windows(2).all(|w| w[1].1 <= w[0].1)
            && self.gaps.last().is_some_and(|&(_, g)| g <= CONVERGENCE_TOL)
    }

    pub fn check(&self, name: impl Into<String>) -> Check {
        let last = self.gaps.last().map_or(f64::NAN, |&(_, g)| g);
        Check::new(name, self.pass(), last, CONVERGENCE_TOL)
    }
}

/// Compares the finite-`k` decay exponent of `rec` with its limit `m`.
pub fn convergence_check(
    rec: &CompositeRecurrence,
    alpha: f64,
    m: f64,
    k_list: &[usize],
    opts: DpOptions,
) -> Result<Convergence> {
    let k_max = k_list.iter().copied().max().unwrap_or(0);
    let table = dp_eval_with(rec, budget(alpha, k_max), k_max, opts)?;
    let gaps = k_list
        .iter()
        .map(|&k| {
            let lp = table.log_p(budget(alpha, k) as i64, k as i64);
            (k, (-lp / k as f64 - m).abs())
        })
        .collect();
    Ok(Convergence { gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{Distribution, Term};
    use crate::verify::make_planted_vc;
    use crate::vc::optimize_config;

    #[test]
    fn zero_trials_rejected() {
        assert!(monte_carlo(0, 0.5, Exec::Sequential, |_| Ok(true)).is_err());
        let mc = monte_carlo(100, 0.9, Exec::Sequential, |t| Ok(t % 2 == 0)).unwrap();
        assert_eq!(mc.successes, 50);
        assert!((mc.threshold - (0.9 - 0.15)).abs() < 1e-12);
        assert!(!mc.pass());
    }

    #[test]
    fn generous_budget_always_succeeds() {
        let (cfg, _) = optimize_config(Algo::Vc3, 1.5, 100, 1e-7, Exec::default()).unwrap();
        let inst = make_planted_vc(14, 4, 0.3, 2).unwrap();
        let mc = monte_carlo_bound_check(Algo::Vc3, &cfg, &inst, 14, 200, 1, Exec::default()).unwrap();
        assert_eq!(mc.p_hat, 1.0);
        assert!(mc.pass());
        // a budget below the optimum has a zero bound and passes trivially
        let low = monte_carlo_bound_check(Algo::Vc3, &cfg, &inst, 2, 200, 1, Exec::default()).unwrap();
        assert_eq!(low.dp_bound, 0.0);
        assert!(low.pass());
    }

    #[test]
    fn zero_rate_envelope() {
        // the pure selection term decays polynomially only
        let rec = CompositeRecurrence::new(vec![Term::new(vec![1], vec![1], Distribution::uniform(1)).unwrap()]);
        let c = convergence_check(&rec, 1.5, 0.0, &[10, 20, 40], DpOptions::default()).unwrap();
        for &(k, g) in &c.gaps {
            assert!(g <= 2.0 * (1.5 * k as f64 + 2.0).ln() / k as f64);
        }
        assert!(c.pass());
    }
}
