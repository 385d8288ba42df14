use serde::Serialize;

use super::dual::{ln_weights, StateDual};
use super::kl::kl_divergence;
use crate::recurrence::{CompositeRecurrence, Distribution};
use crate::{Error, Exec, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchingNumberResult {
    /// Natural-log decay per unit of coverage; `+inf` when infeasible.
    pub m: f64,
    pub q_star: Option<Distribution>,
    pub base: f64,
}

impl BranchingNumberResult {
    pub(crate) fn infinite() -> Self {
        BranchingNumberResult { m: f64::INFINITY, q_star: None, base: f64::INFINITY }
    }
}

/// Minimum of `D(q || gamma) / (q . k)` over distributions `q` with
/// `q . b <= alpha * (q . k)` and `q . k > 0`.
///
/// Solved through the one-dimensional dual in the tilt parameter; the
/// returned `m` is re-evaluated at the returned `q_star` and must sit within
/// `tol` of the certified lower bound.
pub fn alpha_branching_number(
    b: &[usize],
    k: &[usize],
    gamma: &[f64],
    alpha: f64,
    tol: f64,
) -> Result<BranchingNumberResult> {
    if b.len() != k.len() {
        return Err(Error::LengthMismatch(b.len(), k.len()));
    }
    if b.len() != gamma.len() {
        return Err(Error::LengthMismatch(b.len(), gamma.len()));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::Term(format!("alpha must be positive, got {alpha}")));
    }
    let gamma = Distribution::new(gamma.to_vec())?;
    let dual = StateDual::new(b, k, alpha);
    let lng = ln_weights(&gamma);
    if !dual.feasible(&lng) {
        return Ok(BranchingNumberResult::infinite());
    }
    let slack: f64 = gamma.iter().zip(&dual.c).map(|(g, c)| g * c).sum();
    if slack <= 0.0 {
        return Ok(BranchingNumberResult { m: 0.0, q_star: Some(gamma), base: 1.0 });
    }
    let (mut lo, mut hi) = (0.0f64, dual.vertex_bound(&lng));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dual.eval(&lng, mid).f >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let q = repair(dual.eval(&lng, hi).q, &dual, &gamma);
    let qk: f64 = q.iter().zip(&dual.k).map(|(a, b)| a * b).sum();
    let m = kl_divergence(&q, &gamma)? / qk;
    let gap = (m - lo).abs().max((m - hi).abs());
    if !m.is_finite() || gap > tol {
        return Err(Error::Tolerance { tol, gap });
    }
    Ok(BranchingNumberResult { m, q_star: Some(Distribution::new(q)?), base: m.exp() })
}

/// Pull a dual point that misses the slack constraint by rounding back onto
/// it, by mixing in the most slack option.
fn repair(mut q: Vec<f64>, dual: &StateDual, gamma: &[f64]) -> Vec<f64> {
    let s: f64 = q.iter().sum();
    q.iter_mut().for_each(|x| *x /= s);
    let slack: f64 = q.iter().zip(&dual.c).map(|(a, c)| a * c).sum();
    if slack <= 0.0 {
        return q;
    }
    let (best, cb) = (0..q.len())
        .filter(|&i| gamma[i] > 0.0)
        .map(|i| (i, dual.c[i]))
        .fold((usize::MAX, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    if best == usize::MAX || cb >= 0.0 {
        return q;
    }
    // q' = (1-e) q + e * vertex, slack' = (1-e) slack + e cb = 0
    let e = slack / (slack - cb);
    q.iter_mut().for_each(|x| *x *= 1.0 - e);
    q[best] += e;
    q
}

/// Rate of a composite recurrence: the largest per-term branching number.
pub fn composite_rate(
    rec: &CompositeRecurrence,
    alpha: f64,
    tol: f64,
) -> Result<(f64, Vec<BranchingNumberResult>)> {
    composite_rate_with(rec, alpha, tol, Exec::default())
}

pub fn composite_rate_with(
    rec: &CompositeRecurrence,
    alpha: f64,
    tol: f64,
    exec: Exec,
) -> Result<(f64, Vec<BranchingNumberResult>)> {
    let per: Vec<Result<BranchingNumberResult>> = exec.map_slice(&rec.terms, |t| {
        alpha_branching_number(t.b(), t.k(), t.gamma(), alpha, tol)
    });
    let per: Vec<BranchingNumberResult> = per.into_iter().collect::<Result<_>>()?;
    let mut m = 0.0f64;
    for (j, r) in per.iter().enumerate() {
        if !r.m.is_finite() {
            return Err(Error::InfiniteRate(j));
        }
        m = m.max(r.m);
    }
    Ok((m, per))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::Term;

    fn objective(k: &[usize], g: &[f64], q: &[f64]) -> f64 {
        let qk: f64 = q.iter().zip(k).map(|(a, &x)| a * x as f64).sum();
        kl_divergence(q, g).unwrap() / qk
    }

    #[test]
    fn already_feasible_gamma_gives_zero() {
        let r = alpha_branching_number(&[1, 3], &[1, 0], &[0.9, 0.1], 1.5, 1e-7).unwrap();
        assert_eq!(r.m, 0.0);
        assert_eq!(r.q_star.unwrap().weights(), &[0.9, 0.1]);
    }

    #[test]
    fn infeasible_single_option() {
        let r = alpha_branching_number(&[2], &[1], &[1.0], 1.5, 1e-7).unwrap();
        assert_eq!(r.m, f64::INFINITY);
        assert!(r.q_star.is_none());
    }

    #[test]
    fn zero_weight_forces_zero_mass() {
        // only the first option satisfies the constraint, but it has no weight
        let r = alpha_branching_number(&[1, 3], &[1, 0], &[0.0, 1.0], 1.5, 1e-7).unwrap();
        assert_eq!(r.m, f64::INFINITY);
    }

    #[test]
    fn certificate_holds_and_beats_grid() {
        let (b, k, g, alpha) = ([1usize, 3], [1usize, 0], [0.3, 0.7], 1.5);
        let r = alpha_branching_number(&b, &k, &g, alpha, 1e-7).unwrap();
        let q = r.q_star.clone().unwrap();
        let qb: f64 = q.iter().zip(&b).map(|(a, &x)| a * x as f64).sum();
        let qk: f64 = q.iter().zip(&k).map(|(a, &x)| a * x as f64).sum();
        assert!(qb <= alpha * qk + 1e-9);
        assert!((r.m - objective(&k, &g, &q)).abs() <= 1e-7);
        // brute force over a fine grid of feasible points
        let mut best = f64::INFINITY;
        for i in 1..100_000 {
            let x = i as f64 / 100_000.0;
            let q = [x, 1.0 - x];
            if x + 3.0 * (1.0 - x) <= alpha * x {
                best = best.min(objective(&k, &g, &q));
            }
        }
        assert!(r.m <= best + 1e-12 && best - r.m < 1e-4, "{} vs {best}", r.m);
    }

    #[test]
    fn composite_takes_max_and_flags_infinite() {
        let t1 = Term::new(vec![1, 3], vec![1, 0], Distribution::binary(0.4).unwrap()).unwrap();
        let t2 = Term::new(vec![1, 3], vec![0, 3], Distribution::binary(0.4).unwrap()).unwrap();
        let rec = CompositeRecurrence::new(vec![t1.clone(), t2.clone()]);
        let (m, per) = composite_rate(&rec, 1.5, 1e-7).unwrap();
        let a = alpha_branching_number(t1.b(), t1.k(), t1.gamma(), 1.5, 1e-7).unwrap().m;
        let b = alpha_branching_number(t2.b(), t2.k(), t2.gamma(), 1.5, 1e-7).unwrap().m;
        assert_eq!(m, a.max(b));
        assert_eq!(per.len(), 2);
        let bad = Term::new(vec![2], vec![1], Distribution::uniform(1)).unwrap();
        let rec = CompositeRecurrence::new(vec![t1, bad]);
        assert!(matches!(composite_rate(&rec, 1.5, 1e-7), Err(Error::InfiniteRate(1))));
    }

    #[test]
    fn all_feasible_recurrence_has_zero_rate() {
        let t = Term::new(vec![1], vec![1], Distribution::uniform(1)).unwrap();
        let u = Term::new(vec![2], vec![2], Distribution::uniform(1)).unwrap();
        let (m, _) = composite_rate(&CompositeRecurrence::new(vec![t, u]), 1.5, 1e-7).unwrap();
        assert_eq!(m, 0.0);
    }
}
