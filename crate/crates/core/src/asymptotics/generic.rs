//! Generic rule optimizer: minimize over `gamma` the largest per-state
//! branching number.
//!
//! Bisection on the target value `t`. The level set at `t` is
//! `{gamma : F_j(gamma, t) >= 0 for every state j}` where `F_j` is the
//! state's dual function (see `dual.rs`), concave in `gamma`; the per-state
//! distributions are eliminated in closed form. Each feasibility check runs
//! entropic mirror ascent on a soft-min of the `F_j`, stopping as soon as it
//! holds a witness (`min_j F_j >= 0`) or a concavity upper bound below zero.

use super::dual::{ln_weights, StateDual};
use super::rules::{evaluate_at, OptimizedRule, RuleSpec};
use crate::recurrence::Distribution;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct GenericOptions {
    pub max_bisection: usize,
    /// Mirror-ascent iteration cap per feasibility check.
    pub max_inner: usize,
    /// Lower clamp on every entry of `gamma` while optimizing.
    pub floor: f64,
}

impl Default for GenericOptions {
    fn default() -> Self {
        GenericOptions { max_bisection: 200, max_inner: 50_000, floor: 1e-9 }
    }
}

enum Check {
    Feasible(Vec<f64>),
    Infeasible(Vec<f64>),
    Undecided(Vec<f64>),
}

struct Problem {
    duals: Vec<StateDual>,
    floor: f64,
}

struct Eval {
    fmin: f64,
    soft: f64,
    grad: Vec<f64>,
    upper: f64,
}

impl Problem {
    fn eval(&self, gamma: &[f64], t: f64, tau: f64) -> Eval {
        let lng = ln_weights(gamma);
        let pts: Vec<_> = self.duals.iter().map(|d| d.eval(&lng, t)).collect();
        let fmin = pts.iter().map(|p| p.f).fold(f64::INFINITY, f64::min);
        let w: Vec<f64> = pts.iter().map(|p| (-(p.f - fmin) / tau).exp()).collect();
        let ws: f64 = w.iter().sum();
        let soft = fmin - tau * ws.ln();
        let mut grad = vec![0.0; gamma.len()];
        let mut avg = 0.0;
        for (p, wj) in pts.iter().zip(&w) {
            let pj = wj / ws;
            avg += pj * p.f;
            for i in 0..gamma.len() {
                grad[i] += pj * p.q[i] / gamma[i];
            }
        }
        let dot: f64 = grad.iter().zip(gamma).map(|(g, x)| g * x).sum();
        let gmax = grad.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Eval { fmin, soft, grad, upper: avg + gmax - dot }
    }

    fn project(&self, mut g: Vec<f64>) -> Vec<f64> {
        for _ in 0..3 {
            let s: f64 = g.iter().sum();
            g.iter_mut().for_each(|x| *x = (*x / s).max(self.floor));
        }
        let s: f64 = g.iter().sum();
        g.iter_mut().for_each(|x| *x /= s);
        g
    }

    fn check(&self, start: &[f64], t: f64, max_inner: usize) -> Check {
        let mut gamma = self.project(start.to_vec());
        let mut tau = 1e-2;
        let mut eta = 1.0;
        let mut cur = self.eval(&gamma, t, tau);
        for _ in 0..max_inner {
            if cur.fmin >= 0.0 {
                return Check::Feasible(gamma);
            }
            if cur.upper < 0.0 {
                return Check::Infeasible(gamma);
            }
            let gap = cur.upper - cur.soft;
            if gap < 0.1 * tau {
                if tau < 1e-14 {
                    return Check::Undecided(gamma);
                }
                tau *= 0.1;
                cur = self.eval(&gamma, t, tau);
                continue;
            }
            let gmax = cur.grad.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut moved = false;
            while eta > 1e-30 {
                let cand: Vec<f64> =
                    gamma.iter().zip(&cur.grad).map(|(x, g)| x * (eta * (g - gmax)).exp()).collect();
                let cand = self.project(cand);
                let next = self.eval(&cand, t, tau);
                if next.soft > cur.soft {
                    gamma = cand;
                    cur = next;
                    eta *= 1.5;
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !moved {
                if tau < 1e-14 {
                    return Check::Undecided(gamma);
                }
                eta = 1.0;
                tau *= 0.1;
                cur = self.eval(&gamma, t, tau);
            }
        }
        Check::Undecided(gamma)
    }
}

fn max_rate(rule: &RuleSpec, gamma: &[f64], alpha: f64) -> f64 {
    let lng = ln_weights(gamma);
    rule.states
        .iter()
        .map(|s| {
            let d = StateDual::new(&rule.b, s, alpha);
            if !d.feasible(&lng) {
                return f64::INFINITY;
            }
            let (mut lo, mut hi) = (0.0f64, d.vertex_bound(&lng));
            if d.eval(&lng, 0.0).f >= 0.0 {
                return 0.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if d.eval(&lng, mid).f >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        })
        .fold(0.0, f64::max)
}

pub fn optimize_rule_generic(rule: &RuleSpec, alpha: f64, tol: f64) -> Result<OptimizedRule> {
    optimize_rule_generic_with(rule, alpha, tol, GenericOptions::default())
}

pub fn optimize_rule_generic_with(
    rule: &RuleSpec,
    alpha: f64,
    tol: f64,
    opts: GenericOptions,
) -> Result<OptimizedRule> {
    rule.validate()?;
    let r = rule.b.len();
    let problem = Problem {
        duals: rule.states.iter().map(|s| StateDual::new(&rule.b, s, alpha)).collect(),
        floor: opts.floor,
    };
    let uniform = vec![1.0 / r as f64; r];
    let all = vec![0.0; r];
    if problem.duals.iter().any(|d| !d.feasible(&all)) {
        let mut out = evaluate_at(rule, &Distribution::uniform(r), alpha, tol)?;
        out.m_star = f64::INFINITY;
        out.lower_bound = f64::INFINITY;
        return Ok(out);
    }
    let degenerate = problem.duals.iter().any(|d| d.c.iter().all(|&c| c <= 0.0));

    let mut best = uniform.clone();
    let mut hi = max_rate(rule, &best, alpha);
    let mut lo = 0.0f64;
    let mut warm = uniform;
    match problem.check(&warm, 0.0, opts.max_inner) {
        Check::Feasible(g) => {
            hi = max_rate(rule, &g, alpha);
            best = g;
        }
        Check::Infeasible(g) | Check::Undecided(g) => warm = g,
    }
    for _ in 0..opts.max_bisection {
        if hi - lo <= 0.5 * tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match problem.check(&warm, mid, opts.max_inner) {
            Check::Feasible(g) => {
                let v = max_rate(rule, &g, alpha);
                if v < hi {
                    hi = v;
                    best = g.clone();
                }
                warm = g;
            }
            Check::Infeasible(g) => {
                lo = mid;
                warm = g;
            }
            Check::Undecided(g) => {
                lo = mid;
                warm = g;
            }
        }
    }
    let gamma = Distribution::new(best)?;
    let mut out = evaluate_at(rule, &gamma, alpha, tol)?;
    let gap = out.m_star - lo;
    if gap > tol.max(1e-9) {
        return Err(Error::Tolerance { tol, gap });
    }
    out.lower_bound = lo.min(out.m_star);
    out.degenerate = degenerate;
    Ok(out)
}
