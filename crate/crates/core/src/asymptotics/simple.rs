//! Two-option, two-state rules with costs `(b1, b2)` and states
//! `(b1, s2)`, `(s1, b2)`.
//!
//! For a fixed `gamma = (g, 1 - g)` the optimal first-state distribution sits
//! on the boundary `q1 = c1` of its feasible interval, so its branching number
//! `f1(g)` has a closed form, decreasing in `g`; symmetrically `f2` increases.
//! The optimum is where they cross.

use super::branching::alpha_branching_number;
use super::kl::kl_divergence;
use super::rules::OptimizedRule;
use crate::recurrence::Distribution;
use crate::{Error, Result};

/// Feasibility boundaries `(c1, c2)`: state one needs `q1 >= c1`, state two
/// needs `q2 >= c2`. Zero marks an unconstrained state.
pub fn simple_rule_boundaries(b1: usize, b2: usize, s1: usize, s2: usize, alpha: f64) -> (f64, f64) {
    let boundary = |b1: f64, b2: f64, s2: f64| {
        let num = b2 - alpha * s2;
        let den = alpha * (b1 - s2) - b1 + b2;
        if num <= 0.0 {
            0.0
        } else {
            num / den
        }
    };
    let (b1, b2, s1, s2) = (b1 as f64, b2 as f64, s1 as f64, s2 as f64);
    (boundary(b1, b2, s2), boundary(b2, b1, s1))
}

fn branch_value(c: f64, g: f64, big: f64, small: f64) -> f64 {
    if g >= c {
        return 0.0;
    }
    let d = kl_divergence(&[c, 1.0 - c], &[g, 1.0 - g]).expect("two entries");
    d / (c * big + (1.0 - c) * small)
}

pub fn optimize_simple_rule(
    b1: usize,
    b2: usize,
    s1: usize,
    s2: usize,
    alpha: f64,
    tol: f64,
) -> Result<OptimizedRule> {
    if s1 >= b1 || s2 >= b2 {
        return Err(Error::InvalidRule(format!("not simple: ({b1},{b2},{s1},{s2})")));
    }
    if alpha.is_nan() || alpha <= 1.0 {
        return Err(Error::InvalidRule(format!("alpha must exceed 1, got {alpha}")));
    }
    let (c1, c2) = simple_rule_boundaries(b1, b2, s1, s2, alpha);
    let f1 = |g: f64| branch_value(c1, g, b1 as f64, s2 as f64);
    let f2 = |g: f64| branch_value(c2, 1.0 - g, b2 as f64, s1 as f64);

    let grid: Vec<f64> = (1..=100).map(|i| i as f64 / 101.0).collect();
    for w in grid.windows(2) {
        if f1(w[1]) > f1(w[0]) + 1e-12 || f2(w[1]) + 1e-12 < f2(w[0]) {
            return Err(Error::InvalidRule("branch values are not monotone".into()));
        }
    }

    let degenerate = c1 <= 0.0 || c2 <= 0.0;
    let g = if c1 + c2 <= 1.0 {
        // both states can be satisfied at once
        (0.5 * (c1 + 1.0 - c2)).clamp(1e-9, 1.0 - 1e-9)
    } else {
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f1(mid) > f2(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let m_star = f1(g).max(f2(g));
    let gamma = [g, 1.0 - g];
    let per_state = vec![
        alpha_branching_number(&[b1, b2], &[b1, s2], &gamma, alpha, tol)?,
        alpha_branching_number(&[b1, b2], &[s1, b2], &gamma, alpha, tol)?,
    ];
    let check = per_state.iter().map(|r| r.m).fold(0.0, f64::max);
    if (check - m_star).abs() > tol.max(1e-9) {
        return Err(Error::Tolerance { tol, gap: (check - m_star).abs() });
    }
    Ok(OptimizedRule {
        gamma_star: Distribution::new(gamma.to_vec())?,
        m_star,
        lower_bound: m_star,
        per_state,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vc3_rule() {
        let r = optimize_simple_rule(1, 3, 0, 0, 1.5, 1e-7).unwrap();
        assert!((r.m_star.exp() - 1.043642).abs() < 5e-4);
        assert!(!r.degenerate);
    }

    #[test]
    fn degree_rules() {
        let r5 = optimize_simple_rule(1, 5, 0, 1, 1.5, 1e-7).unwrap();
        let r3 = optimize_simple_rule(1, 3, 0, 1, 1.5, 1e-7).unwrap();
        assert!((r5.m_star.exp() - 1.0171).abs() < 5e-4);
        assert!((r3.m_star.exp() - 1.0118).abs() < 5e-4);
    }

    #[test]
    fn boundary_derivation() {
        // q*b1 + (1-q)*b2 <= alpha (q*b1 + (1-q)*s2) holds with equality at c1
        let (b1, b2, s1, s2, a) = (2usize, 5usize, 1usize, 3usize, 1.3);
        let (c1, c2) = simple_rule_boundaries(b1, b2, s1, s2, a);
        let lhs = c1 * b1 as f64 + (1.0 - c1) * b2 as f64;
        let rhs = a * (c1 * b1 as f64 + (1.0 - c1) * s2 as f64);
        assert!((lhs - rhs).abs() < 1e-12);
        let lhs = c2 * b2 as f64 + (1.0 - c2) * b1 as f64;
        let rhs = a * (c2 * b2 as f64 + (1.0 - c2) * s1 as f64);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn unconstrained_state_is_reported() {
        // b2 - alpha*s2 = 0: state one never binds
        let r = optimize_simple_rule(1, 3, 0, 2, 1.5, 1e-7).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.m_star, 0.0);
    }

    #[test]
    fn rejects_non_simple_shape() {
        assert!(optimize_simple_rule(1, 3, 1, 0, 1.5, 1e-7).is_err());
        assert!(optimize_simple_rule(1, 3, 0, 0, 1.0, 1e-7).is_err());
    }
}
