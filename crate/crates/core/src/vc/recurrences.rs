//! Lower-bound recurrences of the vertex-cover algorithms and the
//! per-rule optimization that fills a [`VcConfig`].

use serde::Serialize;

use super::config::{Algo, VcConfig};
use crate::asymptotics::{optimize_rule, OptimizedRule, RuleSpec};
use crate::recurrence::{CompositeRecurrence, Distribution, Term};
use crate::{Error, Exec, Result};

/// Which configuration entry a rule's distribution lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RuleSlot {
    Gamma(usize),
    Lambda1(usize),
    Lambda2(usize),
    Lambda3,
    Delta3(usize),
}

impl RuleSlot {
    pub fn name(self) -> String {
        match self {
            RuleSlot::Gamma(d) => format!("gamma_{d}"),
            RuleSlot::Lambda1(r) => format!("lambda1_{r}"),
            RuleSlot::Lambda2(r) => format!("lambda2_{r}"),
            RuleSlot::Lambda3 => "lambda3".into(),
            RuleSlot::Delta3(r) => format!("delta3way_{r}"),
        }
    }

    fn spec(self, delta_cap: usize) -> RuleSpec {
        let (b, states) = match self {
            RuleSlot::Gamma(d) if d >= delta_cap => (vec![1, d], vec![vec![1, 0], vec![0, d]]),
            RuleSlot::Gamma(d) => (vec![1, d], vec![vec![1, 1], vec![0, d]]),
            RuleSlot::Lambda1(r) => (vec![2, r], vec![vec![2, 2], vec![1, r]]),
            RuleSlot::Lambda2(r) => (vec![3, r], vec![vec![3, 1], vec![1, r]]),
            RuleSlot::Lambda3 => (vec![3, 2], vec![vec![3, 0], vec![1, 2]]),
            RuleSlot::Delta3(r) => (
                vec![3, 4, r + 1],
                vec![vec![3, 1, 3], vec![1, 4, r], vec![2, 4, 1 + r.div_ceil(2)], vec![2, 2, r + 1]],
            ),
        };
        RuleSpec::new(self.name(), b, states)
    }

    fn read(self, cfg: &VcConfig) -> Result<Distribution> {
        match self {
            RuleSlot::Gamma(d) => Distribution::binary(cfg.gamma(d)?),
            RuleSlot::Lambda1(r) => Distribution::binary(cfg.lambda1(r)?),
            RuleSlot::Lambda2(r) => Distribution::binary(cfg.lambda2(r)?),
            RuleSlot::Lambda3 => Distribution::binary(cfg.lambda3()?),
            RuleSlot::Delta3(r) => Distribution::new(cfg.delta3way(r)?.to_vec()),
        }
    }

    fn write(self, cfg: &mut VcConfig, g: &Distribution) {
        match self {
            RuleSlot::Gamma(d) => {
                cfg.gamma_by_degree.insert(d, g[0]);
            }
            RuleSlot::Lambda1(r) => {
                cfg.lambda1.insert(r, g[0]);
            }
            RuleSlot::Lambda2(r) => {
                cfg.lambda2.insert(r, g[0]);
            }
            RuleSlot::Lambda3 => cfg.lambda3 = Some(g[0]),
            RuleSlot::Delta3(r) => {
                let t = [g[0], g[1], 1.0 - g[0] - g[1]];
                cfg.delta3way.insert(r, t);
            }
        }
    }
}

fn slots(algo: Algo, delta_cap: usize, excluded: Option<usize>) -> Vec<RuleSlot> {
    let cap = delta_cap;
    match algo {
        Algo::Vc3 => vec![RuleSlot::Gamma(3)],
        Algo::Vc3Star => (3..=cap).map(RuleSlot::Gamma).collect(),
        Algo::EnhancedVc3Star => (2..=cap).filter(|&d| Some(d) != excluded).map(RuleSlot::Gamma).collect(),
        Algo::BetterVc => {
            let mut s: Vec<RuleSlot> = (5..=cap).map(RuleSlot::Gamma).collect();
            s.extend((3..=7).map(RuleSlot::Lambda1));
            s.extend((3..=4).map(RuleSlot::Lambda2));
            s.push(RuleSlot::Lambda3);
            s.extend((5..=7).map(RuleSlot::Delta3));
            s
        }
    }
}

/// The rules an algorithm branches with, each paired with its config slot.
/// VC3 always uses the 3-neighbor rule regardless of `delta_cap`.
pub fn rule_specs(algo: Algo, delta_cap: usize, excluded: Option<usize>) -> Vec<(RuleSlot, RuleSpec)> {
    slots(algo, delta_cap, excluded)
        .into_iter()
        .map(|s| {
            let cap = if algo == Algo::Vc3 { 3 } else { delta_cap };
            (s, s.spec(cap))
        })
        .collect()
}

fn single(b: usize, k: usize) -> Term {
    Term::new(vec![b], vec![k], Distribution::uniform(1)).expect("valid single-option term")
}

pub fn build_recurrence(algo: Algo, cfg: &VcConfig) -> Result<CompositeRecurrence> {
    cfg.validate()?;
    let excluded = match algo {
        Algo::EnhancedVc3Star => Some(cfg.excluded_degree()?),
        _ => None,
    };
    if algo == Algo::BetterVc && cfg.delta_cap < 5 {
        return Err(Error::Config("better_vc needs delta_cap >= 5".into()));
    }
    let mut terms = Vec::new();
    if algo == Algo::BetterVc {
        terms.push(single(1, 1));
        terms.push(single(2, 2));
    }
    for (slot, spec) in rule_specs(algo, cfg.delta_cap, excluded) {
        terms.extend(spec.terms(&slot.read(cfg)?)?);
    }
    if algo == Algo::EnhancedVc3Star {
        terms.push(single(1, 1));
    }
    Ok(CompositeRecurrence::new(terms))
}

#[derive(Clone, Debug, Serialize)]
pub struct RateReport {
    pub algo: Algo,
    pub alpha: f64,
    pub m: f64,
    pub base: f64,
    pub worst_rule: String,
    pub rules: Vec<(RuleSlot, OptimizedRule)>,
}

fn optimize_slots(specs: &[(RuleSlot, RuleSpec)], alpha: f64, tol: f64, exec: Exec) -> Result<Vec<(RuleSlot, OptimizedRule)>> {
    let out = exec.map_slice(specs, |(_, spec)| optimize_rule(spec, alpha, tol));
    specs.iter().zip(out).map(|((s, _), r)| r.map(|r| (*s, r))).collect()
}

/// Optimized degree rules for `d = from..=delta_cap` (the last one is the
/// capped rule).
pub fn degree_rates(alpha: f64, delta_cap: usize, from: usize, tol: f64, exec: Exec) -> Result<Vec<(usize, OptimizedRule)>> {
    let specs: Vec<_> = (from..=delta_cap).map(|d| (RuleSlot::Gamma(d), RuleSlot::Gamma(d).spec(delta_cap))).collect();
    Ok(optimize_slots(&specs, alpha, tol, exec)?
        .into_iter()
        .map(|(s, r)| match s {
            RuleSlot::Gamma(d) => (d, r),
            _ => unreachable!(),
        })
        .collect())
}

fn argmax_lowest(rates: &[(usize, OptimizedRule)]) -> usize {
    let mut best = 0;
    for (i, (_, r)) in rates.iter().enumerate() {
        if r.m_star > rates[best].1.m_star {
            best = i;
        }
    }
    best
}

/// Excludes the degree whose rule is slowest, returning it with the largest
/// remaining rate. Fails when the slowest rule is the capped one.
pub fn choose_excluded_degree(alpha: f64, delta_cap: usize, tol: f64) -> Result<(usize, f64)> {
    let rates = degree_rates(alpha, delta_cap, 2, tol, Exec::default())?;
    let i = argmax_lowest(&rates);
    let delta = rates[i].0;
    if delta == delta_cap {
        return Err(Error::Config(format!("slowest degree rule is the capped rule at alpha={alpha}")));
    }
    let m = rates.iter().filter(|(d, _)| *d != delta).map(|(_, r)| r.m_star).fold(0.0, f64::max);
    Ok((delta, m))
}

/// Optimizes every rule of `algo` at `alpha` and returns the filled config
/// together with the resulting rate.
pub fn optimize_config(algo: Algo, alpha: f64, delta_cap: usize, tol: f64, exec: Exec) -> Result<(VcConfig, RateReport)> {
    let mut cfg = VcConfig { delta_cap, ..Default::default() };
    let rules = if algo == Algo::EnhancedVc3Star {
        let rates = degree_rates(alpha, delta_cap, 2, tol, exec)?;
        let delta = rates[argmax_lowest(&rates)].0;
        if delta == delta_cap {
            return Err(Error::Config(format!("slowest degree rule is the capped rule at alpha={alpha}")));
        }
        cfg.excluded_degree = Some(delta);
        rates.into_iter().filter(|(d, _)| *d != delta).map(|(d, r)| (RuleSlot::Gamma(d), r)).collect()
    } else {
        optimize_slots(&rule_specs(algo, delta_cap, None), alpha, tol, exec)?
    };
    let mut worst: Option<(RuleSlot, f64)> = None;
    for (slot, r) in &rules {
        if !r.m_star.is_finite() {
            return Err(Error::Config(format!("rule {} has no finite rate at alpha={alpha}", slot.name())));
        }
        slot.write(&mut cfg, &r.gamma_star);
        if worst.is_none_or(|(_, m)| r.m_star > m) {
            worst = Some((*slot, r.m_star));
        }
    }
    let (slot, m) = worst.expect("every algorithm has a rule");
    let report = RateReport { algo, alpha, m, base: m.exp(), worst_rule: slot.name(), rules };
    Ok((cfg, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg_with(gamma: f64, delta_cap: usize) -> VcConfig {
        let mut cfg = VcConfig { delta_cap, ..Default::default() };
        for d in 2..=delta_cap {
            cfg.gamma_by_degree.insert(d, gamma);
        }
        cfg
    }

    #[test]
    fn vc3_terms() {
        let rec = build_recurrence(Algo::Vc3, &cfg_with(0.5, 100)).unwrap();
        assert_eq!(rec.terms.len(), 2);
        assert_eq!((rec.terms[0].b(), rec.terms[0].k()), (&[1, 3][..], &[1, 0][..]));
        assert_eq!((rec.terms[1].b(), rec.terms[1].k()), (&[1, 3][..], &[0, 3][..]));
        assert_eq!(rec.terms[0].gamma().weights(), &[0.5, 0.5]);
    }

    #[test]
    fn vc3star_term_count() {
        for cap in [3, 4, 10, 100] {
            let rec = build_recurrence(Algo::Vc3Star, &cfg_with(0.3, cap)).unwrap();
            assert_eq!(rec.terms.len(), 2 * (cap - 2));
        }
    }

    #[test]
    fn enhanced_skips_excluded_degree() {
        let mut cfg = cfg_with(0.3, 100);
        cfg.excluded_degree = Some(5);
        let rec = build_recurrence(Algo::EnhancedVc3Star, &cfg).unwrap();
        assert!(!rec.terms.iter().any(|t| t.b() == [1, 5]));
        assert!(rec.terms.iter().any(|t| t.b() == [1] && t.k() == [1]));
        assert_eq!(rec.terms.len(), 2 * (100 - 2) + 1);
    }

    #[test]
    fn better_vc_has_single_rows() {
        let (cfg, _) = optimize_config(Algo::BetterVc, 1.5, 8, 1e-7, Exec::default()).unwrap();
        let rec = build_recurrence(Algo::BetterVc, &cfg).unwrap();
        assert!(rec.terms.iter().any(|t| t.b() == [1] && t.k() == [1] && t.gamma().weights() == [1.0]));
        assert!(rec.terms.iter().any(|t| t.b() == [2] && t.k() == [2]));
        assert!(rec.terms.iter().any(|t| t.b() == [3, 4, 8] && t.k() == [2, 4, 5]));
    }

    #[test]
    fn incomplete_config_is_an_error() {
        assert!(build_recurrence(Algo::Vc3Star, &VcConfig::default()).is_err());
        assert!(build_recurrence(Algo::EnhancedVc3Star, &cfg_with(0.3, 10)).is_err());
    }

    #[test]
    fn vc3_rate() {
        let (cfg, rep) = optimize_config(Algo::Vc3, 1.5, 100, 1e-7, Exec::default()).unwrap();
        assert!((rep.base - 1.043642).abs() < 5e-4, "{}", rep.base);
        assert!(cfg.gamma(3).is_ok());
    }

    #[test]
    fn excluded_degree_at_one_and_a_half() {
        let (d, m) = choose_excluded_degree(1.5, 100, 1e-7).unwrap();
        assert_eq!(d, 5);
        assert!((m.exp() - 1.01657).abs() < 2e-4, "{}", m.exp());
    }
}
