use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::branching::{alpha_branching_number, BranchingNumberResult};
use super::generic::optimize_rule_generic;
use super::simple::optimize_simple_rule;
use crate::recurrence::{Distribution, Term};
use crate::{Error, Exec, Result};

/// A branching rule: one cost vector, several coverage vectors (the states
/// the rule may face), and one distribution shared by all states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub name: String,
    pub b: Vec<usize>,
    pub states: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Distribution>,
}

impl RuleSpec {
    pub fn new(name: impl Into<String>, b: Vec<usize>, states: Vec<Vec<usize>>) -> Self {
        RuleSpec { name: name.into(), b, states, gamma: None }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.b.len();
        if r == 0 || self.b.contains(&0) {
            return Err(Error::InvalidRule(format!("{}: bad costs {:?}", self.name, self.b)));
        }
        if self.states.is_empty() {
            return Err(Error::InvalidRule(format!("{}: no states", self.name)));
        }
        for s in &self.states {
            if s.len() != r {
                return Err(Error::InvalidRule(format!("{}: state {s:?} has wrong length", self.name)));
            }
            if s.iter().all(|&x| x == 0) {
                return Err(Error::InvalidRule(format!("{}: state {s:?} covers nothing", self.name)));
            }
        }
        if let Some(g) = &self.gamma {
            if g.len() != r {
                return Err(Error::LengthMismatch(g.len(), r));
            }
        }
        Ok(())
    }

    /// `(b1, b2, s1, s2)` when the rule has the two-option two-state shape
    /// with states `(b1, s2)` and `(s1, b2)`.
    pub fn as_simple(&self) -> Option<(usize, usize, usize, usize)> {
        if self.b.len() != 2 || self.states.len() != 2 {
            return None;
        }
        let (b1, b2) = (self.b[0], self.b[1]);
        let (s, t) = (&self.states[0], &self.states[1]);
        (s[0] == b1 && t[1] == b2 && t[0] < b1 && s[1] < b2).then_some((b1, b2, t[0], s[1]))
    }

    /// One recurrence term per state, all sharing `gamma`.
    pub fn terms(&self, gamma: &Distribution) -> Result<Vec<Term>> {
        self.states.iter().map(|s| Term::new(self.b.clone(), s.clone(), gamma.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizedRule {
    pub gamma_star: Distribution,
    /// Largest per-state branching number at `gamma_star`.
    pub m_star: f64,
    /// Certified lower end of the bracket on the optimum.
    pub lower_bound: f64,
    pub per_state: Vec<BranchingNumberResult>,
    /// Some state is unconstrained for every distribution.
    pub degenerate: bool,
}

impl OptimizedRule {
    pub fn base(&self) -> f64 {
        self.m_star.exp()
    }
}

pub(crate) fn evaluate_at(rule: &RuleSpec, gamma: &Distribution, alpha: f64, tol: f64) -> Result<OptimizedRule> {
    let per_state = rule
        .states
        .iter()
        .map(|s| alpha_branching_number(&rule.b, s, gamma, alpha, tol))
        .collect::<Result<Vec<_>>>()?;
    let m_star = per_state.iter().map(|r| r.m).fold(0.0, f64::max);
    Ok(OptimizedRule { gamma_star: gamma.clone(), m_star, lower_bound: m_star, per_state, degenerate: false })
}

/// Fixed distributions are evaluated, free ones optimized; simple shapes use
/// the closed-form search, everything else the generic solver.
pub fn optimize_rule(rule: &RuleSpec, alpha: f64, tol: f64) -> Result<OptimizedRule> {
    rule.validate()?;
    if let Some(g) = &rule.gamma {
        return evaluate_at(rule, g, alpha, tol);
    }
    match rule.as_simple() {
        Some((b1, b2, s1, s2)) if alpha > 1.0 => optimize_simple_rule(b1, b2, s1, s2, alpha, tol),
        _ => optimize_rule_generic(rule, alpha, tol),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleSet {
    pub rules: Vec<RuleSpec>,
}

impl RuleSet {
    pub fn from_json(s: &str) -> Result<Self> {
        let set: RuleSet = serde_json::from_str(s)?;
        for r in &set.rules {
            r.validate()?;
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule set serializes")
    }
}

pub fn optimize_rule_set(set: &RuleSet, alpha: f64, tol: f64, exec: Exec) -> Vec<Result<OptimizedRule>> {
    exec.map_slice(&set.rules, |r| optimize_rule(r, alpha, tol))
}

/// CSV rows `rule,alpha,m,base,gamma_i...,q_state_j_i...`, padded to the widest rule.
pub fn rule_set_csv(set: &RuleSet, alpha: f64, results: &[Result<OptimizedRule>]) -> String {
    let r = set.rules.iter().map(|x| x.b.len()).max().unwrap_or(0);
    let h = set.rules.iter().map(|x| x.states.len()).max().unwrap_or(0);
    let mut s = String::from("rule,alpha,m,base");
    for i in 1..=r {
        let _ = write!(s, ",gamma_{i}");
    }
    for j in 1..=h {
        for i in 1..=r {
            let _ = write!(s, ",q_state_{j}_{i}");
        }
    }
    s.push('\n');
    for (rule, res) in set.rules.iter().zip(results) {
        let _ = write!(s, "{},{alpha}", rule.name);
        match res {
            Ok(o) => {
                let _ = write!(s, ",{},{}", o.m_star, o.base());
                push_padded(&mut s, Some(o.gamma_star.weights()), r);
                for j in 0..h {
                    let q = o.per_state.get(j).and_then(|p| p.q_star.as_ref()).map(|d| d.weights());
                    push_padded(&mut s, q, r);
                }
            }
            Err(e) => {
                let _ = write!(s, ",error: {},", e.to_string().replace(',', ";"));
                push_padded(&mut s, None, r * (h + 1));
            }
        }
        s.push('\n');
    }
    s
}

fn push_padded(s: &mut String, v: Option<&[f64]>, width: usize) {
    for i in 0..width {
        match v.and_then(|v| v.get(i)) {
            Some(x) => {
                let _ = write!(s, ",{x}");
            }
            None => s.push(','),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_simple_shape() {
        let r = RuleSpec::new("vc3", vec![1, 3], vec![vec![1, 0], vec![0, 3]]);
        assert_eq!(r.as_simple(), Some((1, 3, 0, 0)));
        let r = RuleSpec::new("x", vec![1, 3], vec![vec![0, 3], vec![1, 0]]);
        assert_eq!(r.as_simple(), None);
    }

    #[test]
    fn validation() {
        assert!(RuleSpec::new("z", vec![1, 2], vec![vec![0, 0]]).validate().is_err());
        assert!(RuleSpec::new("z", vec![1, 2], vec![vec![1]]).validate().is_err());
        assert!(RuleSpec::new("z", vec![1, 2], vec![]).validate().is_err());
        assert!(RuleSpec::new("z", vec![1, 2], vec![vec![1, 0]]).validate().is_ok());
    }

    #[test]
    fn rule_set_json_and_csv() {
        let js = r#"{"rules":[{"name":"vc3","b":[1,3],"states":[[1,0],[0,3]]},
                    {"name":"fixed","b":[1,3],"states":[[1,0]],"gamma":[0.9,0.1]}]}"#;
        let set = RuleSet::from_json(js).unwrap();
        let res = optimize_rule_set(&set, 1.5, 1e-7, Exec::Sequential);
        let csv = rule_set_csv(&set, 1.5, &res);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "rule,alpha,m,base,gamma_1,gamma_2,q_state_1_1,q_state_1_2,q_state_2_1,q_state_2_2");
        assert!(lines[1].starts_with("vc3,1.5,0.0427"));
        assert!(lines[2].starts_with("fixed,1.5,0,1,0.9,0.1,0.9,0.1,,"));
        assert_eq!(csv, rule_set_csv(&set, 1.5, &optimize_rule_set(&set, 1.5, 1e-7, Exec::Parallel)));
    }
}
