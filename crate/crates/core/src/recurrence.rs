//! Composite recurrences and their exact evaluation.
//!
//! A recurrence is a list of terms `(b, k, gamma)`. Its value is
//!
//! ```text
//! p(b, k) = min_j  sum_i gamma_j[i] * p(b - b_j[i], k - k_j[i])
//! ```
//!
//! where `j` ranges over the terms whose largest coverage entry is at most `k`,
//! `p(b, k) = 0` for `b < 0` and `p(b, k) = 1` for `b >= 0, k <= 0`.

use std::fmt::Write as _;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::{Error, Exec, Result};

/// Default DP memory budget, in cells.
pub const DEFAULT_CELL_CAP: u128 = 200_000_000;
/// Environment variable overriding [`DEFAULT_CELL_CAP`].
pub const CELL_CAP_ENV: &str = "BRANCHRATE_CELL_CAP";
/// Largest `b` accepted by [`naive_eval`].
pub const NAIVE_B_CAP: i64 = 12;

/// A probability vector, normalized on construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution(Vec<f64>);

impl Distribution {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Distribution("empty".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Distribution(format!("bad weights {weights:?}")));
        }
        let s: f64 = weights.iter().sum();
        if s <= 0.0 {
            return Err(Error::Distribution("zero total mass".into()));
        }
        // already-normalized input is kept bit-for-bit so serialization round-trips
        if (s - 1.0).abs() <= 1e-12 {
            return Ok(Distribution(weights));
        }
        Ok(Distribution(weights.into_iter().map(|w| w / s).collect()))
    }

    pub fn uniform(r: usize) -> Self {
        assert!(r > 0);
        Distribution(vec![1.0 / r as f64; r])
    }

    /// Two-point distribution `(g, 1 - g)`.
    pub fn binary(g: f64) -> Result<Self> {
        Self::new(vec![g, 1.0 - g])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for Distribution {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Distribution::new(v)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Vec<f64> {
        d.0
    }
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    b: Vec<usize>,
    k: Vec<usize>,
    gamma: Distribution,
}

/// One branching state: option costs `b`, option coverages `k` and option
/// probabilities `gamma`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTerm", into = "RawTerm")]
pub struct Term {
    b: Vec<usize>,
    k: Vec<usize>,
    gamma: Distribution,
}

impl Term {
    pub fn new(b: Vec<usize>, k: Vec<usize>, gamma: Distribution) -> Result<Self> {
        if b.is_empty() || b.len() != k.len() || b.len() != gamma.len() {
            return Err(Error::Term(format!(
                "lengths b={} k={} gamma={}",
                b.len(),
                k.len(),
                gamma.len()
            )));
        }
        if b.contains(&0) {
            return Err(Error::Term(format!("zero cost in {b:?}")));
        }
        Ok(Term { b, k, gamma })
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }
    pub fn k(&self) -> &[usize] {
        &self.k
    }
    pub fn gamma(&self) -> &Distribution {
        &self.gamma
    }
    pub fn len(&self) -> usize {
        self.b.len()
    }
    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
    pub fn max_k(&self) -> usize {
        self.k.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<RawTerm> for Term {
    type Error = Error;
    fn try_from(r: RawTerm) -> Result<Self> {
        Term::new(r.b, r.k, r.gamma)
    }
}

impl From<Term> for RawTerm {
    fn from(t: Term) -> RawTerm {
        RawTerm { b: t.b, k: t.k, gamma: t.gamma }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeRecurrence {
    pub terms: Vec<Term>,
}

impl CompositeRecurrence {
    pub fn new(terms: Vec<Term>) -> Self {
        CompositeRecurrence { terms }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("recurrence serializes")
    }

    fn ensure_valid(&self) -> Result<()> {
        let rep = validate_recurrence(self);
        if rep.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidRecurrence(rep.issues.join("; ")))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub non_empty: bool,
    /// Some term has every coverage entry at most 1.
    pub has_light_term: bool,
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.non_empty && self.has_light_term
    }
}

pub fn validate_recurrence(rec: &CompositeRecurrence) -> ValidationReport {
    let non_empty = !rec.terms.is_empty();
    let has_light_term = rec.terms.iter().any(|t| t.max_k() <= 1);
    let mut issues = Vec::new();
    if !non_empty {
        issues.push("no terms".to_string());
    }
    if !has_light_term {
        issues.push("no term with all coverages <= 1".to_string());
    }
    ValidationReport { non_empty, has_light_term, issues }
}

/// `ln p(b, k)` for `0 <= b <= b_max`, `0 <= k <= k_max`, row-major in `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DpTable {
    b_max: usize,
    k_max: usize,
    log_p: Vec<f64>,
}

impl DpTable {
    pub fn b_max(&self) -> usize {
        self.b_max
    }
    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Boundary-aware lookup: `-inf` for `b < 0`, `k` clamped at 0.
    pub fn log_p(&self, b: i64, k: i64) -> f64 {
        if b < 0 {
            return f64::NEG_INFINITY;
        }
        let (b, k) = (b as usize, k.max(0) as usize);
        assert!(b <= self.b_max && k <= self.k_max, "({b},{k}) outside table");
        self.log_p[b * (self.k_max + 1) + k]
    }

    pub fn prob(&self, b: i64, k: i64) -> f64 {
        self.log_p(b, k).exp()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("b,k,log_p\n");
        for b in 0..=self.b_max {
            for k in 0..=self.k_max {
                let _ = writeln!(s, "{b},{k},{}", self.log_p[b * (self.k_max + 1) + k]);
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DpOptions {
    pub cell_cap: u128,
    pub exec: Exec,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { cell_cap: cell_cap_from_env(), exec: Exec::default() }
    }
}

pub fn cell_cap_from_env() -> u128 {
    std::env::var(CELL_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v >= 1.0)
        .map(|v| v as u128)
        .unwrap_or(DEFAULT_CELL_CAP)
}

pub fn dp_eval(rec: &CompositeRecurrence, b_max: usize, k_max: usize) -> Result<DpTable> {
    dp_eval_with(rec, b_max, k_max, DpOptions::default())
}

struct PreparedTerm {
    max_k: usize,
    opts: Vec<(usize, usize, f64)>,
}

pub fn dp_eval_with(
    rec: &CompositeRecurrence,
    b_max: usize,
    k_max: usize,
    opts: DpOptions,
) -> Result<DpTable> {
    rec.ensure_valid()?;
    let cells = (b_max as u128 + 1) * (k_max as u128 + 1);
    if cells > opts.cell_cap {
        return Err(Error::CellCap { cells, cap: opts.cell_cap });
    }
    let terms: Vec<PreparedTerm> = rec
        .terms
        .iter()
        .map(|t| PreparedTerm {
            max_k: t.max_k(),
            opts: (0..t.len())
                .filter(|&i| t.gamma[i] > 0.0)
                .map(|i| (t.b[i], t.k[i], t.gamma[i].ln()))
                .collect(),
        })
        .collect();
    let w = k_max + 1;
    let mut table = vec![0.0f64; cells as usize];
    // rows are independent across k once the earlier rows are known
    let exec = if w >= 512 { opts.exec } else { Exec::Sequential };
    for b in 0..=b_max {
        let (prev, rest) = table.split_at_mut(b * w);
        let prev: &[f64] = prev;
        exec.fill(&mut rest[..w], |k| {
            if k == 0 {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for t in terms.iter().filter(|t| t.max_k <= k) {
                best = best.min(term_value(prev, w, b, k, &t.opts));
            }
            best.min(0.0)
        });
    }
    Ok(DpTable { b_max, k_max, log_p: table })
}

fn term_value(prev: &[f64], w: usize, b: usize, k: usize, opts: &[(usize, usize, f64)]) -> f64 {
    let mut m = f64::NEG_INFINITY;
    let mut vals = [f64::NEG_INFINITY; 16];
    let mut spill = Vec::new();
    for (idx, &(bi, ki, lg)) in opts.iter().enumerate() {
        let v = if bi > b { f64::NEG_INFINITY } else { lg + prev[(b - bi) * w + k.saturating_sub(ki)] };
        m = m.max(v);
        if idx < vals.len() {
            vals[idx] = v;
        } else {
            spill.push(v);
        }
    }
    if m == f64::NEG_INFINITY {
        return m;
    }
    let n = opts.len().min(vals.len());
    let s: f64 = vals[..n].iter().chain(spill.iter()).map(|v| (v - m).exp()).sum();
    m + s.ln()
}

/// Direct memo-free evaluation in linear arithmetic. Exponential in `b`.
pub fn naive_eval(rec: &CompositeRecurrence, b: i64, k: i64) -> Result<f64> {
    rec.ensure_valid()?;
    if b > NAIVE_B_CAP {
        return Err(Error::SizeCap(format!("naive_eval needs b <= {NAIVE_B_CAP}, got {b}")));
    }
    Ok(naive(&rec.terms, b, k))
}

fn naive(terms: &[Term], b: i64, k: i64) -> f64 {
    if b < 0 {
        return 0.0;
    }
    if k <= 0 {
        return 1.0;
    }
    let mut best = f64::INFINITY;
    for t in terms.iter().filter(|t| t.max_k() as i64 <= k) {
        let mut s = 0.0;
        for i in 0..t.len() {
            if t.gamma[i] > 0.0 {
                s += t.gamma[i] * naive(terms, b - t.b[i] as i64, k - t.k[i] as i64);
            }
        }
        best = best.min(s);
    }
    best
}
