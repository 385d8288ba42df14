use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::catalog::{Catalog, CatalogEntry};
use super::hypergraph::Hypergraph3;
use super::small::{bits, canonical_labeling, induced_graph, map_mask};
use crate::asymptotics::{optimize_rule, RuleSpec};
use crate::recurrence::{dp_eval_with, CompositeRecurrence, Distribution, DpOptions, Term};
use crate::repeat::{best_trial, budget, trial_count, ApproxOptions};
use crate::rng::{rng_from_seed, trial_seed};
use crate::{Error, Exec, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HsResult {
    /// Sorted.
    pub hitting_set: Vec<usize>,
    pub recursion_steps: usize,
    pub seed_used: u64,
}

fn sample(rng: &mut crate::rng::Rng, w: &[f64]) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in w.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // rounding left a sliver above the last cumulative sum
    w.iter().rposition(|&p| p > 0.0).unwrap_or(w.len() - 1)
}

/// One run of the catalog-driven branching algorithm.
pub fn three_hs_run(h: &Hypergraph3, cat: &Catalog, seed: u64) -> Result<HsResult> {
    let mut rng = rng_from_seed(seed);
    let edges = h.edges();
    let mut alive = vec![true; edges.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut steps = 0;
    loop {
        steps += 1;
        let live: Vec<usize> = (0..edges.len()).filter(|&i| alive[i]).collect();
        if live.is_empty() {
            break;
        }
        let pick: Vec<usize> = if let Some(&i) = live.iter().find(|&&i| edges[i].len() == 1) {
            vec![edges[i][0]]
        } else {
            let deg = |v: usize| incident[v].iter().filter(|&&i| alive[i]).count();
            let v = (0..h.n()).max_by_key(|&v| (deg(v), std::cmp::Reverse(v))).expect("has vertices");
            let at_v: Vec<usize> = incident[v].iter().copied().filter(|&i| alive[i]).take(cat.delta).collect();
            let (local, map) = induced_graph(h, v, &at_v)?;
            let (key, labeling) = canonical_labeling(&local);
            let idx = cat.find(&key).ok_or(Error::CatalogMiss(local.edges().len()))?;
            let entry = &cat.entries[idx];
            let gamma = entry.gamma.as_ref().ok_or_else(|| Error::Config(format!("catalog entry {idx} has no gamma")))?;
            let i = sample(&mut rng, gamma);
            if i == entry.m() {
                vec![v]
            } else {
                // canonical index -> local vertex -> original vertex
                let mut inverse = vec![0; labeling.len()];
                for (u, &c) in labeling.iter().enumerate() {
                    inverse[c] = u;
                }
                let local_set = map_mask(entry.hitting_sets[i], &inverse);
                debug_assert!(local.hits(local_set));
                bits(local_set).map(|u| map[u]).collect()
            }
        };
        for &u in &pick {
            for &i in &incident[u] {
                alive[i] = false;
            }
        }
        chosen.extend(pick);
    }
    chosen.sort_unstable();
    chosen.dedup();
    assert!(h.is_hitting_set(&chosen), "solver returned a set that misses an edge");
    Ok(HsResult { hitting_set: chosen, recursion_steps: steps, seed_used: seed })
}

/// The branching rule of one catalog entry: options are the minimal hitting
/// sets then `{v}`; one state per hitting set plus the state where `v`
/// belongs to the optimum.
pub fn entry_rule(entry: &CatalogEntry, delta: usize) -> RuleSpec {
    let hs = &entry.hitting_sets;
    let mut b: Vec<usize> = hs.iter().map(|c| c.count_ones() as usize).collect();
    b.push(1);
    let mut states: Vec<Vec<usize>> = hs
        .iter()
        .map(|cj| {
            let mut s: Vec<usize> = hs.iter().map(|ci| (ci & cj).count_ones() as usize).collect();
            s.push(0);
            s
        })
        .collect();
    let below = usize::from(entry.graph.edges().len() < delta);
    let mut v_state = vec![below; hs.len()];
    v_state.push(1);
    states.push(v_state);
    RuleSpec::new(format!("entry{:?}", entry.graph.edge_lists()), b, states)
}

pub fn build_recurrence_3hs(cat: &Catalog) -> Result<CompositeRecurrence> {
    let mut terms = Vec::new();
    for (i, e) in cat.entries.iter().enumerate() {
        let gamma = e.gamma.as_ref().ok_or_else(|| Error::Config(format!("catalog entry {i} has no gamma")))?;
        terms.extend(entry_rule(e, cat.delta).terms(gamma)?);
    }
    terms.push(Term::new(vec![1], vec![1], Distribution::uniform(1))?);
    Ok(CompositeRecurrence::new(terms))
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogRate {
    pub m: f64,
    pub base: f64,
    pub worst_entry: usize,
    pub per_entry: Vec<f64>,
}

/// Optimizes each entry's distribution independently; the rate is the
/// largest per-entry value.
pub fn optimize_catalog_gammas(cat: &Catalog, alpha: f64, tol: f64, exec: Exec) -> Result<(Catalog, CatalogRate)> {
    let results = exec.map_slice(&cat.entries, |e| optimize_rule(&entry_rule(e, cat.delta), alpha, tol));
    let mut out = cat.clone();
    let mut per_entry = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        if !r.m_star.is_finite() {
            return Err(Error::InfiniteRate(i));
        }
        per_entry.push(r.m_star);
        out.entries[i].gamma = Some(r.gamma_star);
    }
    let mut worst = 0;
    for (i, &m) in per_entry.iter().enumerate() {
        if m > per_entry[worst] {
            worst = i;
        }
    }
    let m = per_entry.get(worst).copied().unwrap_or(0.0);
    Ok((out, CatalogRate { m, base: m.exp(), worst_entry: worst, per_entry }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HsApproxResult {
    pub best: HsResult,
    pub budget: usize,
    pub success: bool,
    pub trials: u64,
    pub r: f64,
    pub best_trial: u64,
}

/// Repetition wrapper for [`three_hs_run`].
pub fn alpha_hs(
    h: &Hypergraph3,
    k: usize,
    alpha: f64,
    cat: &Catalog,
    rec: &CompositeRecurrence,
    seed: u64,
    opts: ApproxOptions,
) -> Result<HsApproxResult> {
    let b = budget(alpha, k);
    let table = dp_eval_with(rec, b, k, DpOptions { exec: opts.exec, ..Default::default() })?;
    let r = table.prob(b as i64, k as i64);
    let trials = trial_count(r, opts.repeat_multiplier, opts.max_trials)?;
    let size = |t: u64| three_hs_run(h, cat, trial_seed(seed, t)).map_or(usize::MAX, |c| c.hitting_set.len());
    let best_trial = best_trial(trials, opts.exec, size);
    let best = three_hs_run(h, cat, trial_seed(seed, best_trial))?;
    Ok(HsApproxResult { success: best.hitting_set.len() <= b, budget: b, best, trials, r, best_trial })
}
