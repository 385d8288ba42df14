#![allow(dead_code)]

use branchrate::hs::SmallHypergraph;
use branchrate::{CompositeRecurrence, Distribution, Term};
use proptest::prelude::*;

/// One option: (cost, coverage, raw weight).
pub type RawOption = (usize, usize, u32);

/// Random valid recurrence with at most `n_terms` terms of at most `r` options.
/// The first term is forced light so the recurrence is valid.
pub fn recurrence(n_terms: usize, r: usize, max_b: usize, max_k: usize) -> impl Strategy<Value = CompositeRecurrence> {
    let option = (1..=max_b, 0..=max_k, 0u32..=10);
    let term = prop::collection::vec(option, 1..=r);
    prop::collection::vec(term, 1..=n_terms).prop_map(build)
}

pub fn build(terms: Vec<Vec<RawOption>>) -> CompositeRecurrence {
    let terms = terms
        .into_iter()
        .enumerate()
        .map(|(j, opts)| {
            let b = opts.iter().map(|o| o.0).collect();
            let k = opts.iter().map(|o| if j == 0 { o.1.min(1) } else { o.1 }).collect();
            // never all-zero weights
            let w = opts.iter().map(|o| f64::from(o.2) + 0.05).collect();
            Term::new(b, k, Distribution::new(w).unwrap()).unwrap()
        })
        .collect();
    CompositeRecurrence::new(terms)
}

/// Number of calls the memo-free evaluator makes at `(b, k)`.
pub fn naive_calls(rec: &CompositeRecurrence, b: i64, k: i64) -> f64 {
    let (bw, kw) = ((b + 1).max(0) as usize, (k + 1).max(0) as usize);
    let mut memo = vec![vec![0.0f64; kw]; bw];
    for bb in 0..bw {
        for kk in 0..kw {
            let mut c = 1.0;
            if kk > 0 {
                for t in rec.terms.iter().filter(|t| t.max_k() <= kk) {
                    for i in 0..t.len() {
                        if t.gamma()[i] > 0.0 && t.b()[i] <= bb {
                            c += memo[bb - t.b()[i]][kk.saturating_sub(t.k()[i])];
                        } else if t.gamma()[i] > 0.0 {
                            c += 1.0;
                        }
                    }
                }
            }
            memo[bb][kk] = c;
        }
    }
    if b < 0 || k < 0 {
        1.0
    } else {
        memo[b as usize][k as usize]
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relabeled edge list over all vertex permutations.
pub fn brute_key(g: &SmallHypergraph) -> (usize, Vec<u32>) {
    let best = permutations(g.n()).iter().map(|p| g.relabel(p).edges().to_vec()).min().unwrap();
    (g.n(), best)
}

/// Every labeled hypergraph with at most `delta` edges of size 1 or 2 and no
/// isolated vertex.
pub fn labeled(delta: usize) -> Vec<SmallHypergraph> {
    let mut out = Vec::new();
    for n in 1..=2 * delta {
        let mut cand: Vec<u32> = (0..n).map(|a| 1 << a).collect();
        for a in 0..n {
            for b in a + 1..n {
                cand.push(1 << a | 1 << b);
            }
        }
        let mut pick = Vec::new();
        subsets(&cand, 0, delta, &mut pick, &mut |edges| {
            if let Ok(g) = SmallHypergraph::new(n, edges.to_vec()) {
                out.push(g);
            }
        });
    }
    out
}

fn subsets(cand: &[u32], from: usize, left: usize, pick: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if !pick.is_empty() {
        f(pick);
    }
    if left == 0 {
        return;
    }
    for i in from..cand.len() {
        pick.push(cand[i]);
        subsets(cand, i + 1, left - 1, pick, f);
        pick.pop();
    }
}
