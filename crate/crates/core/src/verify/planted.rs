use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::hs::Hypergraph3;
use crate::rng::rng_from_seed;
use crate::vc::Graph;
use crate::{Error, Result};

/// An instance with a known solution of size `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedInstance<S> {
    pub structure: S,
    /// Sorted.
    pub planted_cover: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

fn check_params(n: usize, k: usize, density: f64) -> Result<()> {
    if k > 0 && k >= n {
        return Err(Error::Config(format!("planted size k={k} must be below n={n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Config(format!("edge density {density} outside [0, 1]")));
    }
    Ok(())
}

fn pick_cover(rng: &mut crate::rng::Rng, n: usize, k: usize) -> (Vec<usize>, Vec<bool>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut cover = perm[..k].to_vec();
    cover.sort_unstable();
    let mut inside = vec![false; n];
    for &c in &cover {
        inside[c] = true;
    }
    (cover, inside)
}

/// Graph whose every edge touches one of `k` planted vertices. Each pair with
/// a planted endpoint is an edge with probability `density`; afterwards
/// degrees are raised to 3 where the planted structure allows it.
pub fn make_planted_vc(n: usize, k: usize, density: f64, seed: u64) -> Result<PlantedInstance<Graph>> {
    check_params(n, k, density)?;
    let mut rng = rng_from_seed(seed);
    let (cover, inside) = pick_cover(&mut rng, n, k);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if (inside[u] || inside[v]) && rng.gen_bool(density) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    for v in 0..n {
        while adj[v].len() < 3 {
            let cand: Vec<usize> =
                (0..n).filter(|&u| u != v && (inside[u] || inside[v]) && !adj[v].contains(&u)).collect();
            let Some(&u) = cand.choose(&mut rng) else { break };
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| adj[u].range(u + 1..).map(move |&v| (u, v)).collect::<Vec<_>>()).collect();
    let structure = Graph::from_edges(n, &edges)?;
    debug_assert!(structure.is_cover(&cover));
    Ok(PlantedInstance { structure, planted_cover: cover, k, seed })
}

/// 3-uniform-leaning hypergraph whose every edge meets one of `k` planted
/// vertices. Every triple and every pair through a planted vertex is an edge
/// with probability `density`; each planted vertex gets at least one edge.
pub fn make_planted_hs(n: usize, k: usize, density: f64, seed: u64) -> Result<PlantedInstance<Hypergraph3>> {
    check_params(n, k, density)?;
    let mut rng = rng_from_seed(seed);
    let (cover, _) = pick_cover(&mut rng, n, k);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for &c in &cover {
        let others: Vec<usize> = (0..n).filter(|&u| u != c).collect();
        let before = edges.len();
        for (i, &u) in others.iter().enumerate() {
            if rng.gen_bool(density) {
                edges.push(vec![c, u]);
            }
            for &w in &others[i + 1..] {
                if rng.gen_bool(density) {
                    edges.push(vec![c, u, w]);
                }
            }
        }
        if edges.len() == before {
            let pair: Vec<usize> = others.choose_multiple(&mut rng, 2).copied().collect();
            edges.push([vec![c], pair].concat());
        }
    }
    let structure = Hypergraph3::new(n, edges)?;
    debug_assert!(structure.is_hitting_set(&cover));
    Ok(PlantedInstance { structure, planted_cover: cover, k, seed })
}
