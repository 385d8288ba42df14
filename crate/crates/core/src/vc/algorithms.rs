//! The four randomized branching algorithms for vertex cover.
//!
//! All of them share one driver: a rule inspects the current working graph
//! and returns a [`Step`]; the driver applies it and loops. Every
//! "arbitrary" choice resolves to the lowest vertex index.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::config::{Algo, VcConfig};
use super::graph::Graph;
use crate::rng::{rng_from_seed, Rng};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    /// Sorted, duplicate-free.
    pub cover: Vec<usize>,
    pub recursion_steps: usize,
    pub seed_used: u64,
}

/// Mutable copy of a graph; a vertex with an empty list is gone.
#[derive(Clone, Debug)]
pub(crate) struct Work {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl Work {
    pub(crate) fn new(g: &Graph) -> Self {
        Work { adj: g.adjacency().to_vec(), edges: g.num_edges() }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn nbrs(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|&v| !self.adj[v].is_empty())
    }

    fn remove(&mut self, v: usize) {
        let list = std::mem::take(&mut self.adj[v]);
        self.edges -= list.len();
        for u in list {
            if let Ok(i) = self.adj[u].binary_search(&v) {
                self.adj[u].remove(i);
            }
        }
    }

    fn remove_all(&mut self, set: &[usize]) {
        for &v in set {
            self.remove(v);
        }
    }

    fn component_of(&self, s: usize) -> Vec<usize> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        let mut out = vec![];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            out.push(v);
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Moves a whole component into a fresh working graph.
    fn split_off(&mut self, comp: &[usize]) -> Work {
        let mut adj = vec![Vec::new(); self.adj.len()];
        let mut degsum = 0;
        for &v in comp {
            adj[v] = std::mem::take(&mut self.adj[v]);
            degsum += adj[v].len();
        }
        self.edges -= degsum / 2;
        Work { adj, edges: degsum / 2 }
    }

    fn union_nbrs(&self, vs: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vs.iter().flat_map(|&v| self.adj[v].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn lowest_max_degree(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for v in self.live() {
            let d = self.degree(v);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((v, d));
            }
        }
        best
    }

    fn is_regular(&self) -> bool {
        let mut degs = self.live().map(|v| self.degree(v));
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    fn connected_split(&self) -> Option<Vec<usize>> {
        let first = self.live().next()?;
        let comp = self.component_of(first);
        (comp.len() < self.live().count()).then_some(comp)
    }
}

pub(crate) enum Step {
    Select(Vec<usize>),
    /// Solve this component on its own, then continue with the rest.
    Split(Vec<usize>),
    /// Try both endpoints of an edge and keep the smaller result.
    Both(usize, usize),
    /// The rest of the cover is known; stop.
    Finish(Vec<usize>),
}

type RuleFn = fn(&Work, &VcConfig, &mut Rng) -> Result<Step>;

struct Driver<'a> {
    rule: RuleFn,
    cfg: &'a VcConfig,
    rng: Rng,
    steps: usize,
}

impl Driver<'_> {
    fn run(&mut self, mut w: Work) -> Result<Vec<usize>> {
        let mut cover = Vec::new();
        loop {
            self.steps += 1;
            if w.edges == 0 {
                return Ok(cover);
            }
            match (self.rule)(&w, self.cfg, &mut self.rng)? {
                Step::Select(s) => {
                    w.remove_all(&s);
                    cover.extend(s);
                }
                Step::Split(comp) => {
                    let sub = w.split_off(&comp);
                    cover.extend(self.run(sub)?);
                }
                Step::Both(v1, v2) => {
                    let mut a = w.clone();
                    a.remove(v1);
                    let mut s1 = self.run(a)?;
                    s1.push(v1);
                    w.remove(v2);
                    let mut s2 = self.run(w)?;
                    s2.push(v2);
                    cover.extend(if s2.len() < s1.len() { s2 } else { s1 });
                    return Ok(cover);
                }
                Step::Finish(s) => {
                    cover.extend(s);
                    return Ok(cover);
                }
            }
        }
    }
}

fn drive(g: &Graph, cfg: &VcConfig, seed: u64, rule: RuleFn) -> Result<CoverResult> {
    let mut d = Driver { rule, cfg, rng: rng_from_seed(seed), steps: 0 };
    let mut cover = d.run(Work::new(g))?;
    cover.sort_unstable();
    cover.dedup();
    assert!(g.is_cover(&cover), "solver returned a set that misses an edge");
    Ok(CoverResult { cover, recursion_steps: d.steps, seed_used: seed })
}

fn deg2_cover(w: &Work) -> Vec<usize> {
    let n = w.adj.len();
    let mut seen = vec![false; n];
    let mut cover = Vec::new();
    let walk = |start: usize, seen: &mut Vec<bool>| -> Vec<usize> {
        let mut seq = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(&next) = w.nbrs(cur).iter().find(|&&u| !seen[u]) {
            seen[next] = true;
            seq.push(next);
            cur = next;
        }
        seq
    };
    for v in w.live().filter(|&v| w.degree(v) == 1) {
        if !seen[v] {
            let seq = walk(v, &mut seen);
            cover.extend(seq.iter().skip(1).step_by(2));
        }
    }
    for v in w.live() {
        if !seen[v] {
            let seq = walk(v, &mut seen);
            cover.extend(seq.iter().step_by(2));
        }
    }
    cover
}

/// Minimum cover of a graph whose components are paths and cycles.
pub fn max_deg2_exact(g: &Graph) -> Result<Vec<usize>> {
    if g.max_degree() > 2 {
        return Err(Error::Graph(format!("max degree {} > 2", g.max_degree())));
    }
    let mut c = deg2_cover(&Work::new(g));
    c.sort_unstable();
    Ok(c)
}

fn take_with(rng: &mut Rng, p: f64) -> bool {
    rng.gen::<f64>() < p
}

fn branch_set(w: &Work, v: usize, cap: usize) -> Vec<usize> {
    w.nbrs(v).iter().copied().take(cap).collect()
}

fn vc3_rule(w: &Work, cfg: &VcConfig, rng: &mut Rng) -> Result<Step> {
    let (v, d) = w.lowest_max_degree().expect("has edges");
    if d < 3 {
        return Ok(Step::Finish(deg2_cover(w)));
    }
    let gamma = cfg.gamma(3)?;
    Ok(Step::Select(if take_with(rng, gamma) { vec![v] } else { branch_set(w, v, 3) }))
}

fn vc3star_rule(w: &Work, cfg: &VcConfig, rng: &mut Rng) -> Result<Step> {
    let (v, d) = w.lowest_max_degree().expect("has edges");
    if d < 3 {
        return Ok(Step::Finish(deg2_cover(w)));
    }
    let gamma = cfg.gamma(d)?;
    Ok(Step::Select(if take_with(rng, gamma) { vec![v] } else { branch_set(w, v, cfg.delta_cap) }))
}

fn split_or_pendant(w: &Work) -> Option<Step> {
    if let Some(comp) = w.connected_split() {
        return Some(Step::Split(comp));
    }
    w.live().find(|&v| w.degree(v) == 1).map(|v| Step::Select(vec![w.nbrs(v)[0]]))
}

fn both_endpoints(w: &Work) -> Step {
    let v1 = w.live().next().expect("has edges");
    Step::Both(v1, w.nbrs(v1)[0])
}

fn enhanced_rule(w: &Work, cfg: &VcConfig, rng: &mut Rng) -> Result<Step> {
    let delta = cfg.excluded_degree()?;
    if let Some(s) = split_or_pendant(w) {
        return Ok(s);
    }
    if let Some(v) = w.live().find(|&v| w.degree(v) != delta) {
        let gamma = cfg.gamma(w.degree(v))?;
        return Ok(Step::Select(if take_with(rng, gamma) { vec![v] } else { branch_set(w, v, cfg.delta_cap) }));
    }
    Ok(both_endpoints(w))
}

fn better_rule(w: &Work, cfg: &VcConfig, rng: &mut Rng) -> Result<Step> {
    if cfg.delta_cap < 5 {
        return Err(Error::Config(format!("better_vc needs delta_cap >= 5, got {}", cfg.delta_cap)));
    }
    if let Some(s) = split_or_pendant(w) {
        return Ok(s);
    }
    if let Some(v) = w.live().find(|&v| w.degree(v) >= 5) {
        let gamma = cfg.gamma(w.degree(v))?;
        return Ok(Step::Select(if take_with(rng, gamma) { vec![v] } else { branch_set(w, v, cfg.delta_cap) }));
    }
    if w.is_regular() {
        return Ok(both_endpoints(w));
    }
    let pick = |rng: &mut Rng, p: f64, a: Vec<usize>, b: Vec<usize>| Step::Select(if take_with(rng, p) { a } else { b });

    let deg2: Vec<usize> = w.live().filter(|&v| w.degree(v) == 2).collect();
    if let Some(&v) = deg2.iter().find(|&&v| w.has_edge(w.nbrs(v)[0], w.nbrs(v)[1])) {
        return Ok(Step::Select(w.nbrs(v).to_vec()));
    }
    for &v in &deg2 {
        let (x, y) = (w.nbrs(v)[0], w.nbrs(v)[1]);
        if w.degree(x) == 2 && w.degree(y) == 2 && w.nbrs(x) == w.nbrs(y) {
            let z = w.nbrs(x).iter().copied().find(|&u| u != v).expect("twin has a second neighbor");
            return Ok(Step::Select(vec![z, v]));
        }
    }
    if let Some(&v) = deg2.first() {
        let (x, y) = (w.nbrs(v)[0], w.nbrs(v)[1]);
        let far = w.union_nbrs(&[x, y]);
        let lam = cfg.lambda1(far.len())?;
        return Ok(pick(rng, lam, w.nbrs(v).to_vec(), far));
    }

    let deg3: Vec<usize> = w.live().filter(|&v| w.degree(v) == 3).collect();
    const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    for &v in &deg3 {
        let n = w.nbrs(v);
        if let Some(&(_, _, iz)) = PAIRS.iter().find(|&&(i, j, _)| w.has_edge(n[i], n[j])) {
            let z = n[iz];
            let lam = cfg.lambda2(w.degree(z))?;
            return Ok(pick(rng, lam, n.to_vec(), w.nbrs(z).to_vec()));
        }
    }
    for &v in &deg3 {
        let n = w.nbrs(v);
        for &(i, j, _) in &PAIRS {
            let common = w.nbrs(n[i]).iter().copied().find(|&c| c != v && !n.contains(&c) && w.has_edge(c, n[j]));
            if let Some(c) = common {
                let lam = cfg.lambda3()?;
                let mut vw = vec![v, c];
                vw.sort_unstable();
                return Ok(pick(rng, lam, n.to_vec(), vw));
            }
        }
    }
    for &v in &deg3 {
        let n = w.nbrs(v);
        if let Some(ix) = (0..3).find(|&i| w.degree(n[i]) == 4) {
            let x = n[ix];
            let rest: Vec<usize> = n.iter().copied().filter(|&u| u != x).collect();
            let yz = w.union_nbrs(&rest);
            let probs = cfg.delta3way(yz.len())?;
            let mut third = yz;
            third.push(x);
            third.sort_unstable();
            let u: f64 = rng.gen();
            let s = if u < probs[0] {
                n.to_vec()
            } else if u < probs[0] + probs[1] {
                w.nbrs(x).to_vec()
            } else {
                third
            };
            return Ok(Step::Select(s));
        }
    }
    unreachable!("connected non-regular graph with degrees in 2..=4 always matches a case")
}

pub fn vc3_run(g: &Graph, gamma: f64, seed: u64) -> Result<CoverResult> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Config(format!("gamma {gamma} not in (0,1)")));
    }
    let mut cfg = VcConfig::default();
    cfg.gamma_by_degree.insert(3, gamma);
    drive(g, &cfg, seed, vc3_rule)
}

pub fn vc3star_run(g: &Graph, cfg: &VcConfig, seed: u64) -> Result<CoverResult> {
    drive(g, cfg, seed, vc3star_rule)
}

pub fn enhanced_vc3star_run(g: &Graph, cfg: &VcConfig, seed: u64) -> Result<CoverResult> {
    drive(g, cfg, seed, enhanced_rule)
}

pub fn better_vc_run(g: &Graph, cfg: &VcConfig, seed: u64) -> Result<CoverResult> {
    drive(g, cfg, seed, better_rule)
}

/// Dispatch by selector; VC3 reads its probability from `gamma_by_degree[3]`.
pub fn run_algo(algo: Algo, g: &Graph, cfg: &VcConfig, seed: u64) -> Result<CoverResult> {
    match algo {
        Algo::Vc3 => vc3_run(g, cfg.gamma(3)?, seed),
        Algo::Vc3Star => vc3star_run(g, cfg, seed),
        Algo::EnhancedVc3Star => enhanced_vc3star_run(g, cfg, seed),
        Algo::BetterVc => better_vc_run(g, cfg, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min_cover(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|mask| g.edges().iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn full_cfg() -> VcConfig {
        let mut cfg = VcConfig { delta_cap: 8, excluded_degree: Some(5), ..Default::default() };
        for d in 2..=8 {
            cfg.gamma_by_degree.insert(d, 0.4);
        }
        for r in 3..=7 {
            cfg.lambda1.insert(r, 0.5);
        }
        cfg.lambda2.insert(3, 0.5);
        cfg.lambda2.insert(4, 0.5);
        cfg.lambda3 = Some(0.5);
        for r in 5..=7 {
            cfg.delta3way.insert(r, [0.5, 0.25, 0.25]);
        }
        cfg
    }

    #[test]
    fn deg2_exact_matches_brute_force() {
        for g in [Graph::cycle(5), Graph::path(4), Graph::path(5), Graph::cycle(6), Graph::empty(3)] {
            let c = max_deg2_exact(&g).unwrap();
            assert!(g.is_cover(&c));
            assert_eq!(c.len(), brute_min_cover(&g));
        }
        assert_eq!(max_deg2_exact(&Graph::cycle(5)).unwrap().len(), 3);
        assert_eq!(max_deg2_exact(&Graph::path(4)).unwrap().len(), 2);
        assert!(max_deg2_exact(&Graph::star(3)).is_err());
    }

    #[test]
    fn vc3_examples() {
        assert!(vc3_run(&Graph::empty(4), 0.5, 1).unwrap().cover.is_empty());
        let p5 = vc3_run(&Graph::path(5), 0.5, 9).unwrap();
        assert_eq!(p5.cover, vec![1, 3]);
        for seed in 0..20 {
            let r = vc3_run(&Graph::star(5), 0.5, seed).unwrap();
            // center, or three leaves followed by the center of the leftover 2-star
            assert!(r.cover == vec![0] || r.cover == vec![0, 1, 2, 3], "{:?}", r.cover);
        }
        assert!(vc3_run(&Graph::path(3), 1.0, 0).is_err());
    }

    #[test]
    fn vc3star_on_k4() {
        for seed in 0..20 {
            let r = vc3star_run(&Graph::complete(4), &full_cfg(), seed).unwrap();
            assert_eq!(r.cover.len(), 3);
        }
    }

    #[test]
    fn enhanced_cases() {
        let mut cfg = full_cfg();
        cfg.excluded_degree = Some(2);
        let r = enhanced_vc3star_run(&Graph::cycle(4), &cfg, 3).unwrap();
        assert_eq!(r.cover.len(), 2);
        let pend = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(enhanced_vc3star_run(&pend, &cfg, 0).unwrap().cover, vec![1]);
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let r = enhanced_vc3star_run(&two, &cfg, 0).unwrap();
        assert_eq!(r.cover.len(), 4);
        cfg.excluded_degree = None;
        assert!(enhanced_vc3star_run(&Graph::cycle(4), &cfg, 0).is_err());
    }

    #[test]
    fn better_vc_examples() {
        let cfg = full_cfg();
        assert_eq!(better_vc_run(&Graph::cycle(4), &cfg, 0).unwrap().cover.len(), 2);
        for seed in 0..10 {
            let r = better_vc_run(&Graph::petersen(), &cfg, seed).unwrap();
            assert!(r.recursion_steps <= 10_000);
        }
        let mut missing = cfg.clone();
        missing.lambda1.clear();
        // vertex 0 has degree 2 with non-adjacent, non-twin neighbors
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(matches!(better_vc_run(&g, &missing, 0), Err(Error::Config(_))));
        assert!(g.is_cover(&better_vc_run(&g, &cfg, 0).unwrap().cover));
    }

    #[test]
    fn deterministic_given_seed() {
        let g = Graph::petersen();
        let cfg = full_cfg();
        for algo in Algo::ALL {
            let a = run_algo(algo, &g, &cfg, 77).unwrap();
            let b = run_algo(algo, &g, &cfg, 77).unwrap();
            assert_eq!(a, b);
        }
    }
}
