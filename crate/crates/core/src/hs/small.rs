//! Small hypergraphs with edges of size one or two, the local structure
//! 3HS branches on, and their canonical labeling.
//!
//! Vertices are `0..n` and edges are bitmasks, so the structure is a simple
//! graph where a singleton edge marks its vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::hypergraph::Hypergraph3;
use crate::{Error, Result};

pub const MAX_SMALL_VERTICES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallHypergraph {
    n: usize,
    /// Sorted, distinct, each with one or two bits set.
    edges: Vec<u32>,
}

/// Relabeling-invariant key; equal exactly for isomorphic inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonKey(SmallHypergraph);

impl CanonKey {
    pub fn graph(&self) -> &SmallHypergraph {
        &self.0
    }
}

impl SmallHypergraph {
    pub fn new(n: usize, mut edges: Vec<u32>) -> Result<Self> {
        if n > MAX_SMALL_VERTICES {
            return Err(Error::Hypergraph(format!("{n} vertices exceed {MAX_SMALL_VERTICES}")));
        }
        edges.sort_unstable();
        edges.dedup();
        let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut seen = 0u32;
        for &e in &edges {
            if !(1..=2).contains(&e.count_ones()) || e & !all != 0 {
                return Err(Error::Hypergraph(format!("bad edge mask {e:#b}")));
            }
            seen |= e;
        }
        if seen != all {
            return Err(Error::Hypergraph("isolated vertex".into()));
        }
        Ok(SmallHypergraph { n, edges })
    }

    pub fn from_lists(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let masks = edges
            .iter()
            .map(|e| {
                if e.iter().any(|&v| v >= n) {
                    return Err(Error::Hypergraph(format!("edge {e:?} out of range")));
                }
                Ok(e.iter().fold(0u32, |m, &v| m | 1 << v))
            })
            .collect::<Result<Vec<_>>>()?;
        SmallHypergraph::new(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| mask_to_vec(e)).collect()
    }

    pub fn hits(&self, set: u32) -> bool {
        self.edges.iter().all(|&e| e & set != 0)
    }

    /// Vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SmallHypergraph {
        let edges = self.edges.iter().map(|&e| map_mask(e, perm)).collect();
        SmallHypergraph::new(self.n, edges).expect("relabeling preserves validity")
    }

    /// All minimal hitting sets, ordered by size then vertex list.
    pub fn minimal_hitting_sets(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0u32..1 << self.n)
            .filter(|&s| self.hits(s) && bits(s).all(|v| !self.hits(s & !(1 << v))))
            .collect();
        out.sort_by_key(|&s| (s.count_ones(), mask_to_vec(s)));
        out
    }
}

pub(crate) fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| m >> i & 1 == 1)
}

pub(crate) fn mask_to_vec(m: u32) -> Vec<usize> {
    bits(m).collect()
}

pub(crate) fn map_mask(m: u32, perm: &[usize]) -> u32 {
    bits(m).fold(0, |acc, v| acc | 1 << perm[v])
}

fn from_edges_at(h: &Hypergraph3, v: usize, chosen: &[usize]) -> Result<(SmallHypergraph, Vec<usize>)> {
    if chosen.is_empty() {
        return Err(Error::Hypergraph(format!("vertex {v} has no edges")));
    }
    let mut verts: Vec<usize> = Vec::new();
    for &i in chosen {
        let e = &h.edges()[i];
        if !e.contains(&v) {
            return Err(Error::Hypergraph(format!("edge {e:?} does not contain {v}")));
        }
        if e.len() == 1 {
            return Err(Error::Hypergraph(format!("singleton edge at {v}")));
        }
        verts.extend(e.iter().copied().filter(|&u| u != v));
    }
    verts.sort_unstable();
    verts.dedup();
    let lists: Vec<Vec<usize>> = chosen
        .iter()
        .map(|&i| h.edges()[i].iter().filter(|&&u| u != v).map(|u| verts.binary_search(u).unwrap()).collect())
        .collect();
    Ok((SmallHypergraph::from_lists(verts.len(), &lists)?, verts))
}

/// Edges through `v` with `v` deleted, plus the map from local vertex to
/// original vertex.
pub fn neighbors_graph(h: &Hypergraph3, v: usize) -> Result<(SmallHypergraph, Vec<usize>)> {
    let chosen: Vec<usize> = (0..h.edges().len()).filter(|&i| h.edges()[i].contains(&v)).collect();
    from_edges_at(h, v, &chosen)
}

/// Like [`neighbors_graph`] restricted to the edges with indices `f`.
pub fn induced_graph(h: &Hypergraph3, v: usize, f: &[usize]) -> Result<(SmallHypergraph, Vec<usize>)> {
    from_edges_at(h, v, f)
}

struct Component {
    n: usize,
    nb: Vec<u32>,
    marked: Vec<bool>,
}

impl Component {
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_classes(colors);
        loop {
            let sig: Vec<(u32, Vec<u32>)> = (0..self.n)
                .map(|v| {
                    let mut c: Vec<u32> = bits(self.nb[v]).map(|u| colors[u]).collect();
                    c.sort_unstable();
                    (colors[v], c)
                })
                .collect();
            let mut uniq = sig.clone();
            uniq.sort();
            uniq.dedup();
            for v in 0..self.n {
                colors[v] = uniq.binary_search(&sig[v]).unwrap() as u32;
            }
            let now = uniq.len();
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn code(&self, label: &[usize]) -> Vec<u32> {
        let mut e = Vec::new();
        for v in 0..self.n {
            if self.marked[v] {
                e.push(1 << label[v]);
            }
            for u in bits(self.nb[v]).filter(|&u| u > v) {
                e.push(1 << label[v] | 1 << label[u]);
            }
        }
        e.sort_unstable();
        e
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        self.marked[a] == self.marked[b] && self.nb[a] & !(1 << b) == self.nb[b] & !(1 << a)
    }

    fn search(&self, mut colors: Vec<u32>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
        self.refine(&mut colors);
        let classes = count_classes(&colors);
        if classes == self.n {
            let label: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
            let code = self.code(&label);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, label));
            }
            return;
        }
        let mut size = vec![0usize; classes];
        colors.iter().for_each(|&c| size[c as usize] += 1);
        let cell = (0..classes).find(|&c| size[c] > 1).unwrap() as u32;
        let members: Vec<usize> = (0..self.n).filter(|&v| colors[v] == cell).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            // swapping twins is an automorphism, so their subtrees agree
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let next: Vec<u32> = (0..self.n).map(|u| 2 * colors[u] + u32::from(colors[u] == cell && u != v)).collect();
            self.search(next, best);
        }
    }

    fn canonical(&self) -> (Vec<u32>, Vec<usize>) {
        let init: Vec<u32> = (0..self.n).map(|v| 2 * self.nb[v].count_ones() + u32::from(self.marked[v])).collect();
        let mut best = None;
        self.search(init, &mut best);
        best.expect("search reaches a leaf")
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Canonical form plus the labeling `v -> canonical index` that produces it.
pub fn canonical_labeling(g: &SmallHypergraph) -> (CanonKey, Vec<usize>) {
    let n = g.n;
    let mut nb = vec![0u32; n];
    let mut marked = vec![false; n];
    for &e in &g.edges {
        let vs = mask_to_vec(e);
        match vs[..] {
            [a] => marked[a] = true,
            [a, b] => {
                nb[a] |= 1 << b;
                nb[b] |= 1 << a;
            }
            _ => unreachable!(),
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp_of[s] = comps.len();
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for u in bits(nb[v]) {
                if comp_of[u] == usize::MAX {
                    comp_of[u] = comps.len();
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    // ((size, component code), original vertex -> local label)
    type Solved = ((usize, Vec<u32>), Vec<(usize, usize)>);
    let mut solved: Vec<Solved> = comps
        .iter()
        .map(|members| {
            let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let c = Component {
                n: members.len(),
                nb: members.iter().map(|&v| bits(nb[v]).fold(0, |m, u| m | 1 << local[&u])).collect(),
                marked: members.iter().map(|&v| marked[v]).collect(),
            };
            let (code, label) = c.canonical();
            ((members.len(), code), members.iter().copied().zip(label).collect())
        })
        .collect();
    solved.sort_by(|a, b| a.0.cmp(&b.0));
    let mut labeling = vec![0usize; n];
    let mut offset = 0;
    for ((size, _), pairs) in &solved {
        for &(v, l) in pairs {
            labeling[v] = offset + l;
        }
        offset += size;
    }
    (CanonKey(g.relabel(&labeling)), labeling)
}

pub fn canonical_form(g: &SmallHypergraph) -> CanonKey {
    canonical_labeling(g).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn iso_brute(a: &SmallHypergraph, b: &SmallHypergraph) -> bool {
        a.n() == b.n() && a.edges().len() == b.edges().len() && permutations(a.n()).iter().any(|p| a.relabel(p) == *b)
    }

    #[test]
    fn invariant_under_relabeling() {
        let g = SmallHypergraph::from_lists(6, &[vec![0, 1], vec![1, 2], vec![2, 0], vec![3], vec![3, 4], vec![5]]).unwrap();
        let (k, lab) = canonical_labeling(&g);
        assert_eq!(g.relabel(&lab), *k.graph());
        for p in permutations(6).iter().step_by(37) {
            assert_eq!(canonical_form(&g.relabel(p)), k);
        }
    }

    #[test]
    fn distinguishes_singleton_from_pair() {
        let a = SmallHypergraph::from_lists(2, &[vec![0, 1]]).unwrap();
        let b = SmallHypergraph::from_lists(1, &[vec![0]]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn key_classes_match_brute_force_on_two_edges() {
        // every labeled 2-edge small hypergraph on up to 4 vertices
        let mut all = vec![];
        for n in 1..=4usize {
            let cand: Vec<u32> = (1u32..1 << n).filter(|m| m.count_ones() <= 2).collect();
            for i in 0..cand.len() {
                for j in i + 1..cand.len() {
                    if let Ok(g) = SmallHypergraph::new(n, vec![cand[i], cand[j]]) {
                        all.push(g);
                    }
                }
            }
        }
        let mut reps: Vec<SmallHypergraph> = vec![];
        for g in &all {
            if !reps.iter().any(|r| iso_brute(r, g)) {
                reps.push(g.clone());
            }
        }
        let mut keys: Vec<CanonKey> = all.iter().map(canonical_form).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), reps.len());
        for a in &all {
            for b in &reps {
                assert_eq!(canonical_form(a) == canonical_form(b), iso_brute(a, b));
            }
        }
    }

    #[test]
    fn minimal_hitting_sets_of_triangle() {
        let t = SmallHypergraph::from_lists(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let hs: Vec<Vec<usize>> = t.minimal_hitting_sets().into_iter().map(mask_to_vec).collect();
        assert_eq!(hs, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn neighbors_graph_examples() {
        // v1..v5 as 0..4: {v1,v2,v3}, {v1,v2,v4}, {v3,v5}
        let h = Hypergraph3::new(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 4]]).unwrap();
        let (g, map) = neighbors_graph(&h, 0).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(g.edge_lists(), vec![vec![0, 1], vec![0, 2]]);

        let h = Hypergraph3::new(3, vec![vec![0, 1, 2]]).unwrap();
        let (g, map) = neighbors_graph(&h, 0).unwrap();
        assert_eq!((g.edge_lists(), map), (vec![vec![0, 1]], vec![1, 2]));

        let h = Hypergraph3::new(3, vec![vec![0, 1], vec![0, 1, 2]]).unwrap();
        let (g, map) = neighbors_graph(&h, 0).unwrap();
        assert_eq!((g.edge_lists(), map), (vec![vec![0], vec![0, 1]], vec![1, 2]));

        assert!(neighbors_graph(&Hypergraph3::new(2, vec![vec![0]]).unwrap(), 0).is_err());
        assert!(neighbors_graph(&Hypergraph3::new(2, vec![vec![1]]).unwrap(), 0).is_err());
    }

    #[test]
    fn induced_graph_examples() {
        let h = Hypergraph3::new(4, vec![vec![0, 1, 2], vec![0, 3], vec![1, 3]]).unwrap();
        let all: Vec<usize> = (0..h.edges().len()).filter(|&i| h.edges()[i].contains(&0)).collect();
        assert_eq!(induced_graph(&h, 0, &all).unwrap(), neighbors_graph(&h, 0).unwrap());
        let (g, map) = induced_graph(&h, 0, &[0]).unwrap();
        assert_eq!((g.edge_lists(), map), (vec![vec![0, 1]], vec![1, 2]));
        assert!(induced_graph(&h, 0, &[2]).is_err());

        let mut edges = vec![];
        for i in 1..=9 {
            edges.push(vec![0, i, 9 + i]);
        }
        let h = Hypergraph3::new(19, edges).unwrap();
        let (g, _) = induced_graph(&h, 0, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(g.edges().len(), 7);
    }
}
