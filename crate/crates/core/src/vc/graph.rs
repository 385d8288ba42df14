use std::fmt::Write as _;

use crate::{Error, Result};

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Duplicate edges are merged; self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_cover(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in set {
            if v < inside.len() {
                inside[v] = true;
            }
        }
        self.edges().iter().all(|&(u, v)| inside[u] || inside[v])
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// DIMACS-style text: `p edge n m` header, `e u v` lines, 1-indexed,
    /// `c` comment lines.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let parts: Vec<&str> = raw.split_whitespace().collect();
            let err = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            match parts.first().copied() {
                None | Some("c") => {}
                Some("p") => {
                    if parts.len() != 4 || parts[1] != "edge" {
                        return Err(err("expected `p edge <n> <m>`"));
                    }
                    n = Some(parts[2].parse::<usize>().map_err(|_| err("bad vertex count"))?);
                }
                Some("e") => {
                    let nn = n.ok_or_else(|| err("edge before header"))?;
                    if parts.len() != 3 {
                        return Err(err("expected `e <u> <v>`"));
                    }
                    let u: usize = parts[1].parse().map_err(|_| err("bad vertex"))?;
                    let v: usize = parts[2].parse().map_err(|_| err("bad vertex"))?;
                    if u == 0 || v == 0 || u > nn || v > nn {
                        return Err(err("vertex out of range"));
                    }
                    if u == v {
                        return Err(err("self-loop"));
                    }
                    edges.push((u - 1, v - 1));
                }
                Some(_) => return Err(err("unknown line type")),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        Graph::from_edges(n, &edges)
    }

    pub fn to_dimacs(&self) -> String {
        let edges = self.edges();
        let mut s = format!("p edge {} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "e {} {}", u + 1, v + 1);
        }
        s
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).expect("cycle")
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).expect("complete")
    }

    /// Vertex 0 joined to `leaves` further vertices.
    pub fn star(leaves: usize) -> Self {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e).expect("star")
    }

    pub fn petersen() -> Self {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).expect("petersen")
    }
}
