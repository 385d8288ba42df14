use std::fmt::Write as _;

use crate::{Error, Result};

/// Hypergraph on `0..n` whose edges hold one to three vertices.
/// Edges are stored sorted internally and in sorted order overall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph3 {
    /// Duplicate edges are merged.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            if e.is_empty() || e.len() > 3 {
                return Err(Error::Hypergraph(format!("edge {e:?} must have 1 to 3 vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Hypergraph(format!("edge {e:?} repeats a vertex")));
            }
            if e[e.len() - 1] >= n {
                return Err(Error::Hypergraph(format!("edge {e:?} out of range for n={n}")));
            }
            out.push(e);
        }
        out.sort();
        out.dedup();
        Ok(Hypergraph3 { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn is_hitting_set(&self, set: &[usize]) -> bool {
        self.edges.iter().all(|e| e.iter().any(|v| set.contains(v)))
    }

    /// `p hs n m` header, `e v1 [v2 [v3]]` lines (1-indexed), `c` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let parts: Vec<&str> = raw.split_whitespace().collect();
            let err = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            match parts.first().copied() {
                None | Some("c") => {}
                Some("p") => {
                    if parts.len() != 4 || parts[1] != "hs" {
                        return Err(err("expected `p hs <n> <m>`"));
                    }
                    n = Some(parts[2].parse::<usize>().map_err(|_| err("bad vertex count"))?);
                }
                Some("e") => {
                    let nn = n.ok_or_else(|| err("edge before header"))?;
                    if !(2..=4).contains(&parts.len()) {
                        return Err(err("an edge has 1 to 3 vertices"));
                    }
                    let mut e = Vec::new();
                    for p in &parts[1..] {
                        let v: usize = p.parse().map_err(|_| err("bad vertex"))?;
                        if v == 0 || v > nn {
                            return Err(err("vertex out of range"));
                        }
                        if e.contains(&(v - 1)) {
                            return Err(err("repeated vertex in edge"));
                        }
                        e.push(v - 1);
                    }
                    edges.push(e);
                }
                Some(_) => return Err(err("unknown line type")),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        Hypergraph3::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("p hs {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            s.push('e');
            for v in e {
                let _ = write!(s, " {}", v + 1);
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let h = Hypergraph3::new(5, vec![vec![0, 1, 2], vec![3], vec![2, 4]]).unwrap();
        assert_eq!(Hypergraph3::parse(&h.to_text()).unwrap(), h);
        assert!(h.is_hitting_set(&[2, 3]));
        assert!(!h.is_hitting_set(&[0, 3]));
        assert_eq!(h.degree(2), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph3::new(3, vec![vec![]]).is_err());
        assert!(Hypergraph3::new(5, vec![vec![0, 1, 2, 3]]).is_err());
        assert!(Hypergraph3::new(3, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph3::new(3, vec![vec![3]]).is_err());
        let e = Hypergraph3::parse("p hs 3 1\ne 1 2 3 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert_eq!(Hypergraph3::new(3, vec![vec![0, 1], vec![1, 0]]).unwrap().edges().len(), 1);
    }
}
