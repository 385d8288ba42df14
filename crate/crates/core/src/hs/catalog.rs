use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::small::{canonical_form, mask_to_vec, CanonKey, SmallHypergraph};
use crate::recurrence::Distribution;
use crate::{Error, Exec, Result};

/// Largest edge budget `generate_catalog` accepts.
pub const MAX_CATALOG_DELTA: usize = 7;

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    /// In canonical labeling.
    pub graph: SmallHypergraph,
    /// Every minimal hitting set, by size then vertex list.
    pub hitting_sets: Vec<u32>,
    /// One weight per hitting set, then the weight of `{v}`.
    pub gamma: Option<Distribution>,
}

impl CatalogEntry {
    fn new(key: CanonKey) -> Self {
        let graph = key.graph().clone();
        let hitting_sets = graph.minimal_hitting_sets();
        CatalogEntry { graph, hitting_sets, gamma: None }
    }

    pub fn m(&self) -> usize {
        self.hitting_sets.len()
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub delta: usize,
    pub entries: Vec<CatalogEntry>,
    lookup: HashMap<CanonKey, usize>,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.delta == other.delta && self.entries == other.entries
    }
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    vertices: usize,
    edges: Vec<Vec<usize>>,
    hitting_sets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawCatalog {
    delta: usize,
    entries: Vec<RawEntry>,
}

fn one_based(m: u32) -> Vec<usize> {
    mask_to_vec(m).into_iter().map(|v| v + 1).collect()
}

impl Catalog {
    pub fn from_entries(delta: usize, entries: Vec<CatalogEntry>) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            let key = canonical_form(&e.graph);
            if key.graph() != &e.graph {
                return Err(Error::Hypergraph(format!("entry {i} is not in canonical labeling")));
            }
            if e.graph.edges().len() > delta {
                return Err(Error::Hypergraph(format!("entry {i} has more than {delta} edges")));
            }
            if lookup.insert(key, i).is_some() {
                return Err(Error::Hypergraph(format!("entry {i} duplicates an earlier entry")));
            }
            if let Some(g) = &e.gamma {
                if g.len() != e.m() + 1 {
                    return Err(Error::LengthMismatch(g.len(), e.m() + 1));
                }
            }
        }
        Ok(Catalog { delta, entries, lookup })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn find(&self, key: &CanonKey) -> Option<usize> {
        self.lookup.get(key).copied()
    }

    pub fn max_m(&self) -> usize {
        self.entries.iter().map(CatalogEntry::m).max().unwrap_or(0)
    }

    /// Vertices are written 1-indexed.
    pub fn to_json(&self) -> String {
        let raw = RawCatalog {
            delta: self.delta,
            entries: self
                .entries
                .iter()
                .map(|e| RawEntry {
                    vertices: e.graph.n(),
                    edges: e.graph.edges().iter().map(|&m| one_based(m)).collect(),
                    hitting_sets: e.hitting_sets.iter().map(|&m| one_based(m)).collect(),
                    gamma: e.gamma.as_ref().map(|g| g.weights().to_vec()),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("catalog serializes")
    }

    /// Hitting-set lists are recomputed and must match the stored ones.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawCatalog = serde_json::from_str(s)?;
        let to_mask = |l: &Vec<usize>| -> Result<u32> {
            l.iter().try_fold(0u32, |m, &v| {
                if v == 0 || v > 32 {
                    Err(Error::Hypergraph(format!("vertex {v} out of range")))
                } else {
                    Ok(m | 1 << (v - 1))
                }
            })
        };
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (i, r) in raw.entries.into_iter().enumerate() {
            let edges = r.edges.iter().map(to_mask).collect::<Result<Vec<_>>>()?;
            let graph = SmallHypergraph::new(r.vertices, edges)?;
            let stored = r.hitting_sets.iter().map(to_mask).collect::<Result<Vec<_>>>()?;
            let hitting_sets = graph.minimal_hitting_sets();
            if stored != hitting_sets {
                return Err(Error::Hypergraph(format!("entry {i}: stored hitting sets are wrong")));
            }
            let gamma = r.gamma.map(Distribution::new).transpose()?;
            entries.push(CatalogEntry { graph, hitting_sets, gamma });
        }
        Catalog::from_entries(raw.delta, entries)
    }
}

/// Every way to add one new edge to `g`, possibly on fresh vertices.
fn children(g: &SmallHypergraph) -> Vec<SmallHypergraph> {
    let n = g.n();
    let mut cand: Vec<(usize, u32)> = Vec::new();
    for a in 0..n {
        cand.push((n, 1 << a));
        cand.push((n + 1, 1 << a | 1 << n));
        for b in a + 1..n {
            cand.push((n, 1 << a | 1 << b));
        }
    }
    cand.push((n + 1, 1 << n));
    cand.push((n + 2, 1 << n | 1 << (n + 1)));
    cand.into_iter()
        .filter(|(_, e)| !g.edges().contains(e))
        .map(|(nn, e)| {
            let mut edges = g.edges().to_vec();
            edges.push(e);
            SmallHypergraph::new(nn, edges).expect("augmentation keeps validity")
        })
        .collect()
}

/// All small hypergraphs with at most `delta` edges, one per isomorphism
/// class, grown one edge at a time and deduplicated by canonical key.
pub fn generate_catalog(delta: usize) -> Result<Catalog> {
    generate_catalog_with(delta, Exec::default())
}

pub fn generate_catalog_with(delta: usize, exec: Exec) -> Result<Catalog> {
    if delta == 0 || delta > MAX_CATALOG_DELTA {
        return Err(Error::SizeCap(format!("catalog delta {delta} outside 1..={MAX_CATALOG_DELTA}")));
    }
    let mut level: Vec<CanonKey> = vec![canonical_form(&SmallHypergraph::new(0, vec![]).expect("empty"))];
    let mut keys: Vec<CanonKey> = Vec::new();
    for _ in 0..delta {
        let kids: Vec<Vec<CanonKey>> =
            exec.map_slice(&level, |p| children(p.graph()).iter().map(canonical_form).collect());
        let next: BTreeSet<CanonKey> = kids.into_iter().flatten().collect();
        level = next.into_iter().collect();
        keys.extend(level.iter().cloned());
    }
    let entries = exec.map_slice(&keys, |k| CatalogEntry::new(k.clone()));
    Catalog::from_entries(delta, entries)
}
