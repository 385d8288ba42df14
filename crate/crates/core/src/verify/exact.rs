use crate::hs::Hypergraph3;
use crate::vc::Graph;
use crate::{Error, Result};

pub const EXACT_VC_MAX_N: usize = 24;
pub const EXACT_HS_MAX_N: usize = 20;

/// Size of a minimum vertex cover, by branch and bound.
pub fn exact_min_cover(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > EXACT_VC_MAX_N {
        return Err(Error::SizeCap(format!("exact_min_cover needs n <= {EXACT_VC_MAX_N}, got {n}")));
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    let mut best = n;
    vc_branch(&adj, (1u32 << n) - 1, 0, &mut best);
    Ok(best)
}

fn vc_branch(adj: &[u32], alive: u32, cur: usize, best: &mut usize) {
    if cur >= *best {
        return;
    }
    let mut v = usize::MAX;
    let mut max_deg = 0;
    let mut twice_edges = 0;
    let mut rest = alive;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[u] & alive).count_ones() as usize;
        twice_edges += d;
        if d > max_deg {
            max_deg = d;
            v = u;
        }
    }
    if max_deg == 0 {
        *best = cur;
        return;
    }
    // each cover vertex removes at most max_deg edges
    let lower = (twice_edges / 2).div_ceil(max_deg);
    if cur + lower >= *best {
        return;
    }
    let nb = adj[v] & alive;
    vc_branch(adj, alive & !(1 << v), cur + 1, best);
    vc_branch(adj, alive & !nb & !(1 << v), cur + nb.count_ones() as usize, best);
}

/// Size of a minimum hitting set, by branching on a smallest unhit edge.
pub fn exact_min_hitting_set(h: &Hypergraph3) -> Result<usize> {
    let n = h.n();
    if n > EXACT_HS_MAX_N {
        return Err(Error::SizeCap(format!("exact_min_hitting_set needs n <= {EXACT_HS_MAX_N}, got {n}")));
    }
    let edges: Vec<u32> = h.edges().iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let mut best = n;
    hs_branch(&edges, 0, &mut best);
    Ok(best)
}

fn hs_branch(edges: &[u32], cur: usize, best: &mut usize) {
    if edges.is_empty() {
        *best = (*best).min(cur);
        return;
    }
    // greedy packing of pairwise disjoint edges is a lower bound
    let mut used = 0u32;
    let mut packed = 0;
    for &e in edges {
        if e & used == 0 {
            used |= e;
            packed += 1;
        }
    }
    if cur + packed >= *best {
        return;
    }
    let e = *edges.iter().min_by_key(|e| e.count_ones()).expect("non-empty");
    let mut rest = e;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        let left: Vec<u32> = edges.iter().copied().filter(|f| f & (1 << v) == 0).collect();
        hs_branch(&left, cur + 1, best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_cover(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    fn brute_hs(h: &Hypergraph3) -> usize {
        (0u32..1 << h.n())
            .filter(|&m| h.edges().iter().all(|e| e.iter().any(|&v| m >> v & 1 == 1)))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    #[test]
    fn small_covers() {
        assert_eq!(exact_min_cover(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(exact_min_cover(&Graph::complete(4)).unwrap(), 3);
        assert_eq!(exact_min_cover(&Graph::empty(6)).unwrap(), 0);
        assert_eq!(exact_min_cover(&Graph::petersen()).unwrap(), 6);
        assert!(exact_min_cover(&Graph::empty(25)).is_err());
    }

    #[test]
    fn covers_match_brute_force() {
        let mut x = 12345u64;
        for _ in 0..40 {
            let mut edges = Vec::new();
            for u in 0..10 {
                for v in u + 1..10 {
                    x = crate::rng::splitmix64(x);
                    if x % 100 < 30 {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(10, &edges).unwrap();
            assert_eq!(exact_min_cover(&g).unwrap(), brute_cover(&g));
        }
    }

    #[test]
    fn small_hitting_sets() {
        let one = Hypergraph3::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(exact_min_hitting_set(&one).unwrap(), 1);
        let disjoint = Hypergraph3::new(9, vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        assert_eq!(exact_min_hitting_set(&disjoint).unwrap(), 3);
        // example with edges v1v2v3, v1v2v4, v3v5
        let fig = Hypergraph3::new(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![2, 4]]).unwrap();
        assert_eq!(exact_min_hitting_set(&fig).unwrap(), brute_hs(&fig));
        assert_eq!(brute_hs(&fig), 2);
        assert!(exact_min_hitting_set(&Hypergraph3::new(21, vec![]).unwrap()).is_err());
    }

    #[test]
    fn hitting_sets_match_brute_force() {
        let mut x = 999u64;
        for _ in 0..40 {
            let mut edges = Vec::new();
            for _ in 0..12 {
                let mut e = Vec::new();
                x = crate::rng::splitmix64(x);
                let size = 1 + (x % 3) as usize;
                for j in 0..size {
                    let v = ((x >> (8 + 8 * j)) % 11) as usize;
                    if !e.contains(&v) {
                        e.push(v);
                    }
                }
                edges.push(e);
            }
            let h = Hypergraph3::new(11, edges).unwrap();
            assert_eq!(exact_min_hitting_set(&h).unwrap(), brute_hs(&h));
        }
    }
}
