//! Exact vertex connectivity by Menger's theorem: the number of internally
//! vertex-disjoint `s`–`t` paths equals a unit-capacity max flow through the
//! vertex-split network.
//!
//! Connectivity is a property of the simple support, so every routine here takes an
//! [`EdgeSet`]; callers holding a [`crate::MultiGraph`] collapse it with `support()`.

mod flow;

use std::collections::BTreeSet;

use rayon::prelude::*;

pub use flow::FlowNetwork;

use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// Largest graph [`has_k_connected_subgraph`] will enumerate.
pub const SUBGRAPH_SEARCH_LIMIT: usize = 12;

fn check_pair(g: &EdgeSet, s: usize, t: usize) -> Result<()> {
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::InvalidVertex { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(Error::SelfLoop(s));
    }
    Ok(())
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths. A direct edge counts as one path.
pub fn max_vertex_disjoint_paths(g: &EdgeSet, s: usize, t: usize) -> Result<usize> {
    disjoint_paths_capped(g, s, t, usize::MAX)
}

/// Like [`max_vertex_disjoint_paths`] but stops once `cap` paths are found.
pub fn disjoint_paths_capped(g: &EdgeSet, s: usize, t: usize, cap: usize) -> Result<usize> {
    check_pair(g, s, t)?;
    Ok(FlowNetwork::vertex_split(g, s, t).max_flow(cap))
}

fn non_adjacent_pairs(g: &EdgeSet) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.contains(s, t))
        .collect()
}

/// κ(g): `n − 1` for complete graphs, otherwise the minimum over non-adjacent pairs.
pub fn vertex_connectivity(g: &EdgeSet) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    // κ ≤ min degree, so no pair needs more flow than that.
    let cap = g.min_degree();
    Ok(non_adjacent_pairs(g)
        .par_iter()
        .map(|&(s, t)| FlowNetwork::vertex_split(g, s, t).max_flow(cap))
        .min()
        .unwrap_or(cap))
}

/// Whether κ(g) ≥ k. Any `k > n − 1` is answered false.
pub fn is_k_connected(g: &EdgeSet, k: usize) -> Result<bool> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if k == 0 {
        return Ok(true);
    }
    if k > n - 1 || g.min_degree() < k {
        return Ok(false);
    }
    if g.is_complete() {
        return Ok(true);
    }
    Ok(non_adjacent_pairs(g)
        .par_iter()
        .all(|&(s, t)| FlowNetwork::vertex_split(g, s, t).max_flow(k) >= k))
}

/// A minimum vertex cut when κ(g) < k, taken from the first non-adjacent pair (in
/// lexicographic order) whose flow attains κ. Complete graphs have no vertex cut and
/// yield `None` even when `k > n − 1`.
pub fn find_vertex_cut(g: &EdgeSet, k: usize) -> Option<BTreeSet<usize>> {
    let kappa = vertex_connectivity(g).ok()?;
    if kappa >= k || g.is_complete() {
        return None;
    }
    for (s, t) in non_adjacent_pairs(g) {
        let mut net = FlowNetwork::vertex_split(g, s, t);
        if net.max_flow(kappa + 1) == kappa {
            let reach = net.residual_reachable();
            let cut = (0..g.n())
                .filter(|&v| v != s && v != t && reach[2 * v] && !reach[2 * v + 1])
                .collect::<BTreeSet<_>>();
            debug_assert_eq!(cut.len(), kappa);
            return Some(cut);
        }
    }
    unreachable!("some non-adjacent pair attains the connectivity")
}

/// Whether `g` has a k-vertex-connected subgraph on at least `k + 1` vertices.
///
/// Adding the remaining induced edges to a k-connected subgraph keeps it k-connected,
/// so enumerating induced subgraphs is enough.
pub fn has_k_connected_subgraph(g: &EdgeSet, k: usize) -> Result<bool> {
    let n = g.n();
    if n > SUBGRAPH_SEARCH_LIMIT {
        return Err(Error::TooLarge { n, limit: SUBGRAPH_SEARCH_LIMIT });
    }
    let min_size = (k + 1).max(2);
    if n < min_size {
        return Ok(false);
    }
    let adj: Vec<u32> = {
        let mut a = vec![0u32; n];
        for (u, v) in g.edges() {
            a[u] |= 1 << v;
            a[v] |= 1 << u;
        }
        a
    };
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) < min_size {
            continue;
        }
        // Every vertex of a k-connected graph has degree ≥ k inside it.
        let dense = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .all(|v| (adj[v] & mask).count_ones() as usize >= k);
        if !dense {
            continue;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if is_k_connected(&g.induced_relabelled(&keep), k)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::named;

    fn graph(n: usize, edges: &[(usize, usize)]) -> EdgeSet {
        EdgeSet::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn disjoint_paths_examples() {
        let c5 = named("cycle(5)").unwrap();
        assert_eq!(max_vertex_disjoint_paths(&c5, 0, 2).unwrap(), 2);
        let k4 = named("complete(4)").unwrap();
        assert_eq!(max_vertex_disjoint_paths(&k4, 0, 1).unwrap(), 3);
        let star = named("star(6)").unwrap();
        assert_eq!(max_vertex_disjoint_paths(&star, 0, 4).unwrap(), 1);
        assert_eq!(max_vertex_disjoint_paths(&star, 2, 4).unwrap(), 1);
    }

    #[test]
    fn disjoint_paths_errors() {
        let g = graph(3, &[(0, 1)]);
        assert_eq!(max_vertex_disjoint_paths(&g, 0, 3), Err(Error::InvalidVertex { vertex: 3, n: 3 }));
        assert_eq!(max_vertex_disjoint_paths(&g, 1, 1), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn direct_edge_counts_once() {
        // Removing the direct edge leaves two disjoint routes, adding it back gives three.
        let mut g = graph(4, &[(0, 2), (2, 1), (0, 3), (3, 1)]);
        assert_eq!(max_vertex_disjoint_paths(&g, 0, 1).unwrap(), 2);
        g.insert(0, 1).unwrap();
        assert_eq!(max_vertex_disjoint_paths(&g, 0, 1).unwrap(), 3);
    }

    #[test]
    fn connectivity_examples() {
        for n in 2..8 {
            assert_eq!(vertex_connectivity(&named(&format!("complete({n})")).unwrap()).unwrap(), n - 1);
        }
        for n in 3..9 {
            assert_eq!(vertex_connectivity(&named(&format!("cycle({n})")).unwrap()).unwrap(), 2);
        }
        assert_eq!(vertex_connectivity(&named("petersen").unwrap()).unwrap(), 3);
        assert_eq!(vertex_connectivity(&graph(4, &[(0, 1), (2, 3)])).unwrap(), 0);
        assert_eq!(vertex_connectivity(&graph(3, &[(0, 1)])).unwrap(), 0);
        assert_eq!(vertex_connectivity(&EdgeSet::new(1)), Err(Error::TooFewVertices(1)));
    }

    #[test]
    fn k_connected_examples() {
        let k5 = named("complete(5)").unwrap();
        assert!(is_k_connected(&k5, 4).unwrap());
        assert!(!is_k_connected(&k5, 5).unwrap());
        let mut k5_minus = k5.clone();
        k5_minus.remove(0, 1);
        assert!(!is_k_connected(&k5_minus, 4).unwrap());
        assert_eq!(max_vertex_disjoint_paths(&k5_minus, 0, 1).unwrap(), 3);
        assert!(is_k_connected(&k5_minus, 3).unwrap());
    }

    #[test]
    fn vertex_cut_examples() {
        let path = named("path(3)").unwrap();
        assert_eq!(find_vertex_cut(&path, 2), Some(BTreeSet::from([1])));
        assert_eq!(find_vertex_cut(&named("complete(4)").unwrap(), 2), None);
        assert_eq!(find_vertex_cut(&named("complete(4)").unwrap(), 9), None);
        assert_eq!(find_vertex_cut(&graph(4, &[(0, 1), (2, 3)]), 1), Some(BTreeSet::new()));
        let cut = find_vertex_cut(&named("cycle(6)").unwrap(), 3).unwrap();
        assert_eq!(cut, BTreeSet::from([1, 5]));
    }

    #[test]
    fn subgraph_search_examples() {
        assert!(has_k_connected_subgraph(&named("complete(5)").unwrap(), 3).unwrap());
        let tree = graph(8, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6), (5, 7)]);
        assert!(!has_k_connected_subgraph(&tree, 2).unwrap());
        assert!(has_k_connected_subgraph(&tree, 1).unwrap());
        // 2k − 1 = 5 vertices and 2k² − 3k + 1 = 10 edges for k = 3.
        let k5 = named("complete(5)").unwrap();
        assert_eq!(k5.len(), 10);
        assert!(has_k_connected_subgraph(&k5, 3).unwrap());
        assert!(!has_k_connected_subgraph(&k5, 5).unwrap());
        assert_eq!(
            has_k_connected_subgraph(&EdgeSet::new(13), 2),
            Err(Error::TooLarge { n: 13, limit: SUBGRAPH_SEARCH_LIMIT })
        );
    }
}
