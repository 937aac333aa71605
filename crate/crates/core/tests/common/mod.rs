//! Brute-force references that share no code with the max-flow oracle.
#![allow(dead_code)]

use kcert::EdgeSet;

pub fn adjacency_masks(g: &EdgeSet) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Vertices reachable from `start` inside `alive`.
fn reach(adj: &[u32], alive: u32, start: usize) -> u32 {
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & alive & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// κ by enumerating every vertex set whose removal leaves a disconnected graph on ≥ 2 vertices.
pub fn brute_kappa(g: &EdgeSet) -> usize {
    let n = g.n();
    assert!((2..=16).contains(&n));
    let adj = adjacency_masks(g);
    let full = (1u32 << n) - 1;
    let mut best = n - 1;
    for removed in 0..=full {
        let size = removed.count_ones() as usize;
        if size >= best || n - size < 2 {
            continue;
        }
        let alive = full & !removed;
        let start = alive.trailing_zeros() as usize;
        if reach(&adj, alive, start) != alive {
            best = size;
        }
    }
    best
}

/// Smallest vertex set avoiding non-adjacent `s`, `t` whose removal separates them.
pub fn brute_st_cut(g: &EdgeSet, s: usize, t: usize) -> usize {
    let n = g.n();
    assert!(!g.contains(s, t) && s != t);
    let adj = adjacency_masks(g);
    let full = (1u32 << n) - 1;
    let terminals = (1u32 << s) | (1u32 << t);
    let mut best = usize::MAX;
    for removed in 0..=full {
        if removed & terminals != 0 {
            continue;
        }
        let size = removed.count_ones() as usize;
        if size < best && reach(&adj, full & !removed, s) & (1 << t) == 0 {
            best = size;
        }
    }
    best
}

/// All simple `s`–`t` paths as internal-vertex masks (direct edge gives mask 0).
pub fn simple_paths(g: &EdgeSet, s: usize, t: usize) -> Vec<u32> {
    fn walk(adj: &[u32], v: usize, t: usize, visited: u32, out: &mut Vec<u32>, s: usize) {
        let mut next = adj[v] & !visited;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if w == t {
                out.push(visited & !(1 << s));
            } else {
                walk(adj, w, t, visited | (1 << w), out, s);
            }
        }
    }
    let adj = adjacency_masks(g);
    let mut out = Vec::new();
    walk(&adj, s, t, 1 << s, &mut out, s);
    out
}

/// Largest family of internally vertex-disjoint paths, by exhaustive search.
pub fn brute_disjoint_paths(g: &EdgeSet, s: usize, t: usize) -> usize {
    fn best(paths: &[u32], used: u32, direct_used: bool) -> usize {
        let Some((&p, rest)) = paths.split_first() else { return 0 };
        let skip = best(rest, used, direct_used);
        let can_take = if p == 0 { !direct_used } else { p & used == 0 };
        if can_take {
            skip.max(1 + best(rest, used | p, direct_used || p == 0))
        } else {
            skip
        }
    }
    best(&simple_paths(g, s, t), 0, false)
}

/// Induced-subgraph search for a k-connected piece, via `brute_kappa`.
pub fn brute_has_k_connected_subgraph(g: &EdgeSet, k: usize) -> bool {
    let n = g.n();
    (1u32..(1 << n)).any(|mask| {
        let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        keep.len() >= (k + 1).max(2) && brute_kappa(&g.induced_relabelled(&keep)) >= k
    })
}
