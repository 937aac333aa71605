//! Seeded graph and stream generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, MultiGraph, UpdateEvent};
use crate::oracle;
use crate::seed;

/// Two-party set-disjointness input laid out as a `k × (n − k)` grid.
///
/// Vertices `0..k` form the left side `L`, vertices `k..n` the right side `R`;
/// position `(i, j)` is the pair `(i, k + j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessInstance {
    pub n: usize,
    pub k: usize,
    pub x: Vec<bool>,
    pub y: Vec<bool>,
}

impl DisjointnessInstance {
    pub fn new(n: usize, k: usize, x: Vec<bool>, y: Vec<bool>) -> Result<Self> {
        if k == 0 || 2 * k > n {
            return Err(Error::BadShape(format!("need 1 ≤ k ≤ n/2, got n = {n}, k = {k}")));
        }
        let len = k * (n - k);
        if x.len() != len || y.len() != len {
            return Err(Error::BadShape(format!(
                "strings must have length k·(n−k) = {len}, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(Self { n, k, x, y })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Random disjoint pair: each position is `(0,0)`, `(1,0)` or `(0,1)` uniformly.
    pub fn random_disjoint(n: usize, k: usize, seed: u64) -> Result<Self> {
        let len = k * n.saturating_sub(k);
        let mut rng = seed::rng(seed);
        let (mut x, mut y) = (vec![false; len], vec![false; len]);
        for p in 0..len {
            match rng.gen_range(0..3) {
                1 => x[p] = true,
                2 => y[p] = true,
                _ => {}
            }
        }
        Self::new(n, k, x, y)
    }

    /// Random disjoint pair with one position forced to `(1, 1)`.
    pub fn random_intersecting(n: usize, k: usize, seed: u64) -> Result<Self> {
        let mut inst = Self::random_disjoint(n, k, seed)?;
        let p = seed::rng(seed::derive(seed, "intersect", 0)).gen_range(0..inst.len());
        inst.x[p] = true;
        inst.y[p] = true;
        Ok(inst)
    }

    pub fn position(&self, i: usize, j: usize) -> usize {
        i * (self.n - self.k) + j
    }

    pub fn is_disjoint(&self) -> bool {
        !self.x.iter().zip(&self.y).any(|(&a, &b)| a && b)
    }

    /// Grid positions `(i, j)` where both strings hold a one.
    pub fn intersection(&self) -> Vec<(usize, usize)> {
        let width = self.n - self.k;
        (0..self.len())
            .filter(|&p| self.x[p] && self.y[p])
            .map(|p| (p / width, p % width))
            .collect()
    }
}

/// Alice inserts `(u_i, v_j)` wherever `x` is zero, Bob wherever `y` is zero.
pub fn gen_disjointness(inst: &DisjointnessInstance) -> (Vec<UpdateEvent>, Vec<UpdateEvent>) {
    let (n, k) = (inst.n, inst.k);
    let side = |bits: &[bool]| {
        (0..k)
            .flat_map(|i| (0..n - k).map(move |j| (i, j)))
            .filter(|&(i, j)| !bits[i * (n - k) + j])
            .map(|(i, j)| UpdateEvent::insert(i, k + j).expect("sides are disjoint"))
            .collect::<Vec<_>>()
    };
    (side(&inst.x), side(&inst.y))
}

/// Graph with vertex partition `(S, X, T)`, no `S`–`T` edges and near-cliques on `S ∪ X`
/// and `T ∪ X`, so that `X` is a minimum vertex cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedCut {
    pub graph: EdgeSet,
    pub cut: BTreeSet<usize>,
    pub s_side: Vec<usize>,
    pub t_side: Vec<usize>,
}

/// Largest `n` at which generated planted cuts are checked with the exact oracle.
pub const PLANTED_VERIFY_LIMIT: usize = 60;

const PLANTED_DROP_PROBABILITY: f64 = 0.15;
const PLANTED_ATTEMPTS: u64 = 8;

/// Planted instance with connectivity exactly `k − 1`.
pub fn gen_planted_cut(n: usize, k: usize, seed: u64) -> Result<PlantedCut> {
    if k == 0 || n < k + 2 {
        return Err(Error::TooSmall(format!("planted cut needs n ≥ k + 2 and k ≥ 1, got n = {n}, k = {k}")));
    }
    let mut rng = seed::rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let cut: Vec<usize> = order[..k - 1].to_vec();
    let rest = &order[k - 1..];
    let s_len = rng.gen_range(1..rest.len());
    let mut s_side = rest[..s_len].to_vec();
    let mut t_side = rest[s_len..].to_vec();
    s_side.sort_unstable();
    t_side.sort_unstable();

    let build = |drop: f64, rng: &mut rand_chacha::ChaCha8Rng| {
        let mut g = EdgeSet::new(n);
        for side in [&s_side, &t_side] {
            let block: Vec<usize> = side.iter().chain(&cut).copied().collect();
            for (a, &u) in block.iter().enumerate() {
                for &v in &block[a + 1..] {
                    if !g.contains(u, v) && (drop == 0.0 || !rng.gen_bool(drop)) {
                        g.insert(u, v).expect("distinct vertices");
                    }
                }
            }
        }
        g
    };

    let verify = n <= PLANTED_VERIFY_LIMIT;
    let mut graph = None;
    for attempt in 0..PLANTED_ATTEMPTS {
        let mut sub = seed::rng(seed::derive(seed, "planted", attempt));
        let g = build(PLANTED_DROP_PROBABILITY, &mut sub);
        if !verify || oracle::vertex_connectivity(&g)? == k - 1 {
            graph = Some(g);
            break;
        }
    }
    // Full cliques always have connectivity exactly |X|.
    let graph = match graph {
        Some(g) => g,
        None => build(0.0, &mut rng),
    };
    if verify {
        debug_assert_eq!(oracle::vertex_connectivity(&graph)?, k - 1);
    }
    Ok(PlantedCut { graph, cut: cut.into_iter().collect(), s_side, t_side })
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> EdgeSet {
    let mut rng = seed::rng(seed);
    let mut g = EdgeSet::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.insert(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

/// Uniform graph with exactly `m` edges.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<EdgeSet> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    if m > pairs.len() {
        return Err(Error::BadParam(format!("{m} edges do not fit on {n} vertices")));
    }
    pairs.shuffle(&mut seed::rng(seed));
    EdgeSet::from_edges(n, pairs.into_iter().take(m))
}

/// Legal dynamic stream whose final multigraph keeps each pair with probability
/// `density` (one or two copies). A `delete_fraction` share of extra inserted copies
/// is deleted again, each deletion placed after its insertion.
pub fn gen_random_stream(n: usize, density: f64, delete_fraction: f64, seed: u64) -> Result<Vec<UpdateEvent>> {
    for (name, f) in [("density", density), ("delete fraction", delete_fraction)] {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::BadParam(format!("{name} must lie in [0, 1], got {f}")));
        }
    }
    let mut rng = seed::rng(seed);
    let mut copies = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                let m = rng.gen_range(1..=2);
                copies.extend(std::iter::repeat_n((u, v), m));
            }
        }
    }
    copies.shuffle(&mut rng);
    let deleted = (delete_fraction * copies.len() as f64).round() as usize;
    let doomed: BTreeSet<usize> = rand::seq::index::sample(&mut rng, copies.len(), deleted).into_iter().collect();

    let mut events = Vec::with_capacity(copies.len() + deleted);
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for (pos, &(u, v)) in copies.iter().enumerate() {
        events.push(UpdateEvent::insert(u, v)?);
        if doomed.contains(&pos) {
            pending.push((u, v));
        }
        if !pending.is_empty() && rng.gen_bool(0.5) {
            let (a, b) = pending.swap_remove(rng.gen_range(0..pending.len()));
            events.push(UpdateEvent::delete(a, b)?);
        }
    }
    pending.shuffle(&mut rng);
    for (a, b) in pending {
        events.push(UpdateEvent::delete(a, b)?);
    }
    Ok(events)
}

/// Random reordering of `events` that keeps every prefix legal. Events that would go
/// negative are deferred until their pair has been inserted.
pub fn shuffle_legally(n: usize, events: &[UpdateEvent], seed: u64) -> Result<Vec<UpdateEvent>> {
    let mut shuffled = events.to_vec();
    shuffled.shuffle(&mut seed::rng(seed));
    let mut g = MultiGraph::new(n);
    let mut out = Vec::with_capacity(events.len());
    let mut deferred: Vec<UpdateEvent> = Vec::new();
    for e in shuffled {
        if g.apply_update(&e).is_err() {
            deferred.push(e);
            continue;
        }
        out.push(e);
        let mut i = 0;
        while i < deferred.len() {
            if g.apply_update(&deferred[i]).is_ok() {
                out.push(deferred.remove(i));
                i = 0;
            } else {
                i += 1;
            }
        }
    }
    match deferred.first() {
        None => Ok(out),
        Some(e) => Err(Error::NegativeMultiplicity { u: e.pair().0, v: e.pair().1 }),
    }
}

/// Inserts `pairs` insert/delete pairs of random edges at random positions, each
/// deletion after its insertion.
pub fn add_cancel_pairs(n: usize, events: &[UpdateEvent], pairs: usize, seed: u64) -> Result<Vec<UpdateEvent>> {
    if n < 2 {
        return Err(Error::TooSmall("cancel pairs need two vertices".into()));
    }
    let mut rng = seed::rng(seed);
    let mut out = events.to_vec();
    for _ in 0..pairs {
        let u = rng.gen_range(0..n);
        let v = (u + rng.gen_range(1..n)) % n;
        let e = UpdateEvent::insert(u, v)?;
        let at = rng.gen_range(0..=out.len());
        out.insert(at, e);
        let later = rng.gen_range(at + 1..=out.len());
        out.insert(later, e.inverse());
    }
    Ok(out)
}

fn parse_args(name: &str) -> Option<(&str, Vec<usize>)> {
    let name = name.trim();
    match name.find('(') {
        None => Some((name, Vec::new())),
        Some(open) => {
            let inner = name[open + 1..].strip_suffix(')')?;
            let args = inner
                .split(',')
                .map(|a| a.trim().parse::<usize>().ok())
                .collect::<Option<Vec<_>>>()?;
            Some((name[..open].trim(), args))
        }
    }
}

/// Named graphs: `complete(n)`, `cycle(n)`, `path(n)`, `star(n)` (centre 0), `petersen`,
/// `hypercube(d)`, `complete_bipartite(a,b)` (sides `0..a` and `a..a+b`).
pub fn named(name: &str) -> Result<EdgeSet> {
    let unknown = || Error::UnknownName(name.to_string());
    let (base, args) = parse_args(name).ok_or_else(unknown)?;
    let edges: Vec<(usize, usize)>;
    let n;
    match (base, args.as_slice()) {
        ("complete", &[m]) => {
            n = m;
            edges = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
        }
        ("cycle", &[m]) if m >= 3 => {
            n = m;
            edges = (0..m).map(|u| (u, (u + 1) % m)).collect();
        }
        ("path", &[m]) if m >= 1 => {
            n = m;
            edges = (1..m).map(|u| (u - 1, u)).collect();
        }
        ("star", &[m]) if m >= 1 => {
            n = m;
            edges = (1..m).map(|u| (0, u)).collect();
        }
        ("petersen", &[]) => {
            n = 10;
            edges = (0..5)
                .flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)])
                .collect();
        }
        ("hypercube", &[d]) if d < 20 => {
            n = 1 << d;
            edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v).collect();
        }
        ("complete_bipartite", &[a, b]) => {
            n = a + b;
            edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        }
        _ => return Err(unknown()),
    }
    EdgeSet::from_edges(n, edges)
}
