//! Stream events, the materialized multigraph and simple edge sets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Delta {
    Insert,
    Delete,
}

impl Delta {
    pub fn as_i64(self) -> i64 {
        match self {
            Delta::Insert => 1,
            Delta::Delete => -1,
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Delta::Insert => Delta::Delete,
            Delta::Delete => Delta::Insert,
        }
    }
}

/// One tuple `(i, j, ±1)` of a dynamic graph stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UpdateEvent {
    pub i: usize,
    pub j: usize,
    pub delta: Delta,
}

impl UpdateEvent {
    pub fn new(i: usize, j: usize, delta: Delta) -> Result<Self> {
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(Self { i, j, delta })
    }

    pub fn insert(i: usize, j: usize) -> Result<Self> {
        Self::new(i, j, Delta::Insert)
    }

    pub fn delete(i: usize, j: usize) -> Result<Self> {
        Self::new(i, j, Delta::Delete)
    }

    pub fn inverse(self) -> Self {
        Self { delta: self.delta.inverse(), ..self }
    }

    /// Endpoints as `(min, max)`.
    pub fn pair(&self) -> (usize, usize) {
        ordered(self.i, self.j)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if self.i == self.j {
            return Err(Error::SelfLoop(self.i));
        }
        for v in [self.i, self.j] {
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
        }
        Ok(())
    }
}

#[inline]
pub fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Multigraph defined by a dynamic stream: pair multiplicities, zero pairs absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    n: usize,
    mult: BTreeMap<(usize, usize), u64>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        Self { n, mult: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.mult.get(&ordered(u, v)).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.mult.iter().map(|(&p, &m)| (p, m))
    }

    /// Number of distinct vertex pairs with positive multiplicity.
    pub fn pair_count(&self) -> usize {
        self.mult.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.mult.values().sum()
    }

    /// Applies one event. On error the graph is left unchanged.
    pub fn apply_update(&mut self, e: &UpdateEvent) -> Result<()> {
        e.check(self.n)?;
        let key = e.pair();
        match e.delta {
            Delta::Insert => *self.mult.entry(key).or_insert(0) += 1,
            Delta::Delete => match self.mult.get_mut(&key) {
                Some(m) if *m > 1 => *m -= 1,
                Some(_) => {
                    self.mult.remove(&key);
                }
                None => return Err(Error::NegativeMultiplicity { u: key.0, v: key.1 }),
            },
        }
        Ok(())
    }

    pub fn replay_stream<'a, I>(n: usize, events: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a UpdateEvent>,
    {
        let mut g = Self::new(n);
        for e in events {
            g.apply_update(e)?;
        }
        Ok(g)
    }

    /// The simple graph underlying the multigraph.
    pub fn support(&self) -> EdgeSet {
        EdgeSet { n: self.n, edges: self.mult.keys().copied().collect() }
    }
}

/// Simple undirected graph on vertices `0..n`, stored as ordered pairs `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.insert(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Adds `{u, v}`; returns whether it was new.
    pub fn insert(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::InvalidVertex { vertex: w, n: self.n });
            }
        }
        Ok(self.edges.insert(ordered(u, v)))
    }

    pub fn remove(&mut self, u: usize, v: usize) -> bool {
        self.edges.remove(&ordered(u, v))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&ordered(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn extend(&mut self, other: &EdgeSet) {
        debug_assert_eq!(self.n, other.n);
        self.edges.extend(other.edges.iter().copied());
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Subgraph induced on `keep`, with vertices relabelled `0..keep.len()` in the given order.
    pub fn induced_relabelled(&self, keep: &[usize]) -> EdgeSet {
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                let (a, b) = (index[u], index[v]);
                (a != usize::MAX && b != usize::MAX).then(|| ordered(a, b))
            })
            .collect();
        EdgeSet { n: keep.len(), edges }
    }

    /// Component label per vertex, labels are the smallest vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = crate::union_find::UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.canonical_labels()
    }

    pub fn to_stream(&self) -> Vec<UpdateEvent> {
        self.edges
            .iter()
            .map(|&(u, v)| UpdateEvent { i: u, j: v, delta: Delta::Insert })
            .collect()
    }
}
