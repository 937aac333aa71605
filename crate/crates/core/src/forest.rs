//! Spanning forests of an induced subgraph recovered from per-vertex sketches.
//!
//! Every member vertex keeps one [`L0Sketch`] per Borůvka round over the signed
//! incidence vector of its edges: edge `{u, v}` with `u < v` adds `+m` at
//! `pair_index(u, v)` to `u` and `−m` to `v`. Summing a component's sketches
//! cancels its internal edges, leaving exactly the edges that leave it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Delta, EdgeSet, UpdateEvent};
use crate::seed::{derive, mix64, unit_f64};
use crate::sketch::{ceil_log2, L0Sketch, SampleOutcome};
use crate::union_find::UnionFind;

/// Position of `{u, v}`, `u < v`, in the row-major upper triangle of an `n × n` matrix.
pub fn pair_index(n: usize, u: usize, v: usize) -> u64 {
    let (u, v) = crate::graph::ordered(u, v);
    debug_assert!(v < n && u != v);
    let (n, u, v) = (n as u64, u as u64, v as u64);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(n: usize, mut index: u64) -> Option<(usize, usize)> {
    for u in 0..n.saturating_sub(1) {
        let row = (n - u - 1) as u64;
        if index < row {
            return Some((u, u + 1 + index as usize));
        }
        index -= row;
    }
    None
}

pub fn pair_universe(n: usize) -> u64 {
    (n as u64 * n.saturating_sub(1) as u64 / 2).max(1)
}

/// Borůvka rounds needed for `n` vertices: `ceil(log2 n) + 1`.
pub fn round_count(n: usize) -> usize {
    ceil_log2(n.max(1) as u64) as usize + 1
}

/// How a bank decides whether a vertex belongs to its subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Membership {
    /// One bit per vertex.
    Bitset(Vec<u64>),
    /// Recomputed from a seed: `v` is a member iff its hash falls below `rate`.
    Hashed { seed: u64, rate_bits: u64 },
}

impl Membership {
    pub fn bitset(n: usize, members: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &v in members {
            words[v / 64] |= 1 << (v % 64);
        }
        Membership::Bitset(words)
    }

    pub fn hashed(seed: u64, rate: f64) -> Self {
        Membership::Hashed { seed, rate_bits: rate.to_bits() }
    }

    /// Bernoulli(`rate`) draw for `vertex` under `seed`.
    pub fn hashed_draw(seed: u64, rate: f64, vertex: usize) -> bool {
        rate >= 1.0 || unit_f64(mix64(seed ^ mix64(vertex as u64))) < rate
    }

    pub fn contains(&self, v: usize) -> bool {
        match self {
            Membership::Bitset(words) => words.get(v / 64).is_some_and(|w| w & (1 << (v % 64)) != 0),
            Membership::Hashed { seed, rate_bits } => Self::hashed_draw(*seed, f64::from_bits(*rate_bits), v),
        }
    }

    pub fn storage_bytes(&self) -> usize {
        match self {
            Membership::Bitset(words) => words.len() * 8,
            Membership::Hashed { .. } => 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForestSketchBank {
    n: usize,
    members: Vec<usize>,
    membership: Membership,
    /// `rounds[ρ][i]` is the round-ρ sketch of `members[i]`.
    rounds: Vec<Vec<L0Sketch>>,
    stored_cells: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestExtraction {
    pub forest: EdgeSet,
    /// Component samples that returned `Fail`, summed over rounds.
    pub failures: usize,
    pub rounds_used: usize,
}

impl ForestExtraction {
    pub fn failed(&self) -> bool {
        self.failures > 0
    }
}

impl ForestSketchBank {
    pub fn new(n: usize, members: &[usize], delta: f64, seed: u64) -> Result<Self> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidVertex { vertex: v, n });
        }
        let membership = Membership::bitset(n, &sorted);
        Self::with_membership(n, sorted, membership, delta, seed)
    }

    /// Bank whose subset is `{v : Membership::hashed_draw(subset_seed, rate, v)}`.
    pub fn new_hashed(n: usize, subset_seed: u64, rate: f64, delta: f64, seed: u64) -> Result<Self> {
        let members = (0..n).filter(|&v| Membership::hashed_draw(subset_seed, rate, v)).collect();
        Self::with_membership(n, members, Membership::hashed(subset_seed, rate), delta, seed)
    }

    fn with_membership(n: usize, members: Vec<usize>, membership: Membership, delta: f64, seed: u64) -> Result<Self> {
        let universe = pair_universe(n);
        let rounds = (0..round_count(n))
            .map(|rho| {
                let sketch = L0Sketch::new(universe, delta, derive(seed, "round", rho as u64))?;
                Ok(vec![sketch; members.len()])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, members, membership, rounds, stored_cells: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn rounds(&self) -> usize {
        self.rounds.len()
    }

    pub fn membership(&self) -> &Membership {
        &self.membership
    }

    fn local(&self, v: usize) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    /// Round-`rho` sketch of member `v`.
    pub fn sketch(&self, rho: usize, v: usize) -> Option<&L0Sketch> {
        self.local(v).map(|i| &self.rounds[rho][i])
    }

    /// Applies an event if both endpoints are members; otherwise does nothing.
    pub fn update(&mut self, e: &UpdateEvent) -> Result<()> {
        e.check(self.n)?;
        if !(self.membership.contains(e.i) && self.membership.contains(e.j)) {
            return Ok(());
        }
        let (u, v) = e.pair();
        let (lu, lv) = match (self.local(u), self.local(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(()),
        };
        let index = pair_index(self.n, u, v);
        let m = match e.delta {
            Delta::Insert => 1,
            Delta::Delete => -1,
        };
        for battery in &mut self.rounds {
            let power = battery[lu].power(index);
            for (local, signed) in [(lu, m), (lv, -m)] {
                let sketch = &mut battery[local];
                let before = sketch.stored_cells();
                sketch.update_with_power(index, signed, power);
                self.stored_cells = self.stored_cells + sketch.stored_cells() - before;
            }
        }
        Ok(())
    }

    /// Bytes of all sketches in their serialized form.
    pub fn sketch_bytes(&self) -> u64 {
        let per_sketch_fixed = self
            .rounds
            .first()
            .and_then(|b| b.first())
            .map_or(0, |s| s.encoded_len() - 24 * s.stored_cells());
        let sketches = self.rounds.len() * self.members.len();
        (sketches * per_sketch_fixed + 24 * self.stored_cells) as u64
    }

    pub fn membership_bytes(&self) -> u64 {
        self.membership.storage_bytes() as u64
    }

    /// Borůvka over fresh sketch batteries per round.
    pub fn extract_forest(&self) -> ForestExtraction {
        let size = self.members.len();
        let mut forest = EdgeSet::new(self.n);
        let mut uf = UnionFind::new(size);
        let mut finished = vec![false; size];
        let mut failures = 0;
        let mut rounds_used = 0;

        for battery in &self.rounds {
            let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for local in 0..size {
                let root = uf.find(local);
                if !finished[root] {
                    components.entry(root).or_default().push(local);
                }
            }
            if components.is_empty() {
                break;
            }
            rounds_used += 1;

            let mut picked = Vec::new();
            for (&root, locals) in &components {
                let mut merged = battery[locals[0]].clone();
                for &l in &locals[1..] {
                    merged.merge_from(&battery[l]).expect("round batteries share seeds");
                }
                match merged.sample() {
                    SampleOutcome::Empty => finished[root] = true,
                    SampleOutcome::Fail => failures += 1,
                    SampleOutcome::NonZeroIndex { index, .. } => {
                        let Some((a, b)) = pair_from_index(self.n, index) else { continue };
                        let (Some(la), Some(lb)) = (self.local(a), self.local(b)) else { continue };
                        // Only edges leaving this component are meaningful.
                        if (uf.find(la) == root) != (uf.find(lb) == root) {
                            picked.push((a, b, la, lb));
                        }
                    }
                }
            }
            if picked.is_empty() && components.keys().all(|&r| finished[r]) {
                break;
            }
            for (a, b, la, lb) in picked {
                let (ra, rb) = (uf.find(la), uf.find(lb));
                if uf.union(la, lb) {
                    let root = uf.find(la);
                    finished[root] = finished[ra] && finished[rb];
                    forest.insert(a, b).expect("members are valid vertices");
                }
            }
        }
        ForestExtraction { forest, failures, rounds_used }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ins(i: usize, j: usize) -> UpdateEvent {
        UpdateEvent::insert(i, j).unwrap()
    }

    #[test]
    fn pair_index_is_a_bijection() {
        for n in [2usize, 3, 7, 16] {
            let mut next = 0;
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(pair_index(n, u, v), next);
                    assert_eq!(pair_index(n, v, u), next);
                    assert_eq!(pair_from_index(n, next), Some((u, v)));
                    next += 1;
                }
            }
            assert_eq!(next, pair_universe(n));
            assert_eq!(pair_from_index(n, next), None);
        }
    }

    #[test]
    fn round_counts() {
        assert_eq!(round_count(64), 7);
        assert_eq!(round_count(65), 8);
        assert_eq!(round_count(1), 1);
        assert_eq!(round_count(2), 2);
    }

    #[test]
    fn empty_and_singleton_banks() {
        let bank = ForestSketchBank::new(10, &[], 0.01, 1).unwrap();
        assert!(bank.extract_forest().forest.is_empty());

        let mut bank = ForestSketchBank::new(10, &[3], 0.01, 1).unwrap();
        for e in [ins(3, 4), ins(3, 5), ins(1, 2)] {
            bank.update(&e).unwrap();
        }
        let out = bank.extract_forest();
        assert!(out.forest.is_empty());
        assert!(!out.failed());
    }

    #[test]
    fn dimensions_for_quarter_subset() {
        let n = 64;
        let members: Vec<usize> = (0..16).collect();
        let bank = ForestSketchBank::new(n, &members, (n as f64).powi(-4), 5).unwrap();
        assert_eq!(bank.rounds(), 7);
        assert_eq!(bank.sketch(0, 3).unwrap().universe(), 2016);
    }

    #[test]
    fn non_member_edges_are_ignored() {
        let mut bank = ForestSketchBank::new(6, &[0, 1, 2], 0.01, 9).unwrap();
        let initial = bank.clone();
        bank.update(&ins(1, 4)).unwrap();
        assert_eq!(bank, initial);
        bank.update(&ins(1, 2)).unwrap();
        bank.update(&ins(1, 2).inverse()).unwrap();
        assert_eq!(bank, initial);
    }

    #[test]
    fn multiplicity_accumulates() {
        let mut bank = ForestSketchBank::new(6, &[0, 1, 2], 0.01, 9).unwrap();
        bank.update(&ins(0, 2)).unwrap();
        bank.update(&ins(0, 2)).unwrap();
        let mut expected = L0Sketch::new(pair_universe(6), 0.01, derive(9, "round", 0)).unwrap();
        expected.update(pair_index(6, 0, 2), 2).unwrap();
        assert_eq!(bank.sketch(0, 0).unwrap(), &expected);
        assert_eq!(
            bank.sketch(0, 0).unwrap().sample(),
            SampleOutcome::NonZeroIndex { index: pair_index(6, 0, 2), sign: 1 }
        );
        assert_eq!(
            bank.sketch(0, 2).unwrap().sample(),
            SampleOutcome::NonZeroIndex { index: pair_index(6, 0, 2), sign: -1 }
        );
    }

    #[test]
    fn triangle_gives_spanning_tree() {
        let mut bank = ForestSketchBank::new(5, &[0, 2, 4], 0.01, 3).unwrap();
        for e in [ins(0, 2), ins(2, 4), ins(0, 4), ins(0, 1)] {
            bank.update(&e).unwrap();
        }
        let out = bank.extract_forest();
        assert_eq!(out.forest.len(), 2);
        let tri = EdgeSet::from_edges(5, [(0, 2), (2, 4), (0, 4)]).unwrap();
        assert!(out.forest.is_subset(&tri));
        let labels = out.forest.components();
        assert!(labels[0] == labels[2] && labels[2] == labels[4]);
    }

    #[test]
    fn components_are_kept_apart() {
        let mut bank = ForestSketchBank::new(3, &[0, 1, 2], 0.01, 3).unwrap();
        bank.update(&ins(0, 1)).unwrap();
        let out = bank.extract_forest();
        assert_eq!(out.forest.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn hashed_membership_matches_its_member_list() {
        let bank = ForestSketchBank::new_hashed(200, 77, 0.25, 0.1, 1).unwrap();
        for v in 0..200 {
            assert_eq!(bank.membership().contains(v), bank.members().binary_search(&v).is_ok());
        }
        assert!(bank.members().len() > 20 && bank.members().len() < 80);
    }

    #[test]
    fn byte_accounting_tracks_serialized_size() {
        let mut bank = ForestSketchBank::new(8, &[0, 1, 2, 3, 5], 0.05, 2).unwrap();
        for e in [ins(0, 1), ins(1, 2), ins(2, 3), ins(0, 5), ins(3, 5), ins(1, 5)] {
            bank.update(&e).unwrap();
        }
        bank.update(&ins(1, 5).inverse()).unwrap();
        let direct: usize = (0..bank.rounds())
            .flat_map(|r| bank.members().iter().map(move |&v| (r, v)))
            .map(|(r, v)| bank.sketch(r, v).unwrap().to_bytes().len())
            .sum();
        assert_eq!(bank.sketch_bytes(), direct as u64);
    }
}
