//! Deterministic certificate for insertion-only streams: keep an edge exactly when
//! the retained graph has fewer than `k` vertex-disjoint paths between its endpoints.
//! The retained set is k-connected iff the streamed graph is, and never exceeds
//! `2kn` edges.

use crate::error::{Error, Result};
use crate::graph::{Delta, EdgeSet, UpdateEvent};
use crate::oracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionCertifier {
    k: usize,
    kept: EdgeSet,
    offered: u64,
}

impl InsertionCertifier {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadN);
        }
        if k == 0 {
            return Err(Error::BadParam("k must be at least 1".into()));
        }
        Ok(Self { k, kept: EdgeSet::new(n), offered: 0 })
    }

    pub fn n(&self) -> usize {
        self.kept.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn retained(&self) -> &EdgeSet {
        &self.kept
    }

    pub fn offered(&self) -> u64 {
        self.offered
    }

    /// Offers edge `{u, v}`; returns whether it was kept. Repeats of a kept edge are dropped.
    pub fn offer(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= self.n() {
                return Err(Error::InvalidVertex { vertex: w, n: self.n() });
            }
        }
        self.offered += 1;
        if self.kept.contains(u, v) {
            return Ok(false);
        }
        // Paths are counted in the retained graph before the new edge is added.
        let paths = oracle::disjoint_paths_capped(&self.kept, u, v, self.k)?;
        if paths >= self.k {
            return Ok(false);
        }
        self.kept.insert(u, v)?;
        assert!(
            self.kept.len() <= 2 * self.k * self.n(),
            "retained {} edges, more than 2kn = {}",
            self.kept.len(),
            2 * self.k * self.n()
        );
        Ok(true)
    }

    /// Offers a stream event; deletions are rejected.
    pub fn offer_event(&mut self, e: &UpdateEvent) -> Result<bool> {
        if e.delta == Delta::Delete {
            return Err(Error::InsertionOnlyViolation { u: e.i, v: e.j });
        }
        self.offer(e.i, e.j)
    }

    pub fn finalize(self) -> EdgeSet {
        self.kept
    }
}

/// Runs the certifier over an insertion-only stream.
pub fn certify_insertions(n: usize, k: usize, events: &[UpdateEvent]) -> Result<EdgeSet> {
    let mut c = InsertionCertifier::new(n, k)?;
    for e in events {
        c.offer_event(e)?;
    }
    Ok(c.finalize())
}
