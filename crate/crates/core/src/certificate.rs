//! k-vertex-connectivity certificates from spanning forests of random induced subgraphs.
//!
//! Each of `r = ceil(C·k²·ln n)` forests is taken over a vertex subset that keeps
//! every vertex independently with probability `1/k`; the certificate is the union
//! of the forests. The offline builder computes the forests exactly, the streaming
//! builder recovers them from linear sketches after one pass over the updates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forest::{round_count, ForestSketchBank, Membership};
use crate::graph::{EdgeSet, MultiGraph, UpdateEvent};
use crate::oracle;
use crate::seed::derive;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertParams {
    pub n: usize,
    pub k: usize,
    /// Multiplier `C` in `r = ceil(C·k²·ln n)`.
    pub scale_c: f64,
    pub seed: u64,
    /// Failure probability of each sketch.
    pub delta: f64,
    /// For `k = 1` every subset is the whole vertex set, so `r` is cut to `ceil(log2 n) + 1`.
    pub collapse_k1: bool,
    /// Recompute subset membership from seeds instead of storing bitsets.
    pub hashed_membership: bool,
    /// Include membership storage in the measured space.
    pub count_subset_bytes: bool,
    pub space_cap_bytes: Option<u64>,
    /// Track multiplicities to reject illegal streams. Not part of the sketch space.
    pub validate_stream: bool,
}

impl CertParams {
    pub const TEST_SCALE: f64 = 20.0;
    pub const PAPER_SCALE: f64 = 200.0;

    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadN);
        }
        if k == 0 {
            return Err(Error::BadParam("k must be at least 1".into()));
        }
        Ok(Self {
            n,
            k,
            scale_c: Self::TEST_SCALE,
            seed: 0,
            delta: Self::default_delta(n),
            collapse_k1: true,
            hashed_membership: false,
            count_subset_bytes: true,
            space_cap_bytes: None,
            validate_stream: true,
        })
    }

    /// `n^−4`, clamped into (0, 1) for tiny graphs.
    pub fn default_delta(n: usize) -> f64 {
        if n < 2 {
            0.5
        } else {
            (n as f64).powi(-4)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_scale(mut self, scale_c: f64) -> Self {
        self.scale_c = scale_c;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn paper_mode(self) -> Self {
        self.with_scale(Self::PAPER_SCALE)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::BadN);
        }
        if self.k == 0 {
            return Err(Error::BadParam("k must be at least 1".into()));
        }
        if !(self.scale_c.is_finite() && self.scale_c > 0.0) {
            return Err(Error::BadParam(format!("scale C must be positive, got {}", self.scale_c)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::BadDelta(self.delta));
        }
        Ok(())
    }

    pub fn sampling_rate(&self) -> f64 {
        1.0 / self.k as f64
    }

    /// Number of sampled subsets `r`.
    pub fn forest_count(&self) -> usize {
        let k = self.k as f64;
        let r = (self.scale_c * k * k * (self.n as f64).ln()).ceil().max(1.0) as usize;
        if self.k == 1 && self.collapse_k1 {
            r.min(round_count(self.n))
        } else {
            r
        }
    }

    fn subset_seed(&self, i: usize) -> u64 {
        derive(self.seed, "subset", i as u64)
    }

    fn bank_seed(&self, i: usize) -> u64 {
        derive(self.seed, "bank", i as u64)
    }
}

/// The `r` vertex subsets, each vertex kept independently with probability `1/k`.
pub fn sample_subsets(p: &CertParams) -> Vec<Vec<usize>> {
    let rate = p.sampling_rate();
    (0..p.forest_count())
        .map(|i| {
            let seed = p.subset_seed(i);
            (0..p.n).filter(|&v| Membership::hashed_draw(seed, rate, v)).collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestRecord {
    /// `|V_i|`.
    pub size: usize,
    pub failures: usize,
    pub seed: u64,
    pub tree: EdgeSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub params: CertParams,
    pub h: EdgeSet,
    pub forests: Vec<ForestRecord>,
    /// Zero for offline certificates.
    pub measured_sketch_bytes: u64,
}

/// JSON form of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "C")]
    pub scale_c: f64,
    pub r: usize,
    pub seed: u64,
    pub edges: Vec<[usize; 2]>,
    pub forest_failures: usize,
    #[serde(rename = "sum_Vi")]
    pub sum_vi: usize,
    pub measured_sketch_bytes: u64,
}

impl Certificate {
    fn from_forests(params: CertParams, forests: Vec<ForestRecord>, measured_sketch_bytes: u64) -> Self {
        let mut h = EdgeSet::new(params.n);
        for f in &forests {
            h.extend(&f.tree);
        }
        Self { params, h, forests, measured_sketch_bytes }
    }

    pub fn r(&self) -> usize {
        self.forests.len()
    }

    pub fn sum_vi(&self) -> usize {
        self.forests.iter().map(|f| f.size).sum()
    }

    /// Forests whose extraction saw at least one sampler failure.
    pub fn forest_failures(&self) -> usize {
        self.forests.iter().filter(|f| f.failures > 0).count()
    }

    pub fn report(&self) -> CertificateReport {
        CertificateReport {
            n: self.params.n,
            k: self.params.k,
            scale_c: self.params.scale_c,
            r: self.r(),
            seed: self.params.seed,
            edges: self.h.edges().map(|(u, v)| [u, v]).collect(),
            forest_failures: self.forest_failures(),
            sum_vi: self.sum_vi(),
            measured_sketch_bytes: self.measured_sketch_bytes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.report()).expect("report serializes")
    }
}

fn spanning_forest(g: &EdgeSet, members: &[usize]) -> EdgeSet {
    let mut inside = vec![false; g.n()];
    for &v in members {
        inside[v] = true;
    }
    let mut uf = UnionFind::new(g.n());
    let mut tree = EdgeSet::new(g.n());
    for (u, v) in g.edges() {
        if inside[u] && inside[v] && uf.union(u, v) {
            tree.insert(u, v).expect("edge of g");
        }
    }
    tree
}

/// Certificate with exact spanning forests of each sampled induced subgraph.
pub fn build_certificate_offline(g: &EdgeSet, p: &CertParams) -> Result<Certificate> {
    p.validate()?;
    if g.n() != p.n {
        return Err(Error::BadParam(format!("graph has {} vertices, parameters say {}", g.n(), p.n)));
    }
    let forests = sample_subsets(p)
        .into_par_iter()
        .enumerate()
        .map(|(i, members)| ForestRecord {
            size: members.len(),
            failures: 0,
            seed: p.subset_seed(i),
            tree: spanning_forest(g, &members),
        })
        .collect();
    Ok(Certificate::from_forests(p.clone(), forests, 0))
}

/// One-pass certificate builder over a dynamic stream.
#[derive(Debug, Clone)]
pub struct StreamCertifier {
    params: CertParams,
    banks: Vec<ForestSketchBank>,
    validator: Option<MultiGraph>,
}

impl StreamCertifier {
    pub fn new(params: CertParams) -> Result<Self> {
        params.validate()?;
        let rate = params.sampling_rate();
        let banks = if params.hashed_membership {
            (0..params.forest_count())
                .into_par_iter()
                .map(|i| {
                    ForestSketchBank::new_hashed(
                        params.n,
                        params.subset_seed(i),
                        rate,
                        params.delta,
                        params.bank_seed(i),
                    )
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            sample_subsets(&params)
                .into_par_iter()
                .enumerate()
                .map(|(i, members)| ForestSketchBank::new(params.n, &members, params.delta, params.bank_seed(i)))
                .collect::<Result<Vec<_>>>()?
        };
        let validator = params.validate_stream.then(|| MultiGraph::new(params.n));
        let certifier = Self { params, banks, validator };
        certifier.check_space()?;
        Ok(certifier)
    }

    pub fn params(&self) -> &CertParams {
        &self.params
    }

    pub fn banks(&self) -> &[ForestSketchBank] {
        &self.banks
    }

    pub fn measured_bytes(&self) -> u64 {
        self.banks
            .iter()
            .map(|b| b.sketch_bytes() + if self.params.count_subset_bytes { b.membership_bytes() } else { 0 })
            .sum()
    }

    fn check_space(&self) -> Result<()> {
        if let Some(cap) = self.params.space_cap_bytes {
            let used = self.measured_bytes();
            if used > cap {
                return Err(Error::SpaceExceeded { used, cap });
            }
        }
        Ok(())
    }

    fn admit(&mut self, e: &UpdateEvent) -> Result<()> {
        e.check(self.params.n)?;
        if let Some(g) = &mut self.validator {
            g.apply_update(e)?;
        }
        Ok(())
    }

    pub fn update(&mut self, e: &UpdateEvent) -> Result<()> {
        self.admit(e)?;
        for bank in &mut self.banks {
            bank.update(e)?;
        }
        self.check_space()
    }

    /// Applies a batch with banks updated in parallel. The space cap is checked once
    /// the whole batch is in.
    pub fn update_batch(&mut self, events: &[UpdateEvent]) -> Result<()> {
        for e in events {
            self.admit(e)?;
        }
        self.banks
            .par_iter_mut()
            .try_for_each(|bank| events.iter().try_for_each(|e| bank.update(e)))?;
        self.check_space()
    }

    pub fn finalize(self) -> Certificate {
        let measured = self.measured_bytes();
        let forests = self
            .banks
            .par_iter()
            .enumerate()
            .map(|(i, bank)| {
                let out = bank.extract_forest();
                ForestRecord {
                    size: bank.members().len(),
                    failures: out.failures,
                    seed: self.params.subset_seed(i),
                    tree: out.forest,
                }
            })
            .collect();
        Certificate::from_forests(self.params, forests, measured)
    }
}

/// Runs the streaming builder over a whole event sequence.
pub fn certify_stream(events: &[UpdateEvent], p: &CertParams) -> Result<Certificate> {
    let mut c = StreamCertifier::new(p.clone())?;
    c.update_batch(events)?;
    Ok(c.finalize())
}

/// Whether the certificate is k-vertex-connected.
pub fn decide_k_connected(cert: &Certificate) -> bool {
    oracle::is_k_connected(&cert.h, cert.params.k).unwrap_or(false)
}

/// `(min(k, paths in g), min(k, paths in H))` between `s` and `t`.
pub fn preserved_st_connectivity(cert: &Certificate, g: &EdgeSet, s: usize, t: usize) -> Result<(usize, usize)> {
    let k = cert.params.k;
    Ok((
        oracle::disjoint_paths_capped(g, s, t, k)?,
        oracle::disjoint_paths_capped(&cert.h, s, t, k)?,
    ))
}
