//! Vertex-connectivity certificates for graphs given as dynamic edge streams.
//!
//! The certificate is the union of spanning forests over random vertex subsets
//! (each vertex kept with probability `1/k`); it is k-vertex-connected exactly when
//! the input graph is, with high probability. In a dynamic stream each forest is
//! recovered from ℓ0-sampling sketches of signed vertex incidence vectors.
//!
//! Modules:
//! - [`graph`]: stream events, multigraphs and simple edge sets
//! - [`oracle`]: exact connectivity by max-flow on the vertex-split graph
//! - [`sketch`]: the ℓ0 sampler
//! - [`forest`]: sketch-based spanning forests of induced subgraphs
//! - [`certificate`]: offline and streaming certificate construction
//! - [`insertion`]: the deterministic insertion-only certifier
//! - [`instances`]: seeded generators, including set-disjointness hard instances
//! - [`stream_file`]: the text stream format

pub mod certificate;
pub mod error;
pub mod forest;
pub mod graph;
pub mod insertion;
pub mod instances;
pub mod oracle;
pub mod seed;
pub mod sketch;
pub mod stream_file;
pub mod union_find;

pub use certificate::{
    build_certificate_offline, certify_stream, decide_k_connected, preserved_st_connectivity, sample_subsets,
    CertParams, Certificate, CertificateReport, ForestRecord, StreamCertifier,
};
pub use error::{Error, Result};
pub use forest::{ForestExtraction, ForestSketchBank};
pub use graph::{Delta, EdgeSet, MultiGraph, UpdateEvent};
pub use insertion::{certify_insertions, InsertionCertifier};
pub use sketch::{L0Sketch, SampleOutcome};
pub use stream_file::StreamFile;
