use serde::Serialize;

/// Result of one `certify` run.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub mode: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub scale_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_verdict: Option<bool>,
    pub h_edges: usize,
    #[serde(rename = "sum_Vi")]
    pub sum_vi: usize,
    pub forest_failures: usize,
    pub measured_sketch_bytes: u64,
    pub wall_time_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_connected: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct SweepPoint {
    #[serde(rename = "C")]
    pub scale_c: f64,
    pub r: usize,
    pub match_rate: f64,
    pub matches: usize,
    pub h_mean: f64,
    pub h_min: usize,
    pub h_max: usize,
    pub forest_failures: usize,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub trials: usize,
    pub seed: u64,
    pub oracle_verdict: bool,
    pub results: Vec<SweepPoint>,
}
