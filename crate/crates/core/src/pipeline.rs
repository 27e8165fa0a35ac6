//! Sample → density certificate → Rips persistence → homology check.

use crate::bounds::{sample_size, BoundQuery};
use crate::cloud::PointCloud;
use crate::density::{certify_density, DensityCertificate};
use crate::error::{domain, Result, StageContext};
use crate::manifold::{ManifoldKind, ManifoldSpec};
use crate::persistence::{rips_barcode, Barcode, Engine, RipsConfig};

/// Rank of H1 of the manifold.
pub fn expected_h1(kind: ManifoldKind) -> usize {
    match kind {
        ManifoldKind::Semicircle => 0,
        ManifoldKind::Cylinder => 1,
        ManifoldKind::ChoppedTorus => 2,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub kind: ManifoldKind,
    pub eps: f64,
    pub gamma: f64,
    pub seed: u64,
    /// Sample size; `None` uses the bound n*.
    pub n: Option<usize>,
    /// Rips edge threshold (diameter scale); `None` uses 2ε, the diameter
    /// matching balls of radius ε.
    pub r_max: Option<f64>,
    pub max_dim: usize,
    pub mesh_h: f64,
    pub dominance_factor: f64,
    pub simplex_cap: u64,
}

impl PipelineConfig {
    pub fn new(kind: ManifoldKind, eps: f64, gamma: f64, seed: u64) -> Self {
        PipelineConfig {
            kind,
            eps,
            gamma,
            seed,
            n: None,
            r_max: None,
            max_dim: 2,
            mesh_h: 0.01,
            dominance_factor: 3.0,
            simplex_cap: crate::persistence::DEFAULT_SIMPLEX_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub kind: ManifoldKind,
    pub n: usize,
    pub n_star: u64,
    pub cloud: PointCloud,
    /// Density certificate at radius ε/2.
    pub certificate: DensityCertificate,
    pub barcode: Barcode,
    pub r_max: f64,
    pub dominant_h1: usize,
    pub expected_h1: usize,
    pub betti0_at_horizon: usize,
    pub betti1_at_horizon: usize,
}

impl PipelineReport {
    /// One component at the horizon and the expected number of significant
    /// H1 bars. With no H1 expected, no H1 class may survive to the horizon.
    pub fn passed(&self) -> bool {
        let h1_ok = if self.expected_h1 == 0 {
            self.betti1_at_horizon == 0
        } else {
            self.dominant_h1 == self.expected_h1
        };
        h1_ok && self.betti0_at_horizon == 1
    }
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport> {
    let spec = ManifoldSpec::new(cfg.kind);
    let n_star = BoundQuery::new(cfg.eps, cfg.gamma)
        .and_then(|q| sample_size(&q, &spec.bound_params()))
        .stage("bound")?;
    let n = match cfg.n {
        Some(n) => n,
        None => usize::try_from(n_star)
            .or_else(|_| domain("n* does not fit in memory"))
            .stage("bound")?,
    };
    let cloud = spec.sample_uniform(n, cfg.seed).stage("sample")?;
    let certificate = certify_density(&spec, &cloud, cfg.eps / 2.0, cfg.mesh_h).stage("density")?;
    let r_max = cfg.r_max.unwrap_or(2.0 * cfg.eps);
    let mut rips = RipsConfig::new(r_max, cfg.max_dim);
    rips.simplex_cap = cfg.simplex_cap;
    let barcode =
        rips_barcode(&cloud, &rips, Engine::default_for(cfg.max_dim)).stage("persistence")?;
    // the horizon is included in the filtration, so probe just below it
    let probe = r_max * (1.0 - 1e-12);
    Ok(PipelineReport {
        kind: cfg.kind,
        n,
        n_star,
        certificate,
        dominant_h1: barcode.dominant_count(1, cfg.dominance_factor),
        expected_h1: expected_h1(cfg.kind),
        betti0_at_horizon: barcode.betti_at(probe, 0),
        betti1_at_horizon: barcode.betti_at(probe, 1),
        barcode,
        r_max,
        cloud,
    })
}
