//! Vietoris–Rips persistent homology over F2.
//!
//! Filtration values are Euclidean diameters: an edge enters at the
//! distance between its endpoints, a higher simplex at its longest edge.
//! The ball-radius scale of the union-of-balls picture is half of that.

mod barcode;
mod cohomology;
mod reduce;
mod rips;

pub use barcode::{Barcode, Interval, BARCODE_CSV_HEADER};
pub use cohomology::rips_persistence_low;
pub use reduce::{compute_persistence, compute_persistence_with, Reduction};
pub use rips::{
    build_rips, build_rips_with, Filtration, RipsConfig, Simplex, DEFAULT_MAX_POINTS,
    DEFAULT_SIMPLEX_CAP,
};

use crate::cloud::PointCloud;
use crate::error::Result;

/// How a Rips barcode is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Edge-coboundary reduction with triangles enumerated on demand.
    /// Dimensions 0 and 1 only; needs `max_dim <= 2`.
    Implicit,
    /// Materialized filtration and boundary-matrix reduction.
    Explicit(Reduction),
}

impl Engine {
    /// Implicit when it applies, explicit twist otherwise.
    pub fn default_for(max_dim: usize) -> Self {
        if max_dim <= 2 {
            Engine::Implicit
        } else {
            Engine::Explicit(Reduction::Twist)
        }
    }
}

pub fn rips_barcode(cloud: &PointCloud, cfg: &RipsConfig, engine: Engine) -> Result<Barcode> {
    match engine {
        Engine::Implicit => rips_persistence_low(cloud, cfg),
        Engine::Explicit(method) => compute_persistence_with(&build_rips_with(cloud, cfg)?, method),
    }
}
