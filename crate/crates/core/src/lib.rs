//! Probabilistic sampling bounds and homology verification for compact
//! manifolds with boundary.
//!
//! The crate computes the sample size that makes the ε-offset of an i.i.d.
//! uniform sample deformation retract onto the manifold with a given
//! confidence, certifies the density precondition on concrete clouds,
//! compares against two rival reconstruction criteria, and checks homology
//! recovery with a built-in Vietoris–Rips persistence engine.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod bounds;
pub mod cloud;
pub mod criteria;
pub mod density;
pub mod error;
pub mod grid;
pub mod manifold;
pub mod persistence;
pub mod pipeline;
pub mod plot;
pub mod special;

pub use cloud::PointCloud;
pub use error::{Error, Result};
pub use manifold::{ManifoldKind, ManifoldSpec};
