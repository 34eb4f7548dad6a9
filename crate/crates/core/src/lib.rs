//! Exact statistics of the number of lattice points in a convex integer
//! polygon translated by a uniform random point of the unit square.

pub mod distribution;
pub mod error;
pub mod exact;
pub mod geom;
pub mod corpus;
pub mod covariogram;
pub mod counting;
pub mod moments;
pub mod montecarlo;
pub mod par;
pub mod spectral;

pub use error::{Error, Result};
