//! Exact law of the shifted lattice count.
//!
//! [`exact_pmf`] decomposes the unit square of shifts into the cells on
//! which the count is constant and aggregates cell areas by value.
//! [`triangle_pmf`] is the closed form for triangles as a shifted
//! convolution of discrete uniforms.

mod arrangement;
mod pmf;
mod triangle;

pub use arrangement::{exact_cells, exact_pmf, exact_pmf_with, level_range, Cell};
pub use pmf::{centered_pmf, convolve, reduce_mod, scale_support, shift, uniform_pmf, Pmf};
pub use triangle::{support_bound, triangle_pmf};
