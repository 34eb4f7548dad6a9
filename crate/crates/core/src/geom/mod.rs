//! Exact planar geometry on integer polygons.
//!
//! Everything here is exact: integer vertices, rational shifts, rational
//! areas. There are no epsilon predicates.

mod convex;
mod hull;
mod io;
mod polygon;
mod vector;

pub use convex::{intersect_convex, RationalPolygon};
pub use hull::convex_hull;
pub use io::{parse_polygon, parse_polygon_json, parse_polygon_text, polygon_to_json};
pub use polygon::{
    minkowski_sum, negate, pick_counts, validate_polygon, IntPolygon, Oriented, PickCounts,
    SideProfile,
};
pub use vector::{affine_length, angle_cmp, wedge, wedge_point, IntVector, Mat2, RationalPoint};
