//! Cross covariograms `g_{A,B}(x) = area(A ^ (B + x))` and their lattice sums.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::exact::fraction_string;
use crate::geom::{intersect_convex, IntPolygon, IntVector, RationalPoint, RationalPolygon};
use crate::par::{self, Execution};

/// `sum_n g_{A,B}(n)` over the lattice, `area(A) area(B)`, and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovariogramSum {
    pub lattice_sum: BigRational,
    pub integral: BigRational,
    pub covariance: BigRational,
}

impl CovariogramSum {
    pub fn to_json(&self) -> Value {
        json!({
            "lattice_sum": fraction_string(&self.lattice_sum),
            "integral": fraction_string(&self.integral),
            "covariance": fraction_string(&self.covariance),
        })
    }
}

/// Exact `area(A ^ (B + x))`.
pub fn covariogram_at(a: &IntPolygon, b: &IntPolygon, x: &RationalPoint) -> BigRational {
    let shifted = RationalPolygon::from_int(b).translate(x);
    intersect_convex(&RationalPolygon::from_int(a), &shifted).area()
}

/// Bounding box of `A + (-B)`; every translate with overlap lies inside.
pub fn translate_range(a: &IntPolygon, b: &IntPolygon) -> (IntVector, IntVector) {
    let (alo, ahi) = a.bounding_box();
    let (blo, bhi) = b.bounding_box();
    (alo - bhi, ahi - blo)
}

/// Lattice translates with positive overlap and the overlap area, row by row.
pub fn covariogram_table(a: &IntPolygon, b: &IntPolygon, exec: Execution) -> Vec<(IntVector, BigRational)> {
    let (lo, hi) = translate_range(a, b);
    let ra = RationalPolygon::from_int(a);
    let rb = RationalPolygon::from_int(b);
    let width = (hi.x - lo.x + 1) as usize;
    let rows = (hi.y - lo.y + 1) as usize;
    par::map_range(exec, rows * width, |i| {
        let n = IntVector::new(lo.x + (i % width) as i64, lo.y + (i / width) as i64);
        let g = intersect_convex(&ra, &rb.translate(&n.to_point())).area();
        (n, g)
    })
    .into_iter()
    .filter(|(_, g)| g.is_positive())
    .collect()
}

pub fn lattice_sum(a: &IntPolygon, b: &IntPolygon) -> CovariogramSum {
    lattice_sum_with(a, b, Execution::default())
}

/// The covariance of the two counts as a lattice sum of overlaps.
pub fn lattice_sum_with(a: &IntPolygon, b: &IntPolygon, exec: Execution) -> CovariogramSum {
    let lattice_sum = covariogram_table(a, b, exec)
        .into_iter()
        .fold(BigRational::zero(), |acc, (_, g)| acc + g);
    let integral = a.area() * b.area();
    CovariogramSum {
        covariance: &lattice_sum - &integral,
        lattice_sum,
        integral,
    }
}
