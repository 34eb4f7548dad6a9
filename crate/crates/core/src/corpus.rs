//! Seeded polygon corpora for the self-checks and the acceptance suite.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{convex_hull, IntPolygon, IntVector, Mat2};

/// Named polygons exercised by every check.
pub fn curated() -> Vec<(&'static str, IntPolygon)> {
    let p = |c: &[(i64, i64)]| IntPolygon::from_coords(c).expect("curated polygon is valid");
    vec![
        ("unit-triangle", IntPolygon::unit_triangle()),
        ("unit-square", IntPolygon::unit_square()),
        ("right-triangle-2x1", p(&[(0, 0), (2, 0), (0, 1)])),
        ("triangle-3x3", p(&[(0, 0), (3, 0), (0, 3)])),
        ("pentagon", p(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)])),
        ("hexagon", p(&[(0, 0), (2, 0), (3, 1), (3, 3), (1, 3), (0, 2)])),
        ("skew-quad", p(&[(0, 0), (4, 1), (5, 3), (1, 5)])),
        ("parallelogram", p(&[(0, 0), (3, 1), (4, 4), (1, 3)])),
    ]
}

/// Random convex polygons: hulls of 3 to `max_points` uniform points of
/// `[-range, range]^2`, degenerate hulls rejected.
pub fn random_polygons(count: usize, seed: u64, range: i64, max_points: usize) -> Vec<IntPolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<IntVector> = (0..n)
            .map(|_| IntVector::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range)))
            .collect();
        if let Ok(p) = convex_hull(&pts) {
            out.push(p);
        }
    }
    out
}

/// The default self-check corpus: vertices in `[-8, 8]^2`, at most 10 of them.
pub fn corpus(count: usize, seed: u64) -> Vec<IntPolygon> {
    random_polygons(count, seed, 8, 10)
}

/// Every integer triangle, up to translation, with affine perimeter at most
/// `max_perimeter` that fits in a box of side `extent`.
///
/// Each triangle is listed once with its lexicographically smallest vertex
/// at the origin.
pub fn triangles(max_perimeter: i64, extent: i64) -> Vec<IntPolygon> {
    let mut candidates = Vec::new();
    for x in 0..=extent {
        for y in -extent..=extent {
            if (x, y) > (0, 0) && x.gcd(&y) < max_perimeter {
                candidates.push(IntVector::new(x, y));
            }
        }
    }
    let mut out = Vec::new();
    for (i, &v) in candidates.iter().enumerate() {
        let lv = v.x.gcd(&v.y);
        for &w in &candidates[i + 1..] {
            if v.wedge(w) == 0 || w.y.max(v.y).max(0) - w.y.min(v.y).min(0) > extent {
                continue;
            }
            let e = w - v;
            if lv + w.x.gcd(&w.y) + e.x.gcd(&e.y) > max_perimeter {
                continue;
            }
            let t = IntPolygon::new(if v.wedge(w) > 0 {
                vec![IntVector::new(0, 0), v, w]
            } else {
                vec![IntVector::new(0, 0), w, v]
            })
            .expect("nondegenerate triangle");
            out.push(t);
        }
    }
    out
}

/// Product of at most `max_factors` elementary shears, determinant one.
pub fn random_unimodular<R: Rng>(rng: &mut R, max_factors: usize) -> Mat2 {
    let mut m = Mat2::IDENTITY;
    for _ in 0..rng.gen_range(1..=max_factors.max(1)) {
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        let shear = if rng.gen_bool(0.5) {
            Mat2 { a: 1, b: s, c: 0, d: 1 }
        } else {
            Mat2 { a: 1, b: 0, c: s, d: 1 }
        };
        m = m.mul(&shear);
    }
    m
}
