use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::vector::{angle_cmp, IntVector, Mat2};
use crate::error::{Error, Result};

/// Largest accepted absolute vertex coordinate; keeps every wedge inside `i64`.
pub const COORD_LIMIT: i64 = 1 << 30;

/// Convex integer polygon with counterclockwise vertices.
///
/// Collinear vertices are merged away, so consecutive sides are never
/// parallel; the lattice points they carried are still accounted for through
/// the affine lengths of the merged sides. The vertex list starts at the
/// lowest (then leftmost) vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<IntVector>", into = "Vec<IntVector>")]
pub struct IntPolygon {
    vertices: Vec<IntVector>,
    sides: Vec<IntVector>,
    twice_area: i128,
}

/// A validated polygon plus whether its input had to be reversed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oriented {
    pub polygon: IntPolygon,
    pub reversed: bool,
}

/// Interior and boundary lattice counts together with the area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickCounts {
    pub interior: i64,
    pub boundary: i64,
    pub area: BigRational,
}

/// Multiset of primitive side directions with their affine lengths.
///
/// Entries are sorted by direction angle and directions are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SideProfile {
    entries: Vec<(IntVector, i64)>,
}

fn twice_signed_area(vs: &[IntVector]) -> i128 {
    let n = vs.len();
    (0..n)
        .map(|i| {
            let a = vs[i];
            let b = vs[(i + 1) % n];
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

/// Validates and normalizes a vertex list, reversing clockwise input.
pub fn validate_polygon(vertices: &[IntVector]) -> Result<Oriented> {
    normalize(vertices, true)
}

fn normalize(input: &[IntVector], allow_reverse: bool) -> Result<Oriented> {
    if input.len() < 3 {
        return Err(Error::TooFewVertices(input.len()));
    }
    if input
        .iter()
        .any(|v| v.x.abs() > COORD_LIMIT || v.y.abs() > COORD_LIMIT)
    {
        return Err(Error::InvalidArgument(format!(
            "vertex coordinates must lie within +-{COORD_LIMIT}"
        )));
    }
    let mut vs: Vec<IntVector> = Vec::with_capacity(input.len());
    for &v in input {
        if vs.last() != Some(&v) {
            vs.push(v);
        }
    }
    while vs.len() > 1 && vs.first() == vs.last() {
        vs.pop();
    }
    let area = twice_signed_area(&vs);
    if vs.len() < 3 || area == 0 {
        return Err(Error::DegenerateArea);
    }
    let reversed = area < 0;
    if reversed {
        if !allow_reverse {
            return Err(Error::Clockwise);
        }
        vs.reverse();
    }

    // Merge collinear runs; a reversal in place (a spike) means the boundary folds back.
    loop {
        let n = vs.len();
        if n < 3 {
            return Err(Error::DegenerateArea);
        }
        let mut removed = false;
        for i in 0..n {
            let prev = vs[(i + n - 1) % n];
            let cur = vs[i];
            let next = vs[(i + 1) % n];
            let e1 = cur - prev;
            let e2 = next - cur;
            if e1.wedge(e2) == 0 {
                if e1.dot(e2) < 0 {
                    return Err(Error::NotConvex);
                }
                vs.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }

    let n = vs.len();
    for i in 0..n {
        let a = vs[i];
        let b = vs[(i + 1) % n];
        let e = b - a;
        if vs.iter().any(|&p| e.wedge(p - a) < 0) {
            return Err(Error::NotConvex);
        }
        let c = vs[(i + 2) % n];
        if e.wedge(c - b) <= 0 {
            return Err(Error::NotConvex);
        }
    }

    let start = (0..n)
        .min_by_key(|&i| (vs[i].y, vs[i].x))
        .expect("nonempty");
    vs.rotate_left(start);
    let sides = (0..n).map(|i| vs[(i + 1) % n] - vs[i]).collect();
    let twice_area = twice_signed_area(&vs);
    Ok(Oriented {
        polygon: IntPolygon {
            vertices: vs,
            sides,
            twice_area,
        },
        reversed,
    })
}

impl IntPolygon {
    /// Builds a polygon from counterclockwise vertices; clockwise input is an error.
    pub fn new(vertices: Vec<IntVector>) -> Result<IntPolygon> {
        normalize(&vertices, false).map(|o| o.polygon)
    }

    /// Convenience constructor from coordinate pairs, accepting either orientation.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<IntPolygon> {
        let vs: Vec<IntVector> = coords.iter().map(|&(x, y)| IntVector::new(x, y)).collect();
        validate_polygon(&vs).map(|o| o.polygon)
    }

    /// The triangle with vertices `(0,0), (1,0), (0,1)`.
    pub fn unit_triangle() -> IntPolygon {
        IntPolygon::from_coords(&[(0, 0), (1, 0), (0, 1)]).expect("valid")
    }

    pub fn unit_square() -> IntPolygon {
        IntPolygon::from_coords(&[(0, 0), (1, 0), (1, 1), (0, 1)]).expect("valid")
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn sides(&self) -> &[IntVector] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    pub fn twice_area(&self) -> i128 {
        self.twice_area
    }

    pub fn area(&self) -> BigRational {
        BigRational::new(BigInt::from(self.twice_area), BigInt::from(2))
    }

    pub fn affine_lengths(&self) -> Vec<i64> {
        self.sides
            .iter()
            .map(|s| s.affine_length().expect("sides are nonzero"))
            .collect()
    }

    /// Sum of affine side lengths, which is also the boundary lattice count.
    pub fn affine_perimeter(&self) -> i64 {
        self.affine_lengths().iter().sum()
    }

    pub fn side_profile(&self) -> SideProfile {
        SideProfile::from_sides(&self.sides)
    }

    /// Lattice points on the closed polygon, via the profile (boundary) and area (interior).
    pub fn pick_counts(&self) -> PickCounts {
        pick_counts(self)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (IntVector, IntVector) {
        let xs = self.vertices.iter().map(|v| v.x);
        let ys = self.vertices.iter().map(|v| v.y);
        (
            IntVector::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            IntVector::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Closed containment test for a lattice point.
    pub fn contains(&self, p: IntVector) -> bool {
        self.vertices
            .iter()
            .zip(&self.sides)
            .all(|(&a, &s)| s.wedge(p - a) >= 0)
    }

    /// All lattice points of the closed polygon, by bounding-box scan.
    pub fn lattice_points(&self) -> Vec<IntVector> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for y in lo.y..=hi.y {
            for x in lo.x..=hi.x {
                let p = IntVector::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn translate(&self, t: IntVector) -> IntPolygon {
        IntPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
            sides: self.sides.clone(),
            twice_area: self.twice_area,
        }
    }

    /// Image under a matrix with determinant +-1, re-normalized to counterclockwise order.
    pub fn apply_unimodular(&self, m: &Mat2) -> Result<IntPolygon> {
        let det = m.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        let image: Vec<IntVector> = self.vertices.iter().map(|&v| m.apply(v)).collect();
        validate_polygon(&image).map(|o| o.polygon)
    }

    pub fn negate(&self) -> IntPolygon {
        negate(self)
    }

    /// Centrally symmetric iff every side has an opposite side of equal length.
    pub fn is_centrally_symmetric(&self) -> bool {
        self.side_profile().is_symmetric()
    }
}

impl TryFrom<Vec<IntVector>> for IntPolygon {
    type Error = Error;
    fn try_from(v: Vec<IntVector>) -> Result<IntPolygon> {
        validate_polygon(&v).map(|o| o.polygon)
    }
}

impl From<IntPolygon> for Vec<IntVector> {
    fn from(p: IntPolygon) -> Vec<IntVector> {
        p.vertices
    }
}

impl fmt::Display for IntPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn pick_counts(p: &IntPolygon) -> PickCounts {
    let boundary = p.affine_perimeter();
    // 2A = 2i + b - 2
    let interior = ((p.twice_area - boundary as i128 + 2) / 2) as i64;
    PickCounts {
        interior,
        boundary,
        area: p.area(),
    }
}

pub fn negate(p: &IntPolygon) -> IntPolygon {
    let vs: Vec<IntVector> = p.vertices.iter().map(|&v| -v).collect();
    IntPolygon::new(vs).expect("point reflection preserves convexity and orientation")
}

/// Minkowski sum by merging the two side sequences in angular order.
pub fn minkowski_sum(p: &IntPolygon, q: &IntPolygon) -> IntPolygon {
    let profile = p.side_profile().union(&q.side_profile());
    let start = p.vertices[0] + q.vertices[0];
    let mut vs = Vec::with_capacity(profile.len());
    let mut cur = start;
    for &(u, l) in profile.entries() {
        vs.push(cur);
        cur = cur + u * l;
    }
    debug_assert_eq!(cur, start);
    IntPolygon::new(vs).expect("sum of convex polygons is convex")
}

impl SideProfile {
    /// Builds a profile from side vectors, merging equal primitive directions.
    pub fn from_sides(sides: &[IntVector]) -> SideProfile {
        let mut entries: Vec<(IntVector, i64)> = Vec::new();
        for s in sides {
            let (u, l) = s.primitive().expect("sides are nonzero");
            entries.push((u, l));
        }
        SideProfile::from_entries(entries)
    }

    /// Builds a profile from `(direction, length)` pairs; directions are reduced to primitive.
    pub fn from_entries(raw: Vec<(IntVector, i64)>) -> SideProfile {
        let mut merged: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for (v, l) in raw {
            let (u, g) = v.primitive().expect("directions are nonzero");
            *merged.entry((u.x, u.y)).or_insert(0) += l * g;
        }
        let mut entries: Vec<(IntVector, i64)> = merged
            .into_iter()
            .filter(|&(_, l)| l != 0)
            .map(|((x, y), l)| (IntVector::new(x, y), l))
            .collect();
        entries.sort_by(|a, b| angle_cmp(a.0, b.0));
        SideProfile { entries }
    }

    pub fn entries(&self) -> &[(IntVector, i64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn length_of(&self, direction: IntVector) -> i64 {
        self.entries
            .iter()
            .find(|(u, _)| *u == direction)
            .map_or(0, |&(_, l)| l)
    }

    /// Multiset union, summing lengths of equal directions.
    pub fn union(&self, other: &SideProfile) -> SideProfile {
        SideProfile::from_entries(self.entries.iter().chain(&other.entries).copied().collect())
    }

    pub fn negate(&self) -> SideProfile {
        SideProfile::from_entries(self.entries.iter().map(|&(u, l)| (-u, l)).collect())
    }

    pub fn apply(&self, m: &Mat2) -> SideProfile {
        SideProfile::from_entries(self.entries.iter().map(|&(u, l)| (m.apply(u), l)).collect())
    }

    /// `sum(length * direction)`; zero for a closed polygon.
    pub fn closing_vector(&self) -> IntVector {
        self.entries
            .iter()
            .fold(IntVector::ZERO, |acc, &(u, l)| acc + u * l)
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|&(u, l)| self.length_of(-u) == l)
    }

    pub fn perimeter(&self) -> i64 {
        self.entries.iter().map(|&(_, l)| l).sum()
    }
}
