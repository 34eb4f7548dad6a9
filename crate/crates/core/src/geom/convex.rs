use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::polygon::IntPolygon;
use super::vector::RationalPoint;

/// Convex polygon with exact rational vertices, counterclockwise.
///
/// May be empty, a single point, or a segment; those carry zero area.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolygon {
    pub vertices: Vec<RationalPoint>,
}

impl RationalPolygon {
    pub fn new(vertices: Vec<RationalPoint>) -> Self {
        RationalPolygon { vertices }
    }

    pub fn from_int(p: &IntPolygon) -> Self {
        RationalPolygon::new(p.vertices().iter().map(|&v| v.to_point()).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area, exact.
    pub fn area(&self) -> BigRational {
        let n = self.vertices.len();
        if n < 3 {
            return BigRational::zero();
        }
        let twice: BigRational = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        (twice / BigRational::from_integer(2.into())).abs()
    }

    pub fn translate(&self, t: &RationalPoint) -> Self {
        RationalPolygon::new(self.vertices.iter().map(|v| v.add(t)).collect())
    }

    /// Keeps the part where `(b - a) ^ (p - a) >= 0`.
    pub fn clip_left_of(&self, a: &RationalPoint, b: &RationalPoint) -> Self {
        let n = self.vertices.len();
        if n == 0 {
            return self.clone();
        }
        let dir = b.sub(a);
        let side = |p: &RationalPoint| dir.cross(&p.sub(a));
        let sides: Vec<BigRational> = self.vertices.iter().map(side).collect();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (cur, nxt) = (&self.vertices[i], &self.vertices[j]);
            let (sc, sn) = (&sides[i], &sides[j]);
            let cur_in = !sc.is_negative();
            let nxt_in = !sn.is_negative();
            if cur_in {
                out.push(cur.clone());
            }
            if (sc.is_positive() && sn.is_negative()) || (sc.is_negative() && sn.is_positive()) {
                let t = sc / (sc - sn);
                out.push(cur.add(&nxt.sub(cur).scale(&t)));
            }
            let _ = nxt_in;
        }
        out.dedup();
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        RationalPolygon::new(out)
    }
}

/// Exact intersection of two convex polygons by half-plane clipping.
pub fn intersect_convex(p: &RationalPolygon, q: &RationalPolygon) -> RationalPolygon {
    let m = q.vertices.len();
    if m < 3 || p.vertices.is_empty() {
        return RationalPolygon::default();
    }
    let mut out = p.clone();
    for i in 0..m {
        out = out.clip_left_of(&q.vertices[i], &q.vertices[(i + 1) % m]);
        if out.is_empty() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::geom::IntVector;

    fn tri() -> RationalPolygon {
        RationalPolygon::from_int(&IntPolygon::unit_triangle())
    }

    #[test]
    fn self_intersection_is_idempotent() {
        let t = tri();
        let i = intersect_convex(&t, &t);
        assert_eq!(i.area(), rational(1, 2));
    }

    #[test]
    fn touching_translate_is_a_point() {
        let t = tri();
        let shifted = t.translate(&IntVector::new(1, 0).to_point());
        let i = intersect_convex(&t, &shifted);
        assert_eq!(i.vertices, vec![IntVector::new(1, 0).to_point()]);
        assert_eq!(i.area(), rational(0, 1));
    }

    #[test]
    fn half_shift_gives_similar_triangle() {
        let t = tri();
        let shifted = t.translate(&RationalPoint::from_ratios(1, 2, 0, 1));
        let i = intersect_convex(&t, &shifted);
        assert_eq!(i.vertices.len(), 3);
        assert_eq!(i.area(), rational(1, 8));
        assert_eq!(intersect_convex(&shifted, &t).area(), rational(1, 8));
    }

    #[test]
    fn disjoint_is_empty() {
        let t = tri();
        let far = t.translate(&IntVector::new(5, 5).to_point());
        assert!(intersect_convex(&t, &far).is_empty());
    }

    #[test]
    fn contained_polygon_is_returned_whole() {
        let big = RationalPolygon::from_int(
            &IntPolygon::from_coords(&[(-2, -2), (3, -2), (3, 3), (-2, 3)]).unwrap(),
        );
        let t = tri();
        assert_eq!(intersect_convex(&t, &big).area(), rational(1, 2));
        assert_eq!(intersect_convex(&big, &t).area(), rational(1, 2));
    }
}
