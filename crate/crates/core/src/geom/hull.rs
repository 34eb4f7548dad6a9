use super::polygon::{validate_polygon, IntPolygon};
use super::vector::IntVector;
use crate::error::{Error, Result};

/// Strict convex hull of a point set (monotone chain), as a validated polygon.
pub fn convex_hull(points: &[IntVector]) -> Result<IntPolygon> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return validate_polygon(&pts).map(|o| o.polygon);
    }
    let turn = |o: IntVector, a: IntVector, b: IntVector| (a - o).wedge(b - o);
    let mut lower: Vec<IntVector> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<IntVector> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateArea);
    }
    validate_polygon(&lower).map(|o| o.polygon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let pts: Vec<IntVector> = [(0, 0), (2, 0), (1, 0), (1, 1), (2, 2), (0, 2), (1, 2)]
            .iter()
            .map(|&(x, y)| IntVector::new(x, y))
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.affine_perimeter(), 8);
    }

    #[test]
    fn collinear_set_is_degenerate() {
        let pts: Vec<IntVector> = (0..5).map(|i| IntVector::new(i, 2 * i)).collect();
        assert_eq!(convex_hull(&pts), Err(Error::DegenerateArea));
    }
}
