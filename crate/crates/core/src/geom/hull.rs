use super::{cross, GeomError, LatticePoint, LatticePolygon};

/// Convex hull with canonical vertex order (counterclockwise, lowest then
/// leftmost vertex first, collinear points dropped).
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolygon, GeomError> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    if let Some(&p) = points.iter().find(|p| !p.in_bounds()) {
        return Err(GeomError::OutOfRange(p));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(LatticePolygon::from_canonical(pts));
    }

    let mut lower: Vec<LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);

    let start = (0..lower.len())
        .min_by_key(|&i| (lower[i].v, lower[i].u))
        .unwrap();
    lower.rotate_left(start);
    Ok(LatticePolygon::from_canonical(lower))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(a: &[(i64, i64)]) -> Vec<LatticePoint> {
        a.iter().map(|&(u, v)| LatticePoint::new(u, v)).collect()
    }

    #[test]
    fn single_point() {
        let p = convex_hull(&pts(&[(0, 0)])).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.vertices(), &pts(&[(0, 0)])[..]);
    }

    #[test]
    fn base_triangle_with_duplicate() {
        let p = convex_hull(&pts(&[(0, 0), (1, 0), (0, 1), (0, 0)])).unwrap();
        assert_eq!(p.vertices(), &pts(&[(0, 0), (1, 0), (0, 1)])[..]);
        assert_eq!(p, LatticePolygon::base_triangle());
    }

    #[test]
    fn square_drops_interior_point() {
        let p = convex_hull(&pts(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])).unwrap();
        assert_eq!(p.vertices(), &pts(&[(0, 0), (2, 0), (2, 2), (0, 2)])[..]);
        assert_eq!(p.doubled_area(), 8);
    }

    #[test]
    fn collinear_points_give_segment() {
        let p = convex_hull(&pts(&[(2, 2), (0, 0), (1, 1), (3, 3)])).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices(), &pts(&[(0, 0), (3, 3)])[..]);
        let q = convex_hull(&pts(&[(0, 3), (0, -1), (0, 1)])).unwrap();
        assert_eq!(q.vertices(), &pts(&[(0, -1), (0, 3)])[..]);
    }

    #[test]
    fn start_vertex_is_lowest_then_leftmost() {
        let p = convex_hull(&pts(&[(3, 0), (0, 1), (1, 0), (2, 2)])).unwrap();
        assert_eq!(p.vertices()[0], LatticePoint::new(1, 0));
        assert_eq!(p.dim(), 2);
    }
}
