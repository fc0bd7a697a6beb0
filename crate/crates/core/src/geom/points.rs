use super::{cross, gcd, GeomError, LatticePoint, LatticePolygon, PrimitiveSegment};

/// Lattice points of a polygon, split into boundary and interior.
///
/// For polygons of dimension at most one every lattice point is reported as
/// boundary. Both lists are sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoints {
    pub boundary: Vec<LatticePoint>,
    pub interior: Vec<LatticePoint>,
}

impl LatticePoints {
    pub fn all(&self) -> Vec<LatticePoint> {
        let mut v = self.boundary.clone();
        v.extend_from_slice(&self.interior);
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.boundary.len() + self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn segment_points(p: LatticePoint, q: LatticePoint) -> Vec<LatticePoint> {
    let d = q - p;
    let g = gcd(d.u, d.v);
    let step = LatticePoint::new(d.u / g, d.v / g);
    (0..=g).map(|i| p + step.scale(i)).collect()
}

impl LatticePolygon {
    pub fn lattice_points(&self) -> LatticePoints {
        let vs = self.vertices();
        match self.dim() {
            0 => LatticePoints {
                boundary: vec![vs[0]],
                interior: vec![],
            },
            1 => {
                let mut boundary = segment_points(vs[0], vs[1]);
                boundary.sort();
                LatticePoints {
                    boundary,
                    interior: vec![],
                }
            }
            _ => {
                let umin = vs.iter().map(|p| p.u).min().unwrap();
                let umax = vs.iter().map(|p| p.u).max().unwrap();
                let vmin = vs.iter().map(|p| p.v).min().unwrap();
                let vmax = vs.iter().map(|p| p.v).max().unwrap();
                let n = vs.len();
                let mut boundary = Vec::new();
                let mut interior = Vec::new();
                for u in umin..=umax {
                    for v in vmin..=vmax {
                        let z = LatticePoint::new(u, v);
                        let mut on_edge = false;
                        let mut inside = true;
                        for i in 0..n {
                            let c = cross(vs[i], vs[(i + 1) % n], z);
                            if c < 0 {
                                inside = false;
                                break;
                            }
                            if c == 0 {
                                on_edge = true;
                            }
                        }
                        if inside {
                            if on_edge {
                                boundary.push(z);
                            } else {
                                interior.push(z);
                            }
                        }
                    }
                }
                LatticePoints { boundary, interior }
            }
        }
    }

    /// Edges subdivided at their lattice points, in counterclockwise order.
    /// A segment is subdivided itself.
    pub fn boundary_primitive_segments(&self) -> Result<Vec<PrimitiveSegment>, GeomError> {
        let vs = self.vertices();
        let edges: Vec<(LatticePoint, LatticePoint)> = match self.dim() {
            0 => return Err(GeomError::NoBoundarySegments),
            1 => vec![(vs[0], vs[1])],
            _ => (0..vs.len())
                .map(|i| (vs[i], vs[(i + 1) % vs.len()]))
                .collect(),
        };
        let mut out = Vec::new();
        for (p, q) in edges {
            let pts = segment_points(p, q);
            for w in pts.windows(2) {
                out.push(PrimitiveSegment { p: w[0], q: w[1] });
            }
        }
        Ok(out)
    }

    pub fn contains(&self, z: LatticePoint) -> bool {
        let vs = self.vertices();
        match self.dim() {
            0 => vs[0] == z,
            1 => {
                cross(vs[0], vs[1], z) == 0
                    && z.u >= vs[0].u.min(vs[1].u)
                    && z.u <= vs[0].u.max(vs[1].u)
                    && z.v >= vs[0].v.min(vs[1].v)
                    && z.v <= vs[0].v.max(vs[1].v)
            }
            _ => (0..vs.len()).all(|i| cross(vs[i], vs[(i + 1) % vs.len()], z) >= 0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;

    fn pt(u: i64, v: i64) -> LatticePoint {
        LatticePoint::new(u, v)
    }

    #[test]
    fn base_triangle_points() {
        let lp = LatticePolygon::base_triangle().lattice_points();
        assert_eq!(lp.boundary, vec![pt(0, 0), pt(0, 1), pt(1, 0)]);
        assert!(lp.interior.is_empty());
    }

    #[test]
    fn square_points() {
        let lp = LatticePolygon::rectangle(0, 0, 2, 2)
            .unwrap()
            .lattice_points();
        assert_eq!(lp.boundary.len(), 8);
        assert_eq!(lp.interior, vec![pt(1, 1)]);
    }

    #[test]
    fn segment_points_all_boundary() {
        let s = convex_hull(&[pt(0, 0), pt(3, 0)]).unwrap();
        let lp = s.lattice_points();
        assert_eq!(lp.boundary, vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(3, 0)]);
        assert!(lp.interior.is_empty());
    }

    #[test]
    fn primitive_segments_of_base_triangle() {
        let segs = LatticePolygon::base_triangle()
            .boundary_primitive_segments()
            .unwrap();
        let pairs: Vec<_> = segs.iter().map(|s| (s.p, s.q)).collect();
        assert_eq!(
            pairs,
            vec![
                (pt(0, 0), pt(1, 0)),
                (pt(1, 0), pt(0, 1)),
                (pt(0, 1), pt(0, 0))
            ]
        );
    }

    #[test]
    fn primitive_segments_counts() {
        let sq = LatticePolygon::rectangle(0, 0, 2, 2).unwrap();
        assert_eq!(sq.boundary_primitive_segments().unwrap().len(), 8);
        let seg = convex_hull(&[pt(0, 0), pt(2, 3)]).unwrap();
        assert_eq!(seg.boundary_primitive_segments().unwrap().len(), 1);
        let dot = LatticePolygon::point(pt(4, 4));
        assert_eq!(
            dot.boundary_primitive_segments(),
            Err(GeomError::NoBoundarySegments)
        );
    }

    #[test]
    fn containment() {
        let sq = LatticePolygon::rectangle(0, 0, 2, 2).unwrap();
        assert!(sq.contains(pt(1, 1)));
        assert!(sq.contains(pt(2, 0)));
        assert!(!sq.contains(pt(3, 0)));
        let seg = convex_hull(&[pt(0, 0), pt(2, 2)]).unwrap();
        assert!(seg.contains(pt(1, 1)));
        assert!(!seg.contains(pt(3, 3)));
        assert!(!seg.contains(pt(1, 0)));
    }
}
