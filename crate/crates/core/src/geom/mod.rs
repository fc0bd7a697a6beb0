//! Exact integer geometry of lattice polygons.
//!
//! Every predicate in this module is evaluated in integer arithmetic: cross
//! products and doubled areas are computed in `i128`, so orientation, emptiness
//! and containment are never subject to rounding. Input coordinates are bounded
//! by [`COORD_BOUND`] in absolute value.

mod hull;
mod points;
mod setops;
mod triangulate;

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hull::convex_hull;
pub use points::LatticePoints;
pub use setops::{convex_union, intersection};
pub use triangulate::same_triangulation;

/// Largest admissible absolute value of a lattice coordinate.
pub const COORD_BOUND: i64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("no points given")]
    Empty,
    #[error("coordinate out of range: {0} (bound is 2^31)")]
    OutOfRange(LatticePoint),
    #[error("no boundary segments: polygon is a single point")]
    NoBoundarySegments,
    #[error("operation needs a two-dimensional polygon, got dimension {0}")]
    NotTwoDimensional(usize),
    #[error("segment [{0}, {1}] is not primitive")]
    NotPrimitive(LatticePoint, LatticePoint),
    #[error("triangle [{0}, {1}, {2}] is not an empty (unimodular) triangle")]
    NotUnimodularTriangle(LatticePoint, LatticePoint, LatticePoint),
    #[error("matrix determinant is {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("union of the two polygons is not convex")]
    NonConvexUnion,
    #[error("intersection has a non-lattice vertex")]
    NonLatticeIntersection,
    #[error("invalid polygon JSON: {0}")]
    Json(String),
}

/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub u: i64,
    pub v: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { u: 0, v: 0 };

    pub const fn new(u: i64, v: i64) -> Self {
        LatticePoint { u, v }
    }

    pub fn scale(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.u * k, self.v * k)
    }

    /// `<self, x>` for a real vector `x`.
    pub fn dot_real(self, x: [f64; 2]) -> f64 {
        self.u as f64 * x[0] + self.v as f64 * x[1]
    }

    pub(crate) fn in_bounds(self) -> bool {
        self.u.abs() <= COORD_BOUND && self.v.abs() <= COORD_BOUND
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;

    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;

    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.u - o.u, self.v - o.v)
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(a: [i64; 2]) -> Self {
        LatticePoint::new(a[0], a[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.u, p.v]
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// `(a - o) x (b - o)`.
pub(crate) fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (au, av) = ((a.u - o.u) as i128, (a.v - o.v) as i128);
    let (bu, bv) = ((b.u - o.u) as i128, (b.v - o.v) as i128);
    au * bv - av * bu
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A lattice polygon of dimension 0, 1 or 2 in canonical form.
///
/// Vertices are stored counterclockwise without collinear repeats, starting
/// at the lowest (then leftmost) vertex. A segment stores its two endpoints
/// and a point stores itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

impl LatticePolygon {
    /// Builds the polygon as the convex hull of `points`.
    pub fn hull_of(points: &[LatticePoint]) -> Result<Self, GeomError> {
        convex_hull(points)
    }

    pub fn point(p: LatticePoint) -> Self {
        LatticePolygon { vertices: vec![p] }
    }

    /// The base triangle `[o, e1, e2]`.
    pub fn base_triangle() -> Self {
        LatticePolygon {
            vertices: vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(1, 0),
                LatticePoint::new(0, 1),
            ],
        }
    }

    /// The axis-parallel rectangle `[u0, u1] x [v0, v1]` (degenerate sides allowed).
    pub fn rectangle(u0: i64, v0: i64, u1: i64, v1: i64) -> Result<Self, GeomError> {
        convex_hull(&[
            LatticePoint::new(u0, v0),
            LatticePoint::new(u1, v0),
            LatticePoint::new(u1, v1),
            LatticePoint::new(u0, v1),
        ])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        (self.vertices.len() - 1).min(2)
    }

    /// Twice the area; zero for points and segments.
    pub fn doubled_area(&self) -> i128 {
        if self.vertices.len() < 3 {
            return 0;
        }
        let o = self.vertices[0];
        self.vertices
            .windows(2)
            .skip(1)
            .map(|w| cross(o, w[0], w[1]))
            .sum()
    }

    pub fn translate(&self, z: LatticePoint) -> Self {
        LatticePolygon {
            vertices: self.vertices.iter().map(|&p| p + z).collect(),
        }
    }

    /// Parses `{"vertices": [[u, v], ...]}` and canonicalizes via the convex hull.
    pub fn from_json(src: &str) -> Result<Self, GeomError> {
        let file: PolygonFile =
            serde_json::from_str(src).map_err(|e| GeomError::Json(e.to_string()))?;
        convex_hull(&file.vertices)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolygonFile {
            vertices: self.vertices.clone(),
        })
        .expect("polygon serializes")
    }

    pub(crate) fn from_canonical(vertices: Vec<LatticePoint>) -> Self {
        debug_assert!(!vertices.is_empty());
        LatticePolygon { vertices }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<LatticePoint>,
}

/// A lattice segment whose only lattice points are its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimitiveSegment {
    pub p: LatticePoint,
    pub q: LatticePoint,
}

impl PrimitiveSegment {
    pub fn new(p: LatticePoint, q: LatticePoint) -> Result<Self, GeomError> {
        let d = q - p;
        if gcd(d.u, d.v) != 1 {
            return Err(GeomError::NotPrimitive(p, q));
        }
        Ok(PrimitiveSegment { p, q })
    }

    pub fn direction(&self) -> LatticePoint {
        self.q - self.p
    }
}

/// A lattice triangle containing no lattice points besides its vertices,
/// stored with positive orientation: `det(v1 - v0, v2 - v0) = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EmptyTriangle {
    pub v0: LatticePoint,
    pub v1: LatticePoint,
    pub v2: LatticePoint,
}

impl EmptyTriangle {
    /// Accepts either orientation; a clockwise input is reordered.
    pub fn new(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Self, GeomError> {
        match cross(a, b, c) {
            1 => Ok(EmptyTriangle {
                v0: a,
                v1: b,
                v2: c,
            }),
            -1 => Ok(EmptyTriangle {
                v0: a,
                v1: c,
                v2: b,
            }),
            _ => Err(GeomError::NotUnimodularTriangle(a, b, c)),
        }
    }

    pub fn det(&self) -> i128 {
        cross(self.v0, self.v1, self.v2)
    }

    pub fn vertices(&self) -> [LatticePoint; 3] {
        [self.v0, self.v1, self.v2]
    }

    /// Same triangle, rotated so the smallest vertex comes first.
    pub fn canonical(&self) -> EmptyTriangle {
        let vs = self.vertices();
        let i = (0..3).min_by_key(|&i| vs[i]).unwrap();
        EmptyTriangle {
            v0: vs[i],
            v1: vs[(i + 1) % 3],
            v2: vs[(i + 2) % 3],
        }
    }
}
