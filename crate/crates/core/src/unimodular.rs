//! Affine lattice automorphisms `x -> Phi x + a` with `det Phi = ±1`.

use std::fmt;

use crate::field::{Field, ScalarField};
use crate::geom::{
    convex_hull, EmptyTriangle, GeomError, LatticePoint, LatticePolygon, PrimitiveSegment,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularAffine {
    phi: [[i64; 2]; 2],
    a: LatticePoint,
}

fn det2(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `(g, x, y)` with `a x + b y = g >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl UnimodularAffine {
    /// `phi` is row-major: `phi[i][j]` is row `i`, column `j`.
    pub fn new(phi: [[i64; 2]; 2], a: LatticePoint) -> Result<Self, GeomError> {
        let d = det2(&phi);
        if d != 1 && d != -1 {
            return Err(GeomError::NotUnimodular(d));
        }
        Ok(UnimodularAffine { phi, a })
    }

    pub fn identity() -> Self {
        UnimodularAffine {
            phi: [[1, 0], [0, 1]],
            a: LatticePoint::ORIGIN,
        }
    }

    pub fn translation(a: LatticePoint) -> Self {
        UnimodularAffine {
            phi: [[1, 0], [0, 1]],
            a,
        }
    }

    pub fn linear(phi: [[i64; 2]; 2]) -> Result<Self, GeomError> {
        Self::new(phi, LatticePoint::ORIGIN)
    }

    pub fn phi(&self) -> [[i64; 2]; 2] {
        self.phi
    }

    pub fn offset(&self) -> LatticePoint {
        self.a
    }

    pub fn det(&self) -> i64 {
        det2(&self.phi)
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &UnimodularAffine) -> UnimodularAffine {
        let (p, q) = (&self.phi, &other.phi);
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = p[i][0] * q[0][j] + p[i][1] * q[1][j];
            }
        }
        UnimodularAffine {
            phi: m,
            a: self.apply(other.a),
        }
    }

    pub fn invert(&self) -> UnimodularAffine {
        let d = self.det();
        let p = &self.phi;
        let inv = [[d * p[1][1], -d * p[0][1]], [-d * p[1][0], d * p[0][0]]];
        let lin = UnimodularAffine {
            phi: inv,
            a: LatticePoint::ORIGIN,
        };
        let b = lin.apply(self.a);
        UnimodularAffine {
            phi: inv,
            a: LatticePoint::new(-b.u, -b.v),
        }
    }

    pub fn apply(&self, x: LatticePoint) -> LatticePoint {
        let p = &self.phi;
        LatticePoint::new(
            p[0][0] * x.u + p[0][1] * x.v + self.a.u,
            p[1][0] * x.u + p[1][1] * x.v + self.a.v,
        )
    }

    pub fn apply_polygon(&self, poly: &LatticePolygon) -> Result<LatticePolygon, GeomError> {
        let image: Vec<LatticePoint> = poly.vertices().iter().map(|&v| self.apply(v)).collect();
        convex_hull(&image)
    }

    /// `Phi^T x`.
    pub fn transpose_apply(&self, x: [f64; 2]) -> [f64; 2] {
        let p = &self.phi;
        [
            p[0][0] as f64 * x[0] + p[1][0] as f64 * x[1],
            p[0][1] as f64 * x[0] + p[1][1] as f64 * x[1],
        ]
    }

    /// `<a, x>`, the logarithm of the exponential factor of the action.
    pub fn log_weight(&self, x: [f64; 2]) -> f64 {
        self.a.dot_real(x)
    }

    /// The map with `det Phi = 1` taking `[o, e1]` onto `s`.
    pub fn map_base_segment_to(s: &PrimitiveSegment) -> Result<Self, GeomError> {
        let s = PrimitiveSegment::new(s.p, s.q)?;
        let d = s.direction();
        let (_, alpha, beta) = ext_gcd(d.u, d.v);
        let (mut c1, mut c2) = (-beta, alpha);
        if d.u != 0 {
            let r = c1.rem_euclid(d.u.abs());
            let k = (r - c1) / d.u;
            c1 = r;
            c2 += k * d.v;
        } else {
            let r = c2.rem_euclid(d.v.abs());
            let k = (r - c2) / d.v;
            c2 = r;
            c1 += k * d.u;
        }
        Self::new([[d.u, c1], [d.v, c2]], s.p)
    }

    /// The map `Phi = [v1 - v0 | v2 - v0]`, `a = v0` taking the base triangle onto `e`.
    pub fn map_base_triangle_to(e: &EmptyTriangle) -> Result<Self, GeomError> {
        let c1 = e.v1 - e.v0;
        let c2 = e.v2 - e.v0;
        let phi = [[c1.u, c2.u], [c1.v, c2.v]];
        if det2(&phi) != 1 {
            return Err(GeomError::NotUnimodularTriangle(e.v0, e.v1, e.v2));
        }
        Ok(UnimodularAffine { phi, a: e.v0 })
    }
}

impl fmt::Display for UnimodularAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x -> [[{}, {}], [{}, {}]] x + {}",
            self.phi[0][0], self.phi[0][1], self.phi[1][0], self.phi[1][1], self.a
        )
    }
}

struct Acted {
    map: UnimodularAffine,
    inner: ScalarField,
}

impl Field for Acted {
    fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_scaled(x, y, 0.0)
    }

    fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        let p = [x, y];
        let q = self.map.transpose_apply(p);
        self.inner
            .eval_scaled(q[0], q[1], log_scale + self.map.log_weight(p))
    }
}

/// `(A · f)(x) = e^{<a,x>} f(Phi^T x)`.
pub fn act_on_field(a: &UnimodularAffine, f: &ScalarField) -> ScalarField {
    ScalarField::new(Acted {
        map: *a,
        inner: f.clone(),
    })
}
