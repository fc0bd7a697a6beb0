use std::cmp::Ordering;

use super::{convex_hull, GeomError, LatticePoint, LatticePolygon};

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Q {
    num: i128,
    den: i128,
}

impl Q {
    fn new(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        let g = gcd128(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Q {
            num: s * num / g,
            den: s * den / g,
        }
    }

    fn int(n: i128) -> Q {
        Q { num: n, den: 1 }
    }

    fn add(self, o: Q) -> Q {
        Q::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn sub(self, o: Q) -> Q {
        Q::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn mul(self, o: Q) -> Q {
        Q::new(self.num * o.num, self.den * o.den)
    }

    fn div(self, o: Q) -> Q {
        Q::new(self.num * o.den, self.den * o.num)
    }

    fn signum(self) -> i128 {
        self.num.signum()
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// `n . x - c`, constrained to be `>= 0` or `== 0`.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    n: (i128, i128),
    c: i128,
    equality: bool,
}

impl Constraint {
    fn at(&self, p: LatticePoint) -> i128 {
        self.n.0 * p.u as i128 + self.n.1 * p.v as i128 - self.c
    }

    fn at_q(&self, p: (Q, Q)) -> Q {
        p.0.mul(Q::int(self.n.0))
            .add(p.1.mul(Q::int(self.n.1)))
            .sub(Q::int(self.c))
    }
}

fn line_through(p: LatticePoint, q: LatticePoint, equality: bool) -> Constraint {
    let (du, dv) = ((q.u - p.u) as i128, (q.v - p.v) as i128);
    let n = (-dv, du);
    Constraint {
        n,
        c: n.0 * p.u as i128 + n.1 * p.v as i128,
        equality,
    }
}

fn constraints(p: &LatticePolygon) -> Vec<Constraint> {
    let vs = p.vertices();
    match p.dim() {
        0 => vec![
            Constraint {
                n: (1, 0),
                c: vs[0].u as i128,
                equality: true,
            },
            Constraint {
                n: (0, 1),
                c: vs[0].v as i128,
                equality: true,
            },
        ],
        1 => {
            let (a, b) = (vs[0], vs[1]);
            let d = ((b.u - a.u) as i128, (b.v - a.v) as i128);
            vec![
                line_through(a, b, true),
                Constraint {
                    n: d,
                    c: d.0 * a.u as i128 + d.1 * a.v as i128,
                    equality: false,
                },
                Constraint {
                    n: (-d.0, -d.1),
                    c: -(d.0 * b.u as i128 + d.1 * b.v as i128),
                    equality: false,
                },
            ]
        }
        _ => (0..vs.len())
            .map(|i| line_through(vs[i], vs[(i + 1) % vs.len()], false))
            .collect(),
    }
}

/// Parameter interval `{t in [0,1] : s + t (e - s) in P}`.
fn segment_interval(s: LatticePoint, e: LatticePoint, cons: &[Constraint]) -> Option<(Q, Q)> {
    let mut lo = Q::int(0);
    let mut hi = Q::int(1);
    for c in cons {
        let alpha = c.at(s);
        let beta = c.at(e) - alpha;
        if c.equality {
            if beta == 0 {
                if alpha != 0 {
                    return None;
                }
            } else {
                let t = Q::new(-alpha, beta);
                lo = lo.max(t);
                hi = hi.min(t);
            }
        } else if beta > 0 {
            lo = lo.max(Q::new(-alpha, beta));
        } else if beta < 0 {
            hi = hi.min(Q::new(alpha, -beta));
        } else if alpha < 0 {
            return None;
        }
        if lo > hi {
            return None;
        }
    }
    Some((lo, hi))
}

fn segment_covered(s: LatticePoint, e: LatticePoint, a: &[Constraint], b: &[Constraint]) -> bool {
    let mut ivs: Vec<(Q, Q)> = [segment_interval(s, e, a), segment_interval(s, e, b)]
        .into_iter()
        .flatten()
        .collect();
    ivs.sort();
    let mut reach = Q::int(0);
    let mut started = false;
    for (lo, hi) in ivs {
        if lo > reach || (!started && lo != Q::int(0)) {
            return false;
        }
        started = true;
        reach = reach.max(hi);
    }
    started && reach == Q::int(1)
}

/// `P ∪ Q` if it is convex.
///
/// The union of two convex sets is convex exactly when the boundary of the
/// hull of the union lies inside the union, which is decided edge by edge in
/// rational arithmetic.
pub fn convex_union(p: &LatticePolygon, q: &LatticePolygon) -> Result<LatticePolygon, GeomError> {
    let mut all = p.vertices().to_vec();
    all.extend_from_slice(q.vertices());
    let hull = convex_hull(&all)?;
    let (cp, cq) = (constraints(p), constraints(q));
    let vs = hull.vertices();
    let ok = match hull.dim() {
        0 => true,
        1 => segment_covered(vs[0], vs[1], &cp, &cq),
        _ => (0..vs.len()).all(|i| segment_covered(vs[i], vs[(i + 1) % vs.len()], &cp, &cq)),
    };
    if ok {
        Ok(hull)
    } else {
        Err(GeomError::NonConvexUnion)
    }
}

fn clip(poly: Vec<(Q, Q)>, c: &Constraint, sign: i128) -> Vec<(Q, Q)> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 2);
    let val = |p: (Q, Q)| c.at_q(p).mul(Q::int(sign));
    for i in 0..m {
        let prev = poly[(i + m - 1) % m];
        let cur = poly[i];
        let (lp, lc) = (val(prev), val(cur));
        let (pin, cin) = (lp.signum() >= 0, lc.signum() >= 0);
        if cin != pin {
            let t = lp.div(lp.sub(lc));
            out.push((
                prev.0.add(t.mul(cur.0.sub(prev.0))),
                prev.1.add(t.mul(cur.1.sub(prev.1))),
            ));
        }
        if cin {
            out.push(cur);
        }
    }
    out
}

/// `P ∩ Q`, or `None` when empty.
///
/// Fails when the intersection has a vertex off the lattice, which cannot
/// happen when `P ∪ Q` is convex.
pub fn intersection(
    p: &LatticePolygon,
    q: &LatticePolygon,
) -> Result<Option<LatticePolygon>, GeomError> {
    let mut poly: Vec<(Q, Q)> = p
        .vertices()
        .iter()
        .map(|v| (Q::int(v.u as i128), Q::int(v.v as i128)))
        .collect();
    for c in constraints(q) {
        poly = clip(poly, &c, 1);
        if c.equality {
            poly = clip(poly, &c, -1);
        }
        if poly.is_empty() {
            return Ok(None);
        }
    }
    let mut pts = Vec::with_capacity(poly.len());
    for (u, v) in poly {
        if u.den != 1 || v.den != 1 {
            return Err(GeomError::NonLatticeIntersection);
        }
        pts.push(LatticePoint::new(u.num as i64, v.num as i64));
    }
    convex_hull(&pts).map(Some)
}
