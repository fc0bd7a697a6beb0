//! Deterministic sample points and random test objects.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{convex_hull, gcd, LatticePoint, LatticePolygon};
use crate::unimodular::UnimodularAffine;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut r = 0.0;
    while i > 0 {
        r += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    r
}

/// `n` Halton points (bases 2 and 3) in `[-3, 3]^2`; a nonzero seed applies
/// a random shift modulo one.
pub fn sample_points(n: usize, seed: u64) -> Vec<[f64; 2]> {
    let shift = if seed == 0 {
        [0.0, 0.0]
    } else {
        let mut r = rng(seed);
        [r.gen::<f64>(), r.gen::<f64>()]
    };
    (1..=n as u64)
        .map(|i| {
            let u = (radical_inverse(i, 2) + shift[0]).fract();
            let v = (radical_inverse(i, 3) + shift[1]).fract();
            [6.0 * u - 3.0, 6.0 * v - 3.0]
        })
        .collect()
}

pub fn random_point<R: Rng>(rng: &mut R, bound: i64) -> LatticePoint {
    LatticePoint::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Hull of up to `max_points` random lattice points in `[-bound, bound]^2`.
pub fn random_polygon<R: Rng>(rng: &mut R, max_points: usize, bound: i64) -> LatticePolygon {
    let k = rng.gen_range(1..=max_points);
    let pts: Vec<LatticePoint> = (0..k).map(|_| random_point(rng, bound)).collect();
    convex_hull(&pts).expect("points are in range")
}

/// As [`random_polygon`], retrying until the hull is two-dimensional.
pub fn random_polygon_2d<R: Rng>(rng: &mut R, max_points: usize, bound: i64) -> LatticePolygon {
    loop {
        let k = rng.gen_range(3..=max_points.max(3));
        let pts: Vec<LatticePoint> = (0..k).map(|_| random_point(rng, bound)).collect();
        let p = convex_hull(&pts).expect("points are in range");
        if p.dim() == 2 {
            return p;
        }
    }
}

pub fn random_unimodular<R: Rng>(
    rng: &mut R,
    entry_bound: i64,
    shift_bound: i64,
) -> UnimodularAffine {
    loop {
        let m = [
            [
                rng.gen_range(-entry_bound..=entry_bound),
                rng.gen_range(-entry_bound..=entry_bound),
            ],
            [
                rng.gen_range(-entry_bound..=entry_bound),
                rng.gen_range(-entry_bound..=entry_bound),
            ],
        ];
        if let Ok(a) = UnimodularAffine::new(m, random_point(rng, shift_bound)) {
            return a;
        }
    }
}

fn random_direction<R: Rng>(rng: &mut R, bound: i64) -> LatticePoint {
    loop {
        let d = random_point(rng, bound);
        if gcd(d.u, d.v) == 1 {
            return d;
        }
    }
}

/// Kind of a generated pair with convex union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    Segments,
    Slices,
    Nested,
}

/// Two lattice polygons whose union is convex.
///
/// `Segments` gives overlapping or touching collinear segments, `Slices`
/// cuts a random polygon by two overlapping half-planes, and `Nested` pairs
/// a polygon with a hull of some of its lattice points.
pub fn random_convex_pair<R: Rng>(rng: &mut R, kind: PairKind) -> (LatticePolygon, LatticePolygon) {
    loop {
        let pair = match kind {
            PairKind::Segments => {
                let d = random_direction(rng, 3);
                let base = random_point(rng, 3);
                let i0 = rng.gen_range(-2..=1);
                let i1 = rng.gen_range(i0..=2);
                let j0 = rng.gen_range(i0..=i1);
                let j1 = rng.gen_range(j0..=3);
                let seg =
                    |a: i64, b: i64| convex_hull(&[base + d.scale(a), base + d.scale(b)]).unwrap();
                (seg(i0, i1), seg(j0, j1))
            }
            PairKind::Slices => {
                let h = random_polygon_2d(rng, 8, 4);
                let n = random_direction(rng, 2);
                let pts = h.lattice_points().all();
                let vals: Vec<i64> = pts.iter().map(|z| n.u * z.u + n.v * z.v).collect();
                let lo = *vals.iter().min().unwrap();
                let hi = *vals.iter().max().unwrap();
                let c0 = rng.gen_range(lo..=hi);
                let c1 = rng.gen_range(c0..=hi);
                let below: Vec<LatticePoint> = pts
                    .iter()
                    .zip(&vals)
                    .filter(|(_, &c)| c <= c1)
                    .map(|(z, _)| *z)
                    .collect();
                let above: Vec<LatticePoint> = pts
                    .iter()
                    .zip(&vals)
                    .filter(|(_, &c)| c >= c0)
                    .map(|(z, _)| *z)
                    .collect();
                (convex_hull(&below).unwrap(), convex_hull(&above).unwrap())
            }
            PairKind::Nested => {
                let h = random_polygon(rng, 8, 4);
                let mut pts = h.lattice_points().all();
                pts.shuffle(rng);
                let k = rng.gen_range(1..=pts.len().min(4));
                let inner = convex_hull(&pts[..k]).unwrap();
                if rng.gen_bool(0.5) {
                    (h, inner)
                } else {
                    (inner, h)
                }
            }
        };
        if crate::geom::convex_union(&pair.0, &pair.1).is_ok() {
            return pair;
        }
    }
}

/// A random polynomial of total degree at most `degree` with coefficients
/// in `[-1, 1]`, written in the seed expression language.
pub fn random_polynomial<R: Rng>(rng: &mut R, degree: u32) -> String {
    let mut terms = Vec::new();
    for total in 0..=degree {
        for i in 0..=total {
            let c: f64 = rng.gen_range(-1.0..1.0);
            let c = (c * 1000.0).round() / 1000.0;
            let mut t = format!("{c}");
            match i {
                0 => {}
                1 => t.push_str("*x"),
                _ => t.push_str(&format!("*x^{i}")),
            }
            match total - i {
                0 => {}
                1 => t.push_str("*y"),
                j => t.push_str(&format!("*y^{j}")),
            }
            terms.push(format!("({t})"));
        }
    }
    terms.join(" + ")
}
