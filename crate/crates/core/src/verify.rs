//! Randomized verification suites over the functional equations, the
//! valuation property, covariance, the Fibonacci partition and the Laplace
//! transform.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::field::ScalarField;
use crate::geom::LatticePolygon;
use crate::kernel::{descent_steps, region_tag, RegionTag, RhoKernel, RAY_BAND, TAU};
use crate::laplace::quadrature_polygon;
use crate::sampling::{
    random_convex_pair, random_polygon, random_polygon_2d, random_unimodular, rng, sample_points,
    PairKind,
};
use crate::valuation::{ResidualReport, Valuation};

pub const VALUATION_TOL: f64 = 1e-9;
pub const COVARIANCE_TOL: f64 = 1e-9;
pub const EQUATION_TOL: f64 = 1e-9;
pub const LAPLACE_TOL: f64 = 1e-8;
pub const QUADRATURE_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Valuation,
    Covariance,
    Equations,
    Fibonacci,
    Laplace,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Valuation,
        Suite::Covariance,
        Suite::Equations,
        Suite::Fibonacci,
        Suite::Laplace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Valuation => "valuation",
            Suite::Covariance => "covariance",
            Suite::Equations => "equations",
            Suite::Fibonacci => "fibonacci",
            Suite::Laplace => "laplace",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Valuation => VALUATION_TOL,
            Suite::Covariance => COVARIANCE_TOL,
            Suite::Equations => EQUATION_TOL,
            Suite::Fibonacci => 0.0,
            Suite::Laplace => LAPLACE_TOL,
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::Valuation => 0x5641_4c55,
            Suite::Covariance => 0x434f_5641,
            Suite::Equations => 0x4551_4e53,
            Suite::Fibonacci => 0x4649_424f,
            Suite::Laplace => 0x4c41_504c,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `"all"` yields every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    s.parse().map(|x| vec![x])
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub max_residual: f64,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: Suite, cases: usize, max_residual: f64) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            cases,
            max_residual,
            pass: max_residual <= suite.tolerance(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn rel(lhs: f64, rhs: f64, scale: f64) -> f64 {
    (lhs - rhs).abs() / (1.0 + scale)
}

/// Residuals of `f2(-x+y, -x) = e^-x f2(x, y)`,
/// `f2(x, y) + e^(x+y) f2(-x, -y) = f2(x, x+y) + f2(x+y, y)`,
/// `f2(x, y) = f2(y, x)` and
/// `f2(x, y) + e^x f2(y-x, y) = f2(x, x+y) + f2(y, x+y)`.
pub fn equation_residuals(f2: &ScalarField, x: f64, y: f64) -> [f64; 4] {
    let f = |a: f64, b: f64| f2.eval(a, b);
    let base = f(x, y);

    let l1 = f(-x + y, -x);
    let r1 = (-x).exp() * base;
    let s1 = rel(l1, r1, l1.abs().max(r1.abs()));

    let t = [base, (x + y).exp() * f(-x, -y), f(x, x + y), f(x + y, y)];
    let s2 = rel(
        t[0] + t[1],
        t[2] + t[3],
        t.iter().fold(0.0f64, |m, v| m.max(v.abs())),
    );

    let s3 = if base == f(y, x) { 0.0 } else { f64::INFINITY };

    let u = [base, x.exp() * f(y - x, y), f(x, x + y), f(y, x + y)];
    let s4 = rel(
        u[0] + u[1],
        u[2] + u[3],
        u.iter().fold(0.0f64, |m, v| m.max(v.abs())),
    );

    [s1, s2, s3, s4]
}

/// Residual of `(2x + y) rho(x, y) = (x + y) rho(x, x + y) + x rho(x + y, x)`.
pub fn rho_residual(rho: &RhoKernel, x: f64, y: f64) -> f64 {
    let r = |a: f64, b: f64| rho.eval(a, b).unwrap_or(f64::NAN);
    let t = [
        (2.0 * x + y) * r(x, y),
        (x + y) * r(x, x + y),
        x * r(x + y, x),
    ];
    rel(
        t[0],
        t[1] + t[2],
        t.iter().fold(0.0f64, |m, v| m.max(v.abs())),
    )
}

/// A random point of `{x > y > 0}` outside the ray band, with `x, y <= 8`.
pub fn random_cone_point<R: Rng>(rng: &mut R) -> (f64, f64) {
    loop {
        let y: f64 = rng.gen_range(1e-3..8.0);
        let x: f64 = rng.gen_range(0.0..8.0);
        if x > y && (x - TAU * y).abs() > 10.0 * RAY_BAND * (1.0 + x) {
            return (x, y);
        }
    }
}

/// Number of points where the Fibonacci-ratio index disagrees with brute-force descent.
pub fn fibonacci_mismatches<R: Rng>(rng: &mut R, cases: usize) -> usize {
    (0..cases)
        .filter(|_| {
            let (x, y) = random_cone_point(rng);
            let tag = region_tag(x, y).ok();
            let steps = descent_steps(x, y);
            !matches!((tag, steps), (Some(RegionTag::OmegaIndex(n)), Some(s)) if s == n + 1)
        })
        .count()
}

const POINTS_PER_CASE: usize = 8;

/// Runs one suite; `cases` is the number of random instances.
pub fn run_suite(suite: Suite, v: &Valuation, seed: u64, cases: usize) -> SuiteReport {
    let mut r = rng(seed ^ suite.salt());
    let max = match suite {
        Suite::Valuation => {
            let mut rep = ResidualReport::new();
            let kinds = [
                PairKind::Segments,
                PairKind::Slices,
                PairKind::Slices,
                PairKind::Nested,
            ];
            for i in 0..cases {
                let (p, q) = random_convex_pair(&mut r, kinds[i % kinds.len()]);
                let xs = sample_points(POINTS_PER_CASE, r.gen());
                rep.merge(
                    &v.check_valuation(&p, &q, &xs)
                        .expect("generated union is convex"),
                );
                let h = random_polygon_2d(&mut r, 8, 4);
                rep.merge(
                    &v.check_triangulation_independence(&h, &xs)
                        .expect("polygon is 2d"),
                );
            }
            rep.merge(&strip_residual(v, &sample_points(POINTS_PER_CASE, seed)));
            rep.max_residual
        }
        Suite::Covariance => {
            let mut rep = ResidualReport::new();
            for _ in 0..cases {
                let a = random_unimodular(&mut r, 3, 5);
                let p = random_polygon(&mut r, 12, 5);
                let xs = sample_points(POINTS_PER_CASE, r.gen());
                rep.merge(&v.check_covariance(&p, &a, &xs).expect("image is in range"));
            }
            rep.max_residual
        }
        Suite::Equations => {
            let mut worst = 0.0f64;
            for _ in 0..cases {
                let (x, y) = (r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0));
                for s in equation_residuals(v.f2(), x, y) {
                    worst = max_nan(worst, s);
                }
                if let Some(rho) = v.rho() {
                    let (a, b) = (r.gen_range(0.0..8.0), r.gen_range(0.0..8.0));
                    worst = max_nan(worst, rho_residual(rho, a, b));
                }
            }
            worst
        }
        Suite::Fibonacci => fibonacci_mismatches(&mut r, cases) as f64,
        Suite::Laplace => {
            let lap = Valuation::laplace();
            let mut worst = 0.0f64;
            for _ in 0..cases {
                let p = random_polygon_2d(&mut r, 12, 5);
                let x = [r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0)];
                let z = lap.evaluate(&p, x);
                let q = quadrature_polygon(&p, x, QUADRATURE_TOL).unwrap_or(f64::NAN);
                worst = max_nan(worst, (z - q).abs() / (1.0 + q.abs()));
            }
            worst
        }
    };
    SuiteReport::new(suite, cases, max)
}

fn max_nan(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Inclusion-exclusion on `[0,3] x [0,1]` cut into three unit strips:
/// `Z(S1 ∪ S2 ∪ S3) = Z(S1) + Z(S2) + Z(S3) - Z(S1 ∩ S2) - Z(S2 ∩ S3)`
/// (the triple and `S1 ∩ S3` terms vanish).
pub fn strip_residual(v: &Valuation, xs: &[[f64; 2]]) -> ResidualReport {
    let rect = |a, b| LatticePolygon::rectangle(a, 0, b, 1).unwrap();
    let whole = rect(0, 3);
    let pieces = [rect(0, 1), rect(1, 2), rect(2, 3)];
    let cuts = [rect(1, 1), rect(2, 2)];
    let mut rep = ResidualReport::new();
    for &x in xs {
        let direct = v.evaluate(&whole, x);
        let alt: f64 = pieces.iter().map(|p| v.evaluate(p, x)).sum::<f64>()
            - cuts.iter().map(|c| v.evaluate(c, x)).sum::<f64>();
        rep.record((direct - alt).abs() / (1.0 + direct.abs()), x);
    }
    rep
}
