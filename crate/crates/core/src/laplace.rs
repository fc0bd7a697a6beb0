//! Reference values for the positive Laplace transform
//! `L(P)(x) = ∫_P e^{<x, y>} dy` and the closed-form analytic `f2` example.

use std::sync::OnceLock;

use thiserror::Error;

use crate::field::scale_exp;
use crate::geom::{EmptyTriangle, LatticePolygon};
use crate::kernel::{exp_divdiff2, phi_stable};
use crate::unimodular::UnimodularAffine;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("quadrature did not converge within depth {depth}; best estimate {best}")]
    NoConvergence { depth: u32, best: f64 },
}

pub const MAX_DEPTH: u32 = 24;

/// Transform of the base triangle, `exp[0, x1, x2]`.
pub fn laplace_base_triangle(x1: f64, x2: f64) -> f64 {
    exp_divdiff2(0.0, x1, x2)
}

pub fn laplace_triangle(e: &EmptyTriangle, x: [f64; 2]) -> f64 {
    let m = UnimodularAffine::map_base_triangle_to(e).expect("empty triangles are normalized");
    let y = m.transpose_apply(x);
    scale_exp(laplace_base_triangle(y[0], y[1]), m.log_weight(x))
}

/// Zero for polygons of dimension below two.
pub fn laplace_polygon(p: &LatticePolygon, x: [f64; 2]) -> f64 {
    match p.empty_triangulation() {
        Ok(tris) => tris.iter().map(|t| laplace_triangle(t, x)).sum(),
        Err(_) => 0.0,
    }
}

const GAUSS_POINTS: usize = 6;

/// Collapsed Gauss product rule on the reference triangle:
/// `(xi, eta, weight)` with weights summing to 1/2.
fn reference_rule() -> &'static [(f64, f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let (nodes, weights) = gauss_legendre(GAUSS_POINTS);
        let mut rule = Vec::with_capacity(GAUSS_POINTS * GAUSS_POINTS);
        for (s, ws) in nodes.iter().zip(&weights) {
            for (t, wt) in nodes.iter().zip(&weights) {
                rule.push((*s, (1.0 - s) * t, ws * wt * (1.0 - s)));
            }
        }
        rule
    })
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let k = k as f64;
                (p0, p1) = (p1, ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k);
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - z));
        weights.push(1.0 / ((1.0 - z * z) * dp * dp));
    }
    (nodes, weights)
}

type Tri = [[f64; 2]; 3];

fn rule_on(t: &Tri, x: [f64; 2]) -> f64 {
    let e1 = [t[1][0] - t[0][0], t[1][1] - t[0][1]];
    let e2 = [t[2][0] - t[0][0], t[2][1] - t[0][1]];
    let jac = (e1[0] * e2[1] - e1[1] * e2[0]).abs();
    let mut sum = 0.0;
    for &(xi, eta, w) in reference_rule() {
        let p = [
            t[0][0] + xi * e1[0] + eta * e2[0],
            t[0][1] + xi * e1[1] + eta * e2[1],
        ];
        sum += w * (x[0] * p[0] + x[1] * p[1]).exp();
    }
    sum * jac
}

fn split(t: &Tri) -> [Tri; 4] {
    let mid = |a: [f64; 2], b: [f64; 2]| [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
    let (m01, m12, m20) = (mid(t[0], t[1]), mid(t[1], t[2]), mid(t[2], t[0]));
    [
        [t[0], m01, m20],
        [m01, t[1], m12],
        [m20, m12, t[2]],
        [m12, m20, m01],
    ]
}

struct Adaptive {
    x: [f64; 2],
    converged: bool,
    evaluations: usize,
}

const MAX_EVALUATIONS: usize = 4_000_000;

impl Adaptive {
    fn run(&mut self, t: &Tri, coarse: f64, tol: f64, depth: u32) -> f64 {
        let kids = split(t);
        let vals: Vec<f64> = kids.iter().map(|k| rule_on(k, self.x)).collect();
        self.evaluations += 4;
        let fine: f64 = vals.iter().sum();
        if (fine - coarse).abs() <= tol {
            return fine;
        }
        if depth >= MAX_DEPTH || self.evaluations >= MAX_EVALUATIONS {
            self.converged = false;
            return fine;
        }
        kids.iter()
            .zip(&vals)
            .map(|(k, &v)| self.run(k, v, 0.25 * tol, depth + 1))
            .sum()
    }
}

/// Adaptive quadrature of `∫_P e^{<x, y>} dy` over a fan triangulation.
///
/// The error budget is `tol * max(1, |estimate|)`, distributed by area.
pub fn quadrature_polygon(
    p: &LatticePolygon,
    x: [f64; 2],
    tol: f64,
) -> Result<f64, QuadratureError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(QuadratureError::BadTolerance(tol));
    }
    if p.dim() < 2 {
        return Ok(0.0);
    }
    let vs: Vec<[f64; 2]> = p
        .vertices()
        .iter()
        .map(|v| [v.u as f64, v.v as f64])
        .collect();
    let fan: Vec<Tri> = (1..vs.len() - 1)
        .map(|i| [vs[0], vs[i], vs[i + 1]])
        .collect();
    let coarse: Vec<f64> = fan.iter().map(|t| rule_on(t, x)).collect();
    let estimate: f64 = coarse.iter().sum();
    let budget = tol * estimate.abs().max(1.0);
    let area = p.doubled_area() as f64;
    let mut ad = Adaptive {
        x,
        converged: true,
        evaluations: 0,
    };
    let mut total = 0.0;
    for (t, &c) in fan.iter().zip(&coarse) {
        let e1 = [t[1][0] - t[0][0], t[1][1] - t[0][1]];
        let e2 = [t[2][0] - t[0][0], t[2][1] - t[0][1]];
        let share = (e1[0] * e2[1] - e1[1] * e2[0]).abs() / area;
        total += ad.run(t, c, budget * share, 0);
    }
    if ad.converged {
        Ok(total)
    } else {
        Err(QuadratureError::NoConvergence {
            depth: MAX_DEPTH,
            best: total,
        })
    }
}

/// `h_k(x, y) = sum_{i=0}^{k} x^i y^(k-i)`.
fn complete_homogeneous(k: u32, x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    let mut xi = 1.0;
    for i in 0..=k {
        s += xi * y.powi((k - i) as i32);
        xi *= x;
    }
    s
}

/// The analytic simple kernel
/// `(phi(y) A(x, y) - phi(x) A(y, x)) / (x - y)` with
/// `A(x, y) = x^4 - 4x^3 y + x^2 y^2 + 6 x y^3 - 3 y^4`,
/// evaluated without the removable singularity at `x = y`.
pub fn analytic_example_f2(x: f64, y: f64) -> f64 {
    const TERMS: [(u32, u32, f64); 5] = [
        (4, 0, 1.0),
        (3, 1, -4.0),
        (2, 2, 1.0),
        (1, 3, 6.0),
        (0, 4, -3.0),
    ];
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let py = phi_stable(y);
    let dd = exp_divdiff2(0.0, x, y);
    let mut sum = 0.0;
    for &(a, b, c) in &TERMS {
        // (x^a y^b - x^b y^a) / (x - y)
        let quotient = match a.cmp(&b) {
            std::cmp::Ordering::Greater => {
                x.powi(b as i32) * y.powi(b as i32) * complete_homogeneous(a - b - 1, x, y)
            }
            std::cmp::Ordering::Less => {
                -x.powi(a as i32) * y.powi(a as i32) * complete_homogeneous(b - a - 1, x, y)
            }
            std::cmp::Ordering::Equal => 0.0,
        };
        sum += c * (py * quotient - dd * x.powi(b as i32) * y.powi(a as i32));
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::LatticePoint;

    const E: f64 = std::f64::consts::E;

    fn direct(x1: f64, x2: f64) -> f64 {
        (x1 * x2.exp() - x2 * x1.exp() + x2 - x1) / (x1 * x2 * (x2 - x1))
    }

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let (n, w) = gauss_legendre(GAUSS_POINTS);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let m11: f64 = n.iter().zip(&w).map(|(x, w)| w * x.powi(11)).sum();
        assert!((m11 - 1.0 / 12.0).abs() < 1e-15);
        let total: f64 = reference_rule().iter().map(|r| r.2).sum();
        assert!((total - 0.5).abs() < 1e-15);
        // ∫_T xi^4 eta^6 = 4! 6! / 12!
        let m: f64 = reference_rule()
            .iter()
            .map(|&(a, b, w)| w * a.powi(4) * b.powi(6))
            .sum();
        assert!((m - 24.0 * 720.0 / 479001600.0).abs() < 1e-18);
    }

    #[test]
    fn base_triangle_anchors() {
        let t = EmptyTriangle::new(
            LatticePoint::new(0, 0),
            LatticePoint::new(1, 0),
            LatticePoint::new(0, 1),
        )
        .unwrap();
        assert_eq!(laplace_triangle(&t, [0.0, 0.0]), 0.5);
        let want = 1.476246221006279878254926258934841;
        assert!((laplace_triangle(&t, [1.0, 2.0]) - want).abs() < 1e-15);
        assert!((laplace_base_triangle(1.0, 1.0) - 1.0).abs() < 1e-15);
        let tp = LatticePolygon::base_triangle();
        let q = quadrature_polygon(&tp, [3.0, 3.0], 1e-12).unwrap();
        assert!((q - laplace_base_triangle(3.0, 3.0)).abs() < 1e-11);
        let q0 = quadrature_polygon(&tp, [0.0, 0.0], 1e-10).unwrap();
        assert!((q0 - 0.5).abs() < 1e-10);
        let q12 = quadrature_polygon(&tp, [1.0, 2.0], 1e-10).unwrap();
        assert!((q12 - want).abs() < 1e-9);
    }

    #[test]
    fn polygon_values() {
        let sq = LatticePolygon::rectangle(0, 0, 1, 1).unwrap();
        assert!((laplace_polygon(&sq, [1.0, 1.0]) - (E - 1.0).powi(2)).abs() < 1e-14);
        assert!((laplace_polygon(&sq, [0.0, 0.0]) - 1.0).abs() < 1e-15);
        let big = LatticePolygon::rectangle(0, 0, 2, 2).unwrap();
        let exact = (1.0 - (-2.0f64).exp()) * (6.0f64.exp() - 1.0) / 3.0;
        let lp = laplace_polygon(&big, [-1.0, 3.0]);
        assert!((lp - exact).abs() < 1e-12 * exact);
        let q = quadrature_polygon(&big, [-1.0, 3.0], 1e-10).unwrap();
        assert!((q - lp).abs() < 1e-8 * lp);
        let seg = LatticePolygon::point(LatticePoint::new(1, 1));
        assert_eq!(laplace_polygon(&seg, [1.0, 1.0]), 0.0);
    }

    #[test]
    fn divided_difference_matches_direct_formula() {
        for i in 0..40 {
            for j in 0..40 {
                let (a, b) = (-2.95 + 0.15 * i as f64, -2.9 + 0.15 * j as f64);
                if a.abs() > 1e-3 && b.abs() > 1e-3 && (a - b).abs() > 1e-3 {
                    let d = direct(a, b);
                    assert!(
                        (laplace_base_triangle(a, b) - d).abs() <= 1e-12 * d.abs(),
                        "({a}, {b})"
                    );
                }
            }
        }
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        let tp = LatticePolygon::base_triangle();
        assert_eq!(
            quadrature_polygon(&tp, [0.0, 0.0], 0.0),
            Err(QuadratureError::BadTolerance(0.0))
        );
    }

    #[test]
    fn analytic_example_values() {
        let cases = [
            (1.0, 1.0, -7.873127313836180941441),
            (1.0, 2.0, 4.428738663018839634764778776804524),
            (0.5, -0.25, 0.7313813283419445410239105795018734),
            (2.0, 2.0, -135.7811219786130045446085492115),
            (1e-3, 2e-3, 1.5015008753751292e-12),
        ];
        for (x, y, want) in cases {
            let v = analytic_example_f2(x, y);
            assert!(
                (v - want).abs() <= 1e-13 * (1.0 + want.abs()),
                "({x}, {y}) -> {v}"
            );
        }
        assert_eq!(analytic_example_f2(0.0, 0.0), 0.0);
        assert_eq!(
            analytic_example_f2(0.3, -1.7),
            analytic_example_f2(-1.7, 0.3)
        );
    }
}
