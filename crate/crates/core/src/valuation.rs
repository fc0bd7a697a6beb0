//! Assembly of `Z = Z1 + Z2` from kernel data and the residual checkers.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::ExprError;
use crate::field::{scale_exp, ScalarField};
use crate::geom::{convex_union, intersection, EmptyTriangle, GeomError, LatticePolygon};
use crate::kernel::{F1Kernel, F2Kernel, RhoKernel};
use crate::laplace::analytic_example_f2;
use crate::unimodular::UnimodularAffine;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("invalid kernel JSON: {0}")]
    Json(String),
    #[error("invalid f0 value '{0}'")]
    F0(String),
    #[error("in {field}: {source}")]
    Expr {
        field: &'static str,
        #[source]
        source: ExprError,
    },
}

/// Classification data of one valuation: the constant `f0`, the seed of `f1`
/// on `Omega~1` and the seed of `rho` on `Omega~2`.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    pub f0: f64,
    pub f1_seed: ScalarField,
    pub rho_seed: ScalarField,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberOrText {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelFile {
    f0: NumberOrText,
    f1: String,
    rho: String,
}

impl KernelSpec {
    pub fn new(f0: f64, f1_seed: ScalarField, rho_seed: ScalarField) -> Self {
        KernelSpec {
            f0,
            f1_seed,
            rho_seed,
        }
    }

    /// `(0, 0, 1)`, the kernel of the positive Laplace transform.
    pub fn laplace() -> Self {
        Self::new(0.0, ScalarField::zero(), ScalarField::constant(1.0))
    }

    pub fn parse(f0: f64, f1: &str, rho: &str) -> Result<Self, SpecError> {
        let f1_seed = ScalarField::from_expr(f1).map_err(|source| SpecError::Expr {
            field: "f1",
            source,
        })?;
        let rho_seed = ScalarField::from_expr(rho).map_err(|source| SpecError::Expr {
            field: "rho",
            source,
        })?;
        Ok(Self::new(f0, f1_seed, rho_seed))
    }

    /// Reads `{"f0": "<number>", "f1": "<expr>", "rho": "<expr>"}`; `f0` may also be a JSON number.
    pub fn from_json(src: &str) -> Result<Self, SpecError> {
        let file: KernelFile =
            serde_json::from_str(src).map_err(|e| SpecError::Json(e.to_string()))?;
        let f0 = match file.f0 {
            NumberOrText::Number(v) => v,
            NumberOrText::Text(s) => s.trim().parse().map_err(|_| SpecError::F0(s.clone()))?,
        };
        if !f0.is_finite() {
            return Err(SpecError::F0(f0.to_string()));
        }
        Self::parse(f0, &file.f1, &file.rho)
    }
}

/// Neumaier-compensated sum.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// A translatively exponential, `GL(2, Z)` covariant valuation.
#[derive(Debug, Clone)]
pub struct Valuation {
    f0: f64,
    f1: F1Kernel,
    f2: ScalarField,
    rho: Option<Arc<RhoKernel>>,
}

impl Valuation {
    pub fn new(spec: &KernelSpec) -> Self {
        let rho = Arc::new(RhoKernel::new(spec.rho_seed.clone()));
        Valuation {
            f0: spec.f0,
            f1: F1Kernel::new(spec.f1_seed.clone()),
            f2: ScalarField::new(F2Kernel::new(rho.clone())),
            rho: Some(rho),
        }
    }

    pub fn laplace() -> Self {
        Self::new(&KernelSpec::laplace())
    }

    /// Replaces the simple part by an arbitrary `f2` field.
    pub fn with_f2(mut self, f2: ScalarField) -> Self {
        self.f2 = f2;
        self.rho = None;
        self
    }

    /// The simple valuation whose `f2` is the closed-form analytic example.
    pub fn analytic_example() -> Self {
        Valuation {
            f0: 0.0,
            f1: F1Kernel::new(ScalarField::zero()),
            f2: ScalarField::from_fn(analytic_example_f2),
            rho: None,
        }
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn f1(&self) -> &F1Kernel {
        &self.f1
    }

    pub fn f2(&self) -> &ScalarField {
        &self.f2
    }

    /// The `rho` kernel, unless `f2` was supplied directly.
    pub fn rho(&self) -> Option<&Arc<RhoKernel>> {
        self.rho.as_ref()
    }

    pub fn is_simple(&self) -> bool {
        self.f0 == 0.0 && self.f1.seed().as_constant() == Some(0.0)
    }

    pub fn evaluate(&self, p: &LatticePolygon, x: [f64; 2]) -> f64 {
        self.z1(p, x) + self.z2(p, x)
    }

    pub fn z1(&self, p: &LatticePolygon, x: [f64; 2]) -> f64 {
        let pts = p.lattice_points();
        let c = self.f0;
        match p.dim() {
            0 => scale_exp(c, pts.boundary[0].dot_real(x)),
            1 => {
                let mut sum = Sum::default();
                for s in p
                    .boundary_primitive_segments()
                    .expect("segment has boundary")
                {
                    sum.add(self.segment_term(&s, x));
                }
                let ends = p.vertices();
                for z in pts.boundary.iter().filter(|z| !ends.contains(z)) {
                    sum.add(-scale_exp(c, z.dot_real(x)));
                }
                sum.value()
            }
            _ => {
                let mut sum = Sum::default();
                for s in p
                    .boundary_primitive_segments()
                    .expect("polygon has boundary")
                {
                    sum.add(0.5 * self.segment_term(&s, x));
                }
                for z in &pts.interior {
                    sum.add(scale_exp(c, z.dot_real(x)));
                }
                sum.value()
            }
        }
    }

    fn segment_term(&self, s: &crate::geom::PrimitiveSegment, x: [f64; 2]) -> f64 {
        let m = UnimodularAffine::map_base_segment_to(s).expect("boundary segments are primitive");
        let y = m.transpose_apply(x);
        self.f1.eval_scaled(y[0], y[1], m.log_weight(x))
    }

    pub fn z2(&self, p: &LatticePolygon, x: [f64; 2]) -> f64 {
        match p.empty_triangulation() {
            Ok(tris) => self.z2_over(&tris, x),
            Err(_) => 0.0,
        }
    }

    /// `Z2` summed over a given empty triangulation.
    pub fn z2_over(&self, tris: &[EmptyTriangle], x: [f64; 2]) -> f64 {
        let mut sum = Sum::default();
        for t in tris {
            sum.add(self.triangle_term(t, x));
        }
        sum.value()
    }

    fn triangle_term(&self, t: &EmptyTriangle, x: [f64; 2]) -> f64 {
        let m = UnimodularAffine::map_base_triangle_to(t).expect("triangulation is normalized");
        let y = m.transpose_apply(x);
        self.f2.eval_scaled(y[0], y[1], m.log_weight(x))
    }

    /// `Z1(T)(x, y) = f1(x, y)/2 + f1(y, -x)/2 + e^x f1(-x + y, -x)/2`.
    pub fn z1_of_triangle_closed_form(&self, x: [f64; 2]) -> f64 {
        let (a, b) = (x[0], x[1]);
        0.5 * self.f1.eval(a, b)
            + 0.5 * self.f1.eval(b, -a)
            + 0.5 * self.f1.eval_scaled(-a + b, -a, a)
    }

    pub fn check_valuation(
        &self,
        p: &LatticePolygon,
        q: &LatticePolygon,
        xs: &[[f64; 2]],
    ) -> Result<ResidualReport, GeomError> {
        let union = convex_union(p, q)?;
        let inter = intersection(p, q)?;
        let mut rep = ResidualReport::new();
        for &x in xs {
            let zu = self.evaluate(&union, x);
            let zi = inter.as_ref().map_or(0.0, |i| self.evaluate(i, x));
            let lhs = self.evaluate(p, x) + self.evaluate(q, x);
            rep.record((lhs - zu - zi).abs() / (1.0 + zu.abs()), x);
        }
        Ok(rep)
    }

    pub fn check_covariance(
        &self,
        p: &LatticePolygon,
        a: &UnimodularAffine,
        xs: &[[f64; 2]],
    ) -> Result<ResidualReport, GeomError> {
        let image = a.apply_polygon(p)?;
        let mut rep = ResidualReport::new();
        for &x in xs {
            let lhs = self.evaluate(&image, x);
            let rhs = scale_exp(self.evaluate(p, a.transpose_apply(x)), a.log_weight(x));
            rep.record((lhs - rhs).abs() / (1.0 + lhs.abs()), x);
        }
        Ok(rep)
    }

    pub fn check_triangulation_independence(
        &self,
        p: &LatticePolygon,
        xs: &[[f64; 2]],
    ) -> Result<ResidualReport, GeomError> {
        let a = p.empty_triangulation()?;
        let b = p.alternative_triangulation()?;
        let mut rep = ResidualReport::new();
        for &x in xs {
            let (za, zb) = (self.z2_over(&a, x), self.z2_over(&b, x));
            rep.record((za - zb).abs() / (1.0 + za.abs()), x);
        }
        Ok(rep)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub argmax_point: [f64; 2],
    pub samples: usize,
}

impl ResidualReport {
    pub fn new() -> Self {
        ResidualReport {
            max_residual: 0.0,
            argmax_point: [0.0, 0.0],
            samples: 0,
        }
    }

    /// NaN residuals are sticky so that they surface as failures.
    pub fn record(&mut self, r: f64, x: [f64; 2]) {
        if self.samples == 0 || r > self.max_residual || (r.is_nan() && !self.max_residual.is_nan())
        {
            self.max_residual = r;
            self.argmax_point = x;
        }
        self.samples += 1;
    }

    pub fn merge(&mut self, other: &ResidualReport) {
        let samples = self.samples + other.samples;
        if other.samples > 0 {
            self.record(other.max_residual, other.argmax_point);
        }
        self.samples = samples;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Default for ResidualReport {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{convex_hull, LatticePoint};

    fn pt(u: i64, v: i64) -> LatticePoint {
        LatticePoint::new(u, v)
    }

    #[test]
    fn laplace_examples() {
        let v = Valuation::laplace();
        assert_eq!(
            v.evaluate(&LatticePolygon::base_triangle(), [0.0, 0.0]),
            0.5
        );
        let sq = LatticePolygon::rectangle(0, 0, 1, 1).unwrap();
        let want = 2.952492442012559756509852517869682;
        assert!((v.evaluate(&sq, [1.0, 1.0]) - want).abs() < 1e-14 * want);
        assert!(v.is_simple());
    }

    #[test]
    fn segment_example() {
        let spec = KernelSpec::parse(1.0, "1", "0").unwrap();
        let v = Valuation::new(&spec);
        let seg = convex_hull(&[pt(0, 0), pt(2, 0)]).unwrap();
        assert_eq!(v.evaluate(&seg, [0.0, 0.0]), 1.0);
        assert!(!v.is_simple());
    }

    #[test]
    fn z1_closed_form() {
        let v = Valuation::new(&KernelSpec::parse(0.0, "1", "0").unwrap());
        assert_eq!(v.z1_of_triangle_closed_form([0.0, 0.0]), 1.5);
        let t = LatticePolygon::base_triangle();
        for &x in &[[0.3, -1.2], [2.0, 1.0], [-2.5, 0.7]] {
            let a = v.z1_of_triangle_closed_form(x);
            assert!((a - v.z1(&t, x)).abs() < 1e-12 * (1.0 + a.abs()));
        }
        let zero = Valuation::laplace();
        assert_eq!(zero.z1_of_triangle_closed_form([1.0, 2.0]), 0.0);
    }

    #[test]
    fn kernel_json() {
        let s = KernelSpec::from_json(r#"{"f0": "0.5", "f1": "phi(x)", "rho": "x^2+1"}"#).unwrap();
        assert_eq!(s.f0, 0.5);
        assert_eq!(s.rho_seed.eval(2.0, 0.0), 5.0);
        let n = KernelSpec::from_json(r#"{"f0": 1, "f1": "0", "rho": "1"}"#).unwrap();
        assert_eq!(n.f0, 1.0);
        assert!(matches!(
            KernelSpec::from_json(r#"{"f0": "a", "f1": "0", "rho": "1"}"#),
            Err(SpecError::F0(_))
        ));
        assert!(matches!(
            KernelSpec::from_json(r#"{"f0": "0", "f1": "z", "rho": "1"}"#),
            Err(SpecError::Expr { field: "f1", .. })
        ));
        assert!(matches!(
            KernelSpec::from_json("{"),
            Err(SpecError::Json(_))
        ));
    }

    #[test]
    fn valuation_on_square_split() {
        let v = Valuation::laplace();
        let t = LatticePolygon::base_triangle();
        let s = convex_hull(&[pt(1, 1), pt(0, 1), pt(1, 0)]).unwrap();
        let xs = [[0.3, 0.4], [1.0, 1.0], [-2.0, 1.5]];
        assert!(v.check_valuation(&t, &s, &xs).unwrap().max_residual <= 1e-10);
        assert_eq!(v.check_valuation(&t, &t, &xs).unwrap().max_residual, 0.0);
        let a = convex_hull(&[pt(0, 0), pt(1, 0)]).unwrap();
        let b = convex_hull(&[pt(1, 0), pt(3, 0)]).unwrap();
        let w = Valuation::new(&KernelSpec::parse(1.0, "1", "1").unwrap());
        assert!(w.check_valuation(&a, &b, &xs).unwrap().max_residual <= 1e-12);
    }

    #[test]
    fn covariance_examples() {
        let v = Valuation::new(&KernelSpec::parse(0.5, "phi(x)", "x^2+1").unwrap());
        let t = LatticePolygon::base_triangle();
        let xs = [[0.3, 0.4], [1.0, -1.0], [-2.0, 1.5]];
        let id = UnimodularAffine::identity();
        assert_eq!(v.check_covariance(&t, &id, &xs).unwrap().max_residual, 0.0);
        let sh = UnimodularAffine::translation(pt(1, 0));
        assert!(v.check_covariance(&t, &sh, &xs).unwrap().max_residual <= 1e-10);
        let sw = UnimodularAffine::linear([[0, 1], [1, 0]]).unwrap();
        assert!(v.check_covariance(&t, &sw, &xs).unwrap().max_residual <= 1e-10);
    }

    #[test]
    fn unit_square_flip() {
        let v = Valuation::laplace();
        let sq = LatticePolygon::rectangle(0, 0, 1, 1).unwrap();
        let r = v
            .check_triangulation_independence(&sq, &[[0.5, -1.0], [2.0, 3.0], [1.0, 1.0]])
            .unwrap();
        assert!(r.max_residual <= 1e-12);
        let seg = convex_hull(&[pt(0, 0), pt(1, 0)]).unwrap();
        assert!(v
            .check_triangulation_independence(&seg, &[[0.0, 0.0]])
            .is_err());
    }

    #[test]
    fn report_json_shape() {
        let mut r = ResidualReport::new();
        r.record(1e-12, [1.0, 2.0]);
        r.record(f64::NAN, [3.0, 4.0]);
        r.record(1.0, [5.0, 6.0]);
        assert!(r.max_residual.is_nan());
        assert_eq!(r.argmax_point, [3.0, 4.0]);
        assert_eq!(r.samples, 3);
        let mut ok = ResidualReport::new();
        ok.record(0.25, [0.5, 0.5]);
        assert_eq!(
            ok.to_json(),
            r#"{"max_residual":0.25,"argmax_point":[0.5,0.5],"samples":1}"#
        );
    }
}
