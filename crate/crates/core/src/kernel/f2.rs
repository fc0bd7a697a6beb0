use std::sync::Arc;

use super::{phi_stable, RhoKernel};
use crate::field::{scale_exp, Field, ScalarField};

/// The simple kernel `f2` determined by `rho`.
///
/// Any point is moved into the positive quadrant by at most two applications
/// of `(a, b) -> (-b, a - b)`, symmetrized into `0 <= x <= y`, and evaluated
/// through `f~(x, y) = (e^x phi(y - x) rho(y - x, x) - phi(x) rho(x, y - x)) / y`.
#[derive(Debug, Clone)]
pub struct F2Kernel {
    rho: Arc<RhoKernel>,
}

impl F2Kernel {
    pub fn new(rho: Arc<RhoKernel>) -> Self {
        F2Kernel { rho }
    }

    pub fn from_seed(seed: ScalarField) -> Self {
        Self::new(Arc::new(RhoKernel::new(seed)))
    }

    pub fn rho(&self) -> &Arc<RhoKernel> {
        &self.rho
    }

    /// The representative `(s, t)` with `0 <= s <= t` and the log of the factor.
    pub fn reduce(x: f64, y: f64) -> ((f64, f64), f64) {
        let (a, b, log) = if x >= 0.0 && y >= 0.0 {
            (x, y, 0.0)
        } else if y <= 0.0 && x >= y {
            (-y, x - y, y)
        } else {
            (y - x, -x, x)
        };
        if a <= b {
            ((a, b), log)
        } else {
            ((b, a), log)
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_scaled(x, y, 0.0)
    }

    pub fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        let ((s, t), log) = Self::reduce(x, y);
        self.tilde_scaled(s, t, log_scale + log)
    }

    /// `f~(x, y)` for `0 <= x <= y`.
    pub fn tilde(&self, x: f64, y: f64) -> f64 {
        self.tilde_scaled(x, y, 0.0)
    }

    fn tilde_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        if y == 0.0 {
            return scale_exp(0.5 * self.rho.eval_nonneg(0.0, 0.0), log_scale);
        }
        let d = y - x;
        let a = phi_stable(d) * self.rho.eval_nonneg(d, x);
        let b = phi_stable(x) * self.rho.eval_nonneg(x, d);
        if x <= 700.0 {
            scale_exp((x.exp() * a - b) / y, log_scale)
        } else {
            scale_exp((a - (-x).exp() * b) / y, log_scale + x)
        }
    }
}

impl Field for F2Kernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        F2Kernel::eval(self, x, y)
    }

    fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        F2Kernel::eval_scaled(self, x, y, log_scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace_t(x1: f64, x2: f64) -> f64 {
        (x1 * x2.exp() - x2 * x1.exp() + x2 - x1) / (x1 * x2 * (x2 - x1))
    }

    #[test]
    fn unit_seed_reproduces_laplace_transform() {
        let k = F2Kernel::from_seed(ScalarField::constant(1.0));
        assert_eq!(k.eval(0.0, 0.0), 0.5);
        let want = 1.476246221006279878254926258934841;
        assert!((k.eval(1.0, 2.0) - want).abs() < 1e-13);
        for &(x, y) in &[(0.7, -1.3), (-2.0, -0.5), (3.1, 0.4), (-1.1, 2.9)] {
            let l = laplace_t(x, y);
            assert!(
                (k.eval(x, y) - l).abs() < 1e-11 * (1.0 + l.abs()),
                "({x}, {y})"
            );
        }
    }

    #[test]
    fn tilde_on_seed_domain() {
        let k = F2Kernel::from_seed(ScalarField::constant(1.0));
        let v = k.tilde(0.3, 1.1);
        assert!((v - 0.81971635928153987102).abs() < 1e-14);
        let half = F2Kernel::from_seed(ScalarField::constant(1.0)).tilde(0.0, 0.0);
        assert_eq!(half, 0.5);
    }

    #[test]
    fn symmetry_is_exact() {
        let k = F2Kernel::from_seed(ScalarField::from_fn(|x, y| 1.0 + x * y - 0.3 * x));
        for &(x, y) in &[
            (0.7, -1.3),
            (-2.0, -0.5),
            (3.1, 0.4),
            (-1.1, 2.9),
            (1.0, -3.0),
        ] {
            assert_eq!(k.eval(x, y), k.eval(y, x));
        }
    }

    #[test]
    fn cone_reduction_lands_in_quadrant() {
        for &(x, y) in &[
            (1.0, -2.0),
            (-2.0, 1.0),
            (-1.0, -3.0),
            (-3.0, -1.0),
            (-0.0, -0.0),
        ] {
            let ((s, t), _) = F2Kernel::reduce(x, y);
            assert!(0.0 <= s && s <= t);
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        let k = F2Kernel::from_seed(ScalarField::constant(1.0));
        let v = k.eval_scaled(705.0, 706.0, -700.0);
        assert!(v.is_finite() && v > 0.0);
    }
}
