use crate::field::{scale_exp, Field, ScalarField};

/// Extension of a seed on `Omega~1 = {x = 0, y >= 0} ∪ {0 <= y <= x/2}` to the plane.
#[derive(Debug, Clone)]
pub struct F1Kernel {
    seed: ScalarField,
}

impl F1Kernel {
    pub fn new(seed: ScalarField) -> Self {
        F1Kernel { seed }
    }

    pub fn seed(&self) -> &ScalarField {
        &self.seed
    }

    /// The representative of `(x, y)` in `Omega~1` and the log of the factor
    /// picked up on the way.
    pub fn reduce(x: f64, y: f64) -> ((f64, f64), f64) {
        let (x, y, log) = if x < 0.0 { (-x, -y, x) } else { (x, y, 0.0) };
        if x == 0.0 {
            return ((0.0, y.abs()), log);
        }
        let mut r = y % x;
        if r > 0.5 * x {
            r -= x;
        } else if r < -0.5 * x {
            r += x;
        }
        ((x, r.abs()), log)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.eval_scaled(x, y, 0.0)
    }

    pub fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        let ((a, b), log) = Self::reduce(x, y);
        if self.seed.as_constant() == Some(0.0) {
            return 0.0;
        }
        scale_exp(self.seed.eval(a, b), log_scale + log)
    }
}

impl Field for F1Kernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        F1Kernel::eval(self, x, y)
    }

    fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        F1Kernel::eval_scaled(self, x, y, log_scale)
    }
}
