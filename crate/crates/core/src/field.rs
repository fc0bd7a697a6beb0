//! Pointwise-evaluable real functions on the plane.

use std::fmt;
use std::sync::Arc;

/// `v * e^log_scale`, staying finite when `e^log_scale` alone would not.
pub fn scale_exp(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 || log_scale == 0.0 {
        return v;
    }
    if (-700.0..=700.0).contains(&log_scale) {
        return v * log_scale.exp();
    }
    v.signum() * (v.abs().ln() + log_scale).exp()
}

pub trait Field: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> f64;

    /// `e^log_scale * eval(x, y)`; implementations may combine the factor
    /// with their own exponentials to avoid overflow.
    fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        scale_exp(self.eval(x, y), log_scale)
    }
}

impl<F> Field for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn eval(&self, x: f64, y: f64) -> f64 {
        self(x, y)
    }
}

/// Shared handle to a [`Field`]. Cloning is cheap.
#[derive(Clone)]
pub struct ScalarField {
    inner: Arc<dyn Field>,
    constant: Option<f64>,
}

impl ScalarField {
    pub fn new<F: Field + 'static>(f: F) -> Self {
        ScalarField {
            inner: Arc::new(f),
            constant: None,
        }
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(f)
    }

    pub fn constant(c: f64) -> Self {
        ScalarField {
            inner: Arc::new(move |_: f64, _: f64| c),
            constant: Some(c),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// The value if this field is known to be constant.
    pub fn as_constant(&self) -> Option<f64> {
        self.constant
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.inner.eval(x, y)
    }

    pub fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        self.inner.eval_scaled(x, y, log_scale)
    }
}

impl Field for ScalarField {
    fn eval(&self, x: f64, y: f64) -> f64 {
        self.inner.eval(x, y)
    }

    fn eval_scaled(&self, x: f64, y: f64, log_scale: f64) -> f64 {
        self.inner.eval_scaled(x, y, log_scale)
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Some(c) => write!(f, "ScalarField({c})"),
            None => write!(f, "ScalarField(..)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_exp_ranges() {
        assert_eq!(scale_exp(0.0, 1e6), 0.0);
        assert_eq!(scale_exp(2.0, 0.0), 2.0);
        assert!((scale_exp(2.0, 1.0) - 2.0 * 1f64.exp()).abs() < 1e-15);
        let big = scale_exp(1e-300, 800.0);
        assert!((big.ln() - (800.0 - 300.0 * 10f64.ln())).abs() < 1e-9);
        assert_eq!(scale_exp(-1.0, -800.0), -0.0);
    }

    #[test]
    fn constants_are_recognized() {
        assert_eq!(ScalarField::constant(3.0).as_constant(), Some(3.0));
        assert_eq!(ScalarField::from_fn(|x, _| x).as_constant(), None);
        assert_eq!(ScalarField::zero().eval(5.0, 6.0), 0.0);
    }
}
