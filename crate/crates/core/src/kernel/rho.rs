use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use super::region::{in_band, ray_index};
use super::{KernelError, DESCENT_CAP, TAU};
use crate::field::{Field, ScalarField};

const MEMO_LIMIT: usize = 1 << 16;

/// Points with `0 < x - y <= DIAGONAL_BAND * x` are treated as diagonal.
pub const DIAGONAL_BAND: f64 = 1e-12;

fn near_diagonal(a: f64, b: f64) -> bool {
    a <= b || a - b <= DIAGONAL_BAND * a
}

/// Extension of a seed on `Omega~2` to the closed positive quadrant solving
/// `(2x + y) rho(x, y) = (x + y) rho(x, x + y) + x rho(x + y, x)`.
pub struct RhoKernel {
    seed: ScalarField,
    memo: Mutex<HashMap<(u64, u64), f64>>,
}

impl fmt::Debug for RhoKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RhoKernel")
            .field("seed", &self.seed)
            .finish()
    }
}

impl RhoKernel {
    pub fn new(seed: ScalarField) -> Self {
        RhoKernel {
            seed,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> &ScalarField {
        &self.seed
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64, KernelError> {
        if !(x >= 0.0 && y >= 0.0) {
            return Err(KernelError::NegativeInput(x, y));
        }
        Ok(self.eval_nonneg(x, y))
    }

    pub fn cache_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }

    pub(crate) fn eval_nonneg(&self, x: f64, y: f64) -> f64 {
        if y == 0.0 {
            return self.seed.eval(x, x);
        }
        if near_diagonal(x, y) {
            return self.seed.eval(x, y);
        }
        if in_band(x, y, 0.0) {
            return self.ray(y);
        }
        let key = (x.to_bits(), y.to_bits());
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return v;
        }
        let v = self.descend(x, y);
        let mut memo = self.memo.lock().unwrap();
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(key, v);
        v
    }

    fn descend(&self, x: f64, y: f64) -> f64 {
        let mut chain = vec![(x, y)];
        let (mut a, mut b) = (x, y);
        let mut value = loop {
            if chain.len() as u32 > DESCENT_CAP + 1 {
                break self.ray(b);
            }
            (a, b) = (b, a - b);
            if near_diagonal(a, b) {
                break self.seed.eval(a, b);
            }
            if in_band(a, b, 0.0) {
                break self.ray(b);
            }
            chain.push((a, b));
        };
        for &(a, b) in chain.iter().rev() {
            let r2 = self.seed.eval(b, a);
            value += (a / b) * (value - r2);
        }
        value
    }

    /// `rho(tau t, t)` for `t > 0`.
    fn ray(&self, t: f64) -> f64 {
        let m = ray_index(t);
        if m == 0 {
            return self.seed.eval(TAU * t, t);
        }
        let n = m.unsigned_abs() as usize;
        let mut ts = Vec::with_capacity(n + 1);
        ts.push(t);
        for k in 0..n {
            ts.push(if m > 0 { ts[k] / TAU } else { ts[k] * TAU });
        }
        let mut value = self.seed.eval(TAU * ts[n], ts[n]);
        for &s in ts[..n].iter().rev() {
            value = if m > 0 {
                value + TAU * (value - self.seed.eval(s, TAU * s))
            } else {
                (TAU * TAU * self.seed.eval(TAU * s, TAU * TAU * s) + TAU * value)
                    / (2.0 * TAU + 1.0)
            };
        }
        value
    }
}

impl Field for RhoKernel {
    /// NaN outside the closed positive quadrant.
    fn eval(&self, x: f64, y: f64) -> f64 {
        RhoKernel::eval(self, x, y).unwrap_or(f64::NAN)
    }
}
