use std::fmt;

use super::{KernelError, TAU};

/// Relative half-width of the band treated as the golden-ratio ray.
pub const RAY_BAND: f64 = 1e-12;

/// Maximal Fibonacci index followed by descent before the ray rule takes over.
pub const DESCENT_CAP: u32 = 96;

/// Position of a point of the closed positive quadrant in the Fibonacci partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// `0 <= x <= y`, `y > 0`.
    InOmega2,
    /// `Omega_n`: reaches `InOmega2` after `n + 1` descent steps.
    OmegaIndex(u32),
    /// `x = tau y` with `tau^m <= y < tau^(m+1)`.
    RaySegment(i32),
    /// `x > 0`, `y = 0`.
    AxisX,
    Origin,
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionTag::InOmega2 => write!(f, "Omega2"),
            RegionTag::OmegaIndex(n) => write!(f, "Omega({n})"),
            RegionTag::RaySegment(m) => write!(f, "Ray({m})"),
            RegionTag::AxisX => write!(f, "AxisX"),
            RegionTag::Origin => write!(f, "Origin"),
        }
    }
}

pub(crate) fn in_band(x: f64, y: f64, abs_band: f64) -> bool {
    (x - TAU * y).abs() <= (RAY_BAND * (1.0 + x.abs())).max(abs_band)
}

/// `m` with `tau^m <= t < tau^(m+1)`.
pub(crate) fn ray_index(t: f64) -> i32 {
    let mut m = (t.ln() / TAU.ln()).floor() as i32;
    while TAU.powi(m) > t {
        m -= 1;
    }
    while TAU.powi(m + 1) <= t {
        m += 1;
    }
    m
}

fn fibonacci(n: usize) -> Vec<f64> {
    let mut f = vec![0.0, 1.0];
    while f.len() < n {
        let k = f.len();
        f.push(f[k - 1] + f[k - 2]);
    }
    f
}

/// Index `n` of the cone `Omega_n` containing `(x, y)` with `x > y > 0`,
/// read off from the Fibonacci ratio bounds on `x / y`.
fn omega_index(x: f64, y: f64) -> Option<u32> {
    let f = fibonacci(DESCENT_CAP as usize + 4);
    (0..=DESCENT_CAP as usize)
        .find(|&n| {
            if n % 2 == 0 {
                f[n + 3] * y <= x * f[n + 2] && x * f[n] < f[n + 1] * y
            } else {
                f[n + 1] * y < x * f[n] && x * f[n + 2] <= f[n + 3] * y
            }
        })
        .map(|n| n as u32)
}

pub fn region_tag(x: f64, y: f64) -> Result<RegionTag, KernelError> {
    region_tag_with_band(x, y, 0.0)
}

/// As [`region_tag`], widening the ray band to at least `abs_band`.
pub fn region_tag_with_band(x: f64, y: f64, abs_band: f64) -> Result<RegionTag, KernelError> {
    if !(x >= 0.0 && y >= 0.0) {
        return Err(KernelError::NegativeInput(x, y));
    }
    Ok(if x == 0.0 && y == 0.0 {
        RegionTag::Origin
    } else if y == 0.0 {
        RegionTag::AxisX
    } else if x <= y {
        RegionTag::InOmega2
    } else if in_band(x, y, abs_band) {
        RegionTag::RaySegment(ray_index(y))
    } else {
        match omega_index(x, y) {
            Some(n) => RegionTag::OmegaIndex(n),
            None => RegionTag::RaySegment(ray_index(y)),
        }
    })
}

/// Number of steps of `(a, b) -> (b, a - b)` needed to reach `a <= b`,
/// or `None` when the cap is exceeded.
pub fn descent_steps(x: f64, y: f64) -> Option<u32> {
    let (mut a, mut b) = (x, y);
    let mut steps = 0;
    while a > b {
        if steps > DESCENT_CAP {
            return None;
        }
        (a, b) = (b, a - b);
        steps += 1;
    }
    Some(steps)
}

/// The points visited while reducing `(x, y)` to the seed domain.
///
/// Cone points follow the descent map, ray points move along the ray towards
/// the segment `m = 0`, and axis points jump to the diagonal.
pub fn descent_chain(x: f64, y: f64, abs_band: f64) -> Result<Vec<(f64, f64)>, KernelError> {
    let tag = region_tag_with_band(x, y, abs_band)?;
    let mut chain = vec![(x, y)];
    match tag {
        RegionTag::Origin | RegionTag::InOmega2 => {}
        RegionTag::AxisX => chain.push((x, x)),
        RegionTag::OmegaIndex(_) => {
            let (mut a, mut b) = (x, y);
            let mut steps = 0;
            while a > b && steps <= DESCENT_CAP {
                (a, b) = (b, a - b);
                chain.push((a, b));
                steps += 1;
                if a > b && in_band(a, b, abs_band) {
                    break;
                }
            }
        }
        RegionTag::RaySegment(m) => {
            let mut t = y;
            for _ in 0..m.unsigned_abs() {
                t = if m > 0 { t / TAU } else { t * TAU };
                chain.push((TAU * t, t));
            }
        }
    }
    Ok(chain)
}
