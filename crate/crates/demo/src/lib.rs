use wasm_bindgen::prelude::*;

use latval::kernel::{region_tag, RegionTag};
use latval::verify::{run_suite, Suite};
use latval::{KernelSpec, LatticePolygon, Valuation};

/// Row-major samples of `Z(P)` on `[xmin, xmax] x [ymin, ymax]`, y outer.
pub fn grid_values(
    polygon_json: &str,
    kernel_json: &str,
    bounds: [f64; 4],
    nx: usize,
    ny: usize,
) -> Result<Vec<f64>, String> {
    if nx < 2 || ny < 2 {
        return Err("grid needs at least 2 samples per axis".into());
    }
    let p = LatticePolygon::from_json(polygon_json).map_err(|e| e.to_string())?;
    let z = Valuation::new(&KernelSpec::from_json(kernel_json).map_err(|e| e.to_string())?);
    let [xmin, xmax, ymin, ymax] = bounds;
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = ymin + (ymax - ymin) * j as f64 / (ny - 1) as f64;
        for i in 0..nx {
            let x = xmin + (xmax - xmin) * i as f64 / (nx - 1) as f64;
            out.push(z.evaluate(&p, [x, y]));
        }
    }
    Ok(out)
}

/// Region codes on `[0, xmax] x [0, ymax]`: `n >= 0` for `Omega(n)`,
/// -1 Omega2, -2 ray, -3 axis, -4 origin.
pub fn region_codes(xmax: f64, ymax: f64, nx: usize, ny: usize) -> Result<Vec<i32>, String> {
    if nx < 2 || ny < 2 || !(xmax > 0.0 && ymax > 0.0) {
        return Err("need a positive box and at least 2 samples per axis".into());
    }
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = ymax * j as f64 / (ny - 1) as f64;
        for i in 0..nx {
            let x = xmax * i as f64 / (nx - 1) as f64;
            out.push(match region_tag(x, y).map_err(|e| e.to_string())? {
                RegionTag::OmegaIndex(n) => n as i32,
                RegionTag::InOmega2 => -1,
                RegionTag::RaySegment(_) => -2,
                RegionTag::AxisX => -3,
                RegionTag::Origin => -4,
            });
        }
    }
    Ok(out)
}

/// Equation suite report for the kernel given as JSON.
pub fn equations_report(kernel_json: &str, cases: usize, seed: u64) -> Result<String, String> {
    let z = Valuation::new(&KernelSpec::from_json(kernel_json).map_err(|e| e.to_string())?);
    Ok(run_suite(Suite::Equations, &z, seed, cases).to_json())
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn eval_grid(
    polygon_json: &str,
    kernel_json: &str,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
    nx: usize,
    ny: usize,
) -> Result<Vec<f64>, JsError> {
    grid_values(polygon_json, kernel_json, [xmin, xmax, ymin, ymax], nx, ny)
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn region_map(xmax: f64, ymax: f64, nx: usize, ny: usize) -> Result<Vec<i32>, JsError> {
    region_codes(xmax, ymax, nx, ny).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn check_equations(kernel_json: &str, cases: usize, seed: u32) -> Result<String, JsError> {
    equations_report(kernel_json, cases, seed as u64).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{"vertices": [[0, 0], [1, 0], [0, 1]]}"#;
    const LAPLACE: &str = r#"{"f0": "0", "f1": "0", "rho": "1"}"#;

    #[test]
    fn grid_corner_is_area() {
        let v = grid_values(TRIANGLE, LAPLACE, [0.0, 1.0, 0.0, 1.0], 2, 2).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 0.5);
        assert_eq!(v[1], v[2]);
    }

    #[test]
    fn grid_errors() {
        assert!(grid_values(TRIANGLE, LAPLACE, [0.0, 1.0, 0.0, 1.0], 1, 2).is_err());
        assert!(grid_values("{}", LAPLACE, [0.0, 1.0, 0.0, 1.0], 2, 2).is_err());
        assert!(grid_values(
            TRIANGLE,
            r#"{"f0": "0", "f1": "(", "rho": "1"}"#,
            [0.0, 1.0, 0.0, 1.0],
            2,
            2
        )
        .is_err());
    }

    #[test]
    fn region_codes_layout() {
        let c = region_codes(3.0, 1.0, 4, 2).unwrap();
        assert_eq!(&c[..4], &[-4, -3, -3, -3]);
        assert_eq!(&c[4..], &[-1, -1, 0, 0]);
        assert!(region_codes(0.0, 1.0, 4, 4).is_err());
    }

    #[test]
    fn equations_report_passes_for_polynomial_seed() {
        let r = equations_report(r#"{"f0": "0", "f1": "x", "rho": "x^2 + 1"}"#, 100, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r).unwrap();
        assert_eq!(v["suite"], "equations");
        assert_eq!(v["pass"], true);
    }
}
