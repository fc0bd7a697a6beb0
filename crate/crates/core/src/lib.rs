//! Translatively exponential, `GL(2, Z)` covariant valuations on lattice polygons.
//!
//! A valuation is fixed by three pieces of data (see [`KernelSpec`]): a
//! constant `f0`, a seed for `f1` on `Omega~1` and a seed for `rho` on
//! `Omega~2`. [`Valuation`] extends the seeds to the whole plane and
//! evaluates `Z(P)(x)` for any lattice polygon `P`.
//!
//! ```
//! use latval::{KernelSpec, LatticePolygon, Valuation};
//!
//! let z = Valuation::new(&KernelSpec::laplace());
//! let square = LatticePolygon::rectangle(0, 0, 1, 1).unwrap();
//! let v = z.evaluate(&square, [1.0, 1.0]);
//! assert!((v - (std::f64::consts::E - 1.0).powi(2)).abs() < 1e-14);
//! ```

#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod expr;
pub mod field;
pub mod geom;
pub mod kernel;
pub mod laplace;
pub mod sampling;
pub mod unimodular;
pub mod valuation;
pub mod verify;

pub use expr::{parse, Expr, ExprError};
pub use field::{Field, ScalarField};
pub use geom::{
    convex_hull, EmptyTriangle, GeomError, LatticePoint, LatticePolygon, PrimitiveSegment,
};
pub use kernel::{F1Kernel, F2Kernel, KernelError, RegionTag, RhoKernel};
pub use unimodular::{act_on_field, UnimodularAffine};
pub use valuation::{KernelSpec, ResidualReport, SpecError, Valuation};
