//! Kernel functions: the stable `phi`, the Fibonacci-region extension of
//! `rho`, the reductions of `f1` and `f2`, and the `rho <-> f~` bijection.

mod bijection;
mod f1;
mod f2;
mod region;
mod rho;
mod special;

use thiserror::Error;

pub use bijection::{rho_to_tildef, tildef_to_rho};
pub use f1::F1Kernel;
pub use f2::F2Kernel;
pub use region::{
    descent_chain, descent_steps, region_tag, region_tag_with_band, RegionTag, DESCENT_CAP,
    RAY_BAND,
};
pub use rho::RhoKernel;
pub use special::{exp_divdiff2, phi_stable, TAU};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("point ({0}, {1}) is outside the closed positive quadrant")]
    NegativeInput(f64, f64),
}
