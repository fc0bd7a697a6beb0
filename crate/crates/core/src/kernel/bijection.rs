use std::sync::Arc;

use super::{phi_stable, F2Kernel, RhoKernel};
use crate::field::ScalarField;

/// `rho(x, y) = (f~(x, x + y) + e^x f~(y, x + y)) / (phi(x) phi(x + y))`.
pub fn tildef_to_rho(f: &ScalarField) -> ScalarField {
    let f = f.clone();
    ScalarField::from_fn(move |x, y| {
        let s = x + y;
        (f.eval(x, s) + x.exp() * f.eval(y, s)) / (phi_stable(x) * phi_stable(s))
    })
}

/// `f~` determined by `rho`; off `0 <= x <= y` the symmetric cone extension is used.
pub fn rho_to_tildef(rho: Arc<RhoKernel>) -> ScalarField {
    ScalarField::new(F2Kernel::new(rho))
}
