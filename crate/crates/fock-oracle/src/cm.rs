use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lattice::ModeLabel;
use crate::ops::OperatorPoly;
use crate::state::FockVector;
use crate::Result;

/// `Gamma_kl = <(i/2)[c_k, c_l]>` over `modes`, qp ordered: all `c^(1)` then all `c^(2)`.
pub fn covariance_matrix(state: &FockVector, modes: &[ModeLabel]) -> Result<DMatrix<f64>> {
    let psi = state.normalized()?;
    let m = modes.len();
    let mut images = Vec::with_capacity(2 * m);
    for kind in 0..2 {
        for l in modes {
            let op = if kind == 0 {
                OperatorPoly::majorana1(*l)
            } else {
                OperatorPoly::majorana2(*l)
            };
            images.push(psi.apply_poly(&op)?);
        }
    }
    let mut g = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..2 * m {
        for l in (k + 1)..2 * m {
            // k != l: (i/2)[c_k, c_l] = i c_k c_l
            let v = (Complex64::new(0.0, 1.0) * images[k].inner(&images[l])?).re;
            g[(k, l)] = v;
            g[(l, k)] = -v;
        }
    }
    Ok(g)
}
