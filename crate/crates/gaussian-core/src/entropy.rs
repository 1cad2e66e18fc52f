use nalgebra::SymmetricEigen;

use crate::cm::MajoranaCM;
use crate::{GaussError, Result};

/// Eigenvalues of `-Gamma_A^2` may exceed 1 by this much before the input is rejected.
const NU_TOL: f64 = 1e-9;

/// `H2(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    let f = |y: f64| if y <= 0.0 { 0.0 } else { -y * y.log2() };
    f(x) + f(1.0 - x)
}

/// Entropy in bits of the listed modes: `sum_j H2((1 + nu_j)/2)` over the pairs `+- i nu_j`
/// of the restricted covariance matrix.
pub fn block_entropy(gamma: &MajoranaCM, block: &[usize]) -> Result<f64> {
    if block.is_empty() {
        return Err(GaussError::Contract("block must be nonempty".into()));
    }
    let ga = gamma.restrict(block)?;
    let m = ga.matrix();
    // -G^2 = G^T G is symmetric positive semidefinite with doubly degenerate eigenvalues nu^2.
    let sq = m.transpose() * m;
    let ev = SymmetricEigen::new((&sq + sq.transpose()) * 0.5).eigenvalues;
    let mut s = 0.0;
    for &e in ev.iter() {
        if !(-NU_TOL..=1.0 + NU_TOL).contains(&e) {
            return Err(GaussError::Numerical(format!("covariance eigenvalue {e} outside [0, 1]")));
        }
        let nu = e.clamp(0.0, 1.0).sqrt();
        s += binary_entropy((1.0 + nu) / 2.0);
    }
    Ok(s / 2.0)
}
