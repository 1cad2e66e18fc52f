use fock_oracle::LatticeSpec;
use gaussian_core::{reciprocal_points, reduced_polynomials, ZERO_NORM_TOL};

use crate::example::example_model;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroMomentum {
    pub phi: (f64, f64),
    /// The zero survives cancellation of common factors with the numerators.
    pub essential: bool,
}

/// Reciprocal points of `lattice` where `d(phi)` vanishes. A zero is removable when the
/// reduced denominator is nonzero there.
pub fn norm_zero_locator(lattice: &LatticeSpec) -> Vec<ZeroMomentum> {
    let model = example_model();
    let (d_red, _) = reduced_polynomials(&model);
    reciprocal_points(lattice)
        .into_iter()
        .filter(|&phi| model.block(phi).zero_norm)
        .map(|phi| ZeroMomentum { phi, essential: d_red.eval_phi(phi.0, phi.1).norm() < ZERO_NORM_TOL })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn odd_lattices_are_clean() {
        for (nh, nv) in [(3, 3), (5, 7), (9, 1)] {
            assert!(norm_zero_locator(&LatticeSpec::new(nh, nv).unwrap()).is_empty());
        }
    }

    #[test]
    fn four_by_four() {
        let z = norm_zero_locator(&LatticeSpec::new(4, 4).unwrap());
        let ess: Vec<_> = z.iter().filter(|m| m.essential).map(|m| m.phi).collect();
        assert_eq!(ess, vec![(FRAC_PI_2, FRAC_PI_2), (3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2)]);
        assert!(z.iter().filter(|m| !m.essential).all(|m| m.phi.0 == PI || m.phi.1 == PI));
    }

    #[test]
    fn eight_by_three_has_removable_zeros_at_pi() {
        let z = norm_zero_locator(&LatticeSpec::new(8, 3).unwrap());
        assert_eq!(z.len(), 3);
        assert!(z.iter().all(|m| !m.essential && m.phi.0 == PI));
    }
}
