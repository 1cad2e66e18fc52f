use nalgebra::Matrix2;
use num_complex::Complex64;

use fock_oracle::LatticeSpec;

use crate::channel::GaussianChannel;
use crate::fourier::{reciprocal_points, FourierModel};
use crate::hamiltonian::{parent_hamiltonian_from_model, QuadraticHamiltonian};
use crate::{GaussError, Result};

/// Eigenvalues of `i h_hat(phi)`, ascending.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub phi: (f64, f64),
    pub energies: [f64; 2],
}

/// Eigenvalues and eigenvectors (columns) of a Hermitian 2x2 matrix, ascending.
fn eigh2(m: &Matrix2<Complex64>) -> ([f64; 2], Matrix2<Complex64>) {
    let e = m.symmetric_eigen();
    let (a, b) = (e.eigenvalues[0], e.eigenvalues[1]);
    if a <= b {
        ([a, b], e.eigenvectors)
    } else {
        let v = e.eigenvectors;
        ([b, a], Matrix2::from_columns(&[v.column(1).into_owned(), v.column(0).into_owned()]))
    }
}

pub fn single_particle_spectrum(h: &QuadraticHamiltonian, lattice: &LatticeSpec) -> Vec<SpectrumPoint> {
    reciprocal_points(lattice)
        .into_iter()
        .map(|phi| {
            let m = h.h_hat(phi) * Complex64::i();
            SpectrumPoint { phi, energies: eigh2(&m).0 }
        })
        .collect()
}

/// Smallest upper eigenvalue over the reciprocal points.
pub fn gap(h: &QuadraticHamiltonian, lattice: &LatticeSpec) -> f64 {
    single_particle_spectrum(h, lattice).iter().map(|p| p.energies[1]).fold(f64::INFINITY, f64::min)
}

/// `-sum_phi sum |eigenvalues of i h_hat(phi)|`.
pub fn ground_energy(h: &QuadraticHamiltonian, lattice: &LatticeSpec) -> f64 {
    -single_particle_spectrum(h, lattice).iter().map(|p| p.energies[0].abs() + p.energies[1].abs()).sum::<f64>()
}

/// Numerator degree bound: twice the virtual modes per site.
pub const PARENT_RADIUS_CAP: i32 = 8;

/// [`cm_consistency`] of a channel against its own parent Hamiltonian.
pub fn ground_state_cm_consistency(ch: &GaussianChannel, lattice: &LatticeSpec) -> Result<f64> {
    let model = FourierModel::new(ch)?;
    let zeros = model.zero_momenta(lattice);
    if !zeros.is_empty() {
        return Err(GaussError::ZeroMomenta(zeros));
    }
    let h = parent_hamiltonian_from_model(&model, PARENT_RADIUS_CAP)?;
    cm_consistency(&model, &h, lattice)
}

/// Largest of `|[g_hat, h_hat]|` and `|i g_hat + sign(i h_hat)|` over the reciprocal points.
/// The second term vanishes when `g_hat` is the ground state of `h_hat`. Momenta where
/// `i h_hat` has a zero eigenvalue only enter through the commutator.
pub fn cm_consistency(model: &FourierModel, h: &QuadraticHamiltonian, lattice: &LatticeSpec) -> Result<f64> {
    let zeros = model.zero_momenta(lattice);
    if !zeros.is_empty() {
        return Err(GaussError::ZeroMomenta(zeros));
    }
    let mut worst = 0.0f64;
    for phi in reciprocal_points(lattice) {
        let g = model.block(phi).g_hat.expect("nonzero norm checked above");
        let hh = h.h_hat(phi);
        let comm = g * hh - hh * g;
        worst = worst.max(comm.iter().fold(0.0f64, |a, x| a.max(x.norm())));
        let (ev, v) = eigh2(&(hh * Complex64::i()));
        if ev[0].abs() < 1e-12 || ev[1].abs() < 1e-12 {
            continue;
        }
        let s = v * Matrix2::from_diagonal(&nalgebra::Vector2::new(
            Complex64::new(ev[0].signum(), 0.0),
            Complex64::new(ev[1].signum(), 0.0),
        )) * v.adjoint();
        let r = g * Complex64::i() + s;
        worst = worst.max(r.iter().fold(0.0f64, |a, x| a.max(x.norm())));
    }
    Ok(worst)
}
