//! The critical Gaussian fPEPS example on the square lattice.
//!
//! The per-site channel has `A = 0` and explicit `B`, `D` blocks. Its momentum blocks give
//! `p/d = (sin phi1 - sin phi2)/(-1 + sin phi1 sin phi2)` and
//! `q/d = cos phi1 cos phi2/(-1 + sin phi1 sin phi2)`. The parent Hamiltonian is nearest and
//! diagonal-neighbour with Dirac points at `(pi/2, pi/2)` and `(3pi/2, 3pi/2)`.

pub mod correlator;
pub mod example;
pub mod hcrit;
pub mod quadrature;
pub mod scans;
pub mod zeros;

use thiserror::Error;

pub use correlator::{
    asymptotic_k, correlator_numeric, correlator_residue, correlator_trapezoid, kernel_k, residue_integrand,
    CorrelatorGrid, CorrelatorResult, Kind,
};
pub use example::{closed_form_ratios, example_channel, example_model, example_projector_tensor};
pub use hcrit::{hcrit_coefficients, proportionality, Proportionality};
pub use quadrature::gauss_legendre;
pub use scans::{
    correlator_table, direction_scan, entropy_scan, gap_scan, linear_fit, Direction, EntropyPoint, GapPoint, LinearFit,
};
pub use zeros::{norm_zero_locator, ZeroMomentum};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("zero-norm momenta: {0:?}")]
    ZeroNorm(Vec<(f64, f64)>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical validity: {0}")]
    Numerical(String),
    #[error(transparent)]
    Gauss(#[from] gaussian_core::GaussError),
    #[error(transparent)]
    Fock(#[from] fock_oracle::FockError),
}

pub type Result<T> = std::result::Result<T, ModelError>;
