//! Fermionic Gaussian states in the Majorana covariance-matrix picture.
//!
//! Majoranas are `c1 = a^dag + a` and `c2 = -i (a^dag - a)`; the covariance matrix is
//! `Gamma_kl = i <c_k c_l>` for `k != l`. Matrices over `m` modes are qp ordered: the
//! `c1` of every mode first, then the `c2` of every mode. Lattice modes follow `M` order,
//! and the virtual modes of a site follow `alpha, beta, gamma, delta`.
//!
//! Fourier convention: `f_phi = N^{-1/2} sum_n exp(-i phi.n) f_n`, so a translation-invariant
//! matrix `X_{n,m} = x(m - n)` has the block `x_hat(phi) = sum_D x(D) exp(i phi.D)`.

pub mod channel;
pub mod cm;
pub mod entropy;
pub mod fourier;
pub mod hamiltonian;
pub mod laurent;
pub mod spectrum;

use thiserror::Error;

pub use channel::{apply_channel, bond_omega, lattice_bond_cm, lattice_channel, GaussianChannel};
pub use cm::{interleaved_to_qp, qp_to_interleaved, MajoranaCM};
pub use entropy::{binary_entropy, block_entropy};
pub use fourier::{
    fourier_bond, gamma_out_hat, purity_check, real_block_from_g_hat, real_space_gamma, reciprocal_points,
    symbolic_fourier_bond, FourierBlock, FourierModel, TranslationInvariantCM, ZERO_NORM_TOL,
};
pub use hamiltonian::{
    dirac_to_majorana, majorana_to_dirac, parent_hamiltonian, parent_hamiltonian_from_model, reduced_polynomials,
    DiracTable, QuadraticHamiltonian,
};
pub use laurent::Laurent2;
pub use spectrum::{
    cm_consistency, gap, ground_energy, ground_state_cm_consistency, single_particle_spectrum, SpectrumPoint,
    PARENT_RADIUS_CAP,
};

pub use fock_oracle::LatticeSpec;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussError {
    #[error("zero-norm projection: det = {det:e} ({context})")]
    ZeroNorm { det: f64, context: String },
    #[error("zero-norm momenta: {0:?}")]
    ZeroMomenta(Vec<(f64, f64)>),
    #[error("coefficient at displacement ({dh}, {dv}) has norm {norm:e} beyond the radius cap")]
    Locality { dh: i32, dv: i32, norm: f64 },
    #[error("numerical validity: {0}")]
    Numerical(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, GaussError>;

impl From<fock_oracle::FockError> for GaussError {
    fn from(e: fock_oracle::FockError) -> Self {
        GaussError::Contract(e.to_string())
    }
}
