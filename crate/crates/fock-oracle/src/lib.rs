//! Dense Fock-space representation of fermionic modes on small periodic lattices.
//!
//! Modes are kept in a fixed registry order. Mode `j` of an `n`-mode registry lives on
//! bit `n - 1 - j` of the basis index, so the first registered mode is the most
//! significant bit and a basis state `|k_1 ... k_n>` is `a_1^dag^k_1 ... a_n^dag^k_n |vac>`.

pub mod cm;
pub mod fpeps;
pub mod lattice;
pub mod ops;
pub mod quadratic;
pub mod state;
pub mod tensor;

use thiserror::Error;

pub use cm::covariance_matrix;
pub use fpeps::{bond_h, bond_v, build_fpeps, build_fpeps_ordered, build_fpeps_with_cap, projector_q};
pub use lattice::{LatticeSpec, ModeLabel, ModeRegistry, Site, Species};
pub use ops::{Factor, OperatorPoly};
pub use quadratic::{apply_quadratic_h, exact_ground_state, QuadraticHamiltonian};
pub use state::FockVector;
pub use tensor::FPEPSTensor;

/// Default cap on the number of modes of a dense vector.
pub const DEFAULT_MODE_CAP: usize = 24;
/// Default cap on the number of modes for dense diagonalization.
pub const DEFAULT_DIAG_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("requested {requested} modes, cap is {cap}")]
    ModeCap { requested: usize, cap: usize },
    #[error("unknown mode label {0}")]
    UnknownMode(String),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("entry (k,l,r,u,d)=({k},{l},{r},{u},{d}) violates parity {parity}")]
    Parity {
        k: u8,
        l: u8,
        r: u8,
        u: u8,
        d: u8,
        parity: u8,
    },
    #[error("invalid lattice {nh}x{nv}")]
    InvalidLattice { nh: usize, nv: usize },
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, FockError>;
