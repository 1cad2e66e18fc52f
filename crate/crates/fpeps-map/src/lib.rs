//! Mapping of fermionic PEPS on periodic lattices to ordinary (bosonic) PEPS.
//!
//! Each fermionic site tensor `A` becomes `B = (-1)^f A` times a column-dependent phase,
//! with one extra horizontal bond that carries the parity of the bonds to the right.
//! Contracting the resulting network gives the same physical state as the fermionic
//! construction, with basis states ordered by `M = (v-1) N_h + h`.

pub mod contract;
pub mod io;
pub mod peps;
pub mod sign;

pub use contract::{contract_peps, contraction_order, DenseTensor, Leg};
pub use fock_oracle::{FPEPSTensor, FockError, LatticeSpec, Result};
pub use io::{peps_to_json, random_tensor, TensorSet};
pub use peps::{map_to_peps, PEPSTensor};
pub use sign::{derive_sign_function, derive_sign_functions, SignFunction};

/// Maps every site tensor of `set`, using the parities of the tensors themselves.
pub fn map_tensor_set(set: &TensorSet) -> Result<Vec<PEPSTensor>> {
    let signs = derive_sign_functions(&set.lattice, &set.parities())?;
    set.tensors
        .iter()
        .zip(&signs)
        .enumerate()
        .map(|(m, (t, f))| map_to_peps(&set.lattice, set.lattice.site(m), t, f))
        .collect()
}

/// Physical state of the mapped network.
pub fn peps_state(set: &TensorSet) -> Result<fock_oracle::FockVector> {
    contract_peps(&set.lattice, &map_tensor_set(set)?)
}
