use num_complex::Complex64;

use crate::lattice::{LatticeSpec, ModeLabel, ModeRegistry, Site, Species};
use crate::ops::{Factor, OperatorPoly};
use crate::state::FockVector;
use crate::tensor::FPEPSTensor;
use crate::{FockError, Result, DEFAULT_MODE_CAP};

fn pair_bond(x: ModeLabel, y: ModeLabel) -> OperatorPoly {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    OperatorPoly {
        terms: vec![(s, Vec::new()), (s, vec![Factor::create(x), Factor::create(y)])],
    }
}

/// `(1 + beta^dag_(h,v) alpha^dag_(h+1,v)) / sqrt 2`.
pub fn bond_h(lattice: &LatticeSpec, site: Site) -> OperatorPoly {
    pair_bond(
        ModeLabel::new(site, Species::Beta),
        ModeLabel::new(lattice.right(site), Species::Alpha),
    )
}

/// `(1 + delta^dag_(h,v) gamma^dag_(h,v+1)) / sqrt 2`.
pub fn bond_v(lattice: &LatticeSpec, site: Site) -> OperatorPoly {
    pair_bond(
        ModeLabel::new(site, Species::Delta),
        ModeLabel::new(lattice.up(site), Species::Gamma),
    )
}

/// `sum A^[k]_{lrud} a^dag^k alpha^l beta^r gamma^u delta^d` at `site`.
pub fn projector_q(site: Site, tensor: &FPEPSTensor) -> Result<OperatorPoly> {
    tensor.validate()?;
    let mut terms = Vec::new();
    for (i, &c) in tensor.entries().iter().enumerate() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (k, l, r, u, d) = FPEPSTensor::unpack(i);
        let mut f = Vec::with_capacity(5);
        if k == 1 {
            f.push(Factor::create(ModeLabel::phys(site)));
        }
        for (bit, sp) in [(l, Species::Alpha), (r, Species::Beta), (u, Species::Gamma), (d, Species::Delta)] {
            if bit == 1 {
                f.push(Factor::annihilate(ModeLabel::new(site, sp)));
            }
        }
        terms.push((c, f));
    }
    Ok(OperatorPoly { terms })
}

pub fn build_fpeps(lattice: &LatticeSpec, tensors: &[FPEPSTensor]) -> Result<FockVector> {
    build_fpeps_with_cap(lattice, tensors, DEFAULT_MODE_CAP)
}

/// Applies every bond to the joint vacuum, then the site projectors in ascending `M`,
/// and keeps the component with all auxiliary modes empty.
pub fn build_fpeps_with_cap(lattice: &LatticeSpec, tensors: &[FPEPSTensor], cap: usize) -> Result<FockVector> {
    let order: Vec<usize> = (0..lattice.n_sites()).collect();
    build_fpeps_ordered(lattice, tensors, &order, cap)
}

/// Same as [`build_fpeps_with_cap`] with projectors applied in the given site order
/// (zero-based `M - 1` positions, first entry acts first).
pub fn build_fpeps_ordered(
    lattice: &LatticeSpec,
    tensors: &[FPEPSTensor],
    order: &[usize],
    cap: usize,
) -> Result<FockVector> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..lattice.n_sites()).collect::<Vec<_>>() {
        return Err(FockError::Contract("projector order must be a permutation of the sites".into()));
    }
    if tensors.len() != lattice.n_sites() {
        return Err(FockError::Contract(format!(
            "lattice {lattice} needs {} tensors, got {}",
            lattice.n_sites(),
            tensors.len()
        )));
    }
    let registry = ModeRegistry::full(lattice);
    let mut state = FockVector::vacuum_with_cap(registry, cap)?;
    for s in lattice.sites() {
        state = state.apply_poly(&bond_h(lattice, s))?;
        state = state.apply_poly(&bond_v(lattice, s))?;
    }
    for &m in order {
        state = state.apply_poly(&projector_q(lattice.site(m), &tensors[m])?)?;
    }
    let n_aux = 4 * lattice.n_sites();
    let n_phys = lattice.n_sites();
    let amps = state.amplitudes();
    let phys: Vec<Complex64> = (0..1usize << n_phys).map(|p| amps[p << n_aux]).collect();
    FockVector::from_amplitudes(ModeRegistry::physical(lattice), phys)
}
