use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::lattice::{ModeLabel, ModeRegistry};
use crate::state::FockVector;
use crate::{FockError, Result, DEFAULT_DIAG_CAP};

/// `H = i sum_kl h_kl c_k c_l` with `h` real antisymmetric, qp ordered over `modes`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    modes: Vec<ModeLabel>,
    h: DMatrix<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(modes: Vec<ModeLabel>, h: DMatrix<f64>) -> Result<Self> {
        let n = 2 * modes.len();
        if h.nrows() != n || h.ncols() != n {
            return Err(FockError::Contract(format!(
                "h must be {n}x{n}, got {}x{}",
                h.nrows(),
                h.ncols()
            )));
        }
        let scale = h.amax().max(1.0);
        if (&h + h.transpose()).amax() > 1e-12 * scale {
            return Err(FockError::Contract("h is not antisymmetric".into()));
        }
        Ok(Self { modes, h })
    }

    pub fn modes(&self) -> &[ModeLabel] {
        &self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.h
    }
}

/// Majorana `c^(kind+1)` on bit position of mode `j`: returns the image index and phase.
#[inline]
fn majorana_act(idx: usize, n: usize, j: usize, kind: usize) -> (usize, Complex64) {
    let bit = 1usize << (n - 1 - j);
    let sign = if (idx >> (n - j)).count_ones() & 1 == 1 { -1.0 } else { 1.0 };
    let occupied = idx & bit != 0;
    let phase = match (kind, occupied) {
        (0, _) => Complex64::new(sign, 0.0),
        (_, false) => Complex64::new(0.0, -sign),
        (_, true) => Complex64::new(0.0, sign),
    };
    (idx ^ bit, phase)
}

fn resolve(h: &QuadraticHamiltonian, registry: &ModeRegistry) -> Result<Vec<(usize, usize, usize, usize, f64)>> {
    let m = h.modes.len();
    let pos = h.modes.iter().map(|l| registry.position(l)).collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for k in 0..2 * m {
        for l in 0..2 * m {
            let c = h.h[(k, l)];
            if k != l && c != 0.0 {
                pairs.push((pos[k % m], k / m, pos[l % m], l / m, c));
            }
        }
    }
    Ok(pairs)
}

pub fn apply_quadratic_h(state: &FockVector, h: &QuadraticHamiltonian) -> Result<FockVector> {
    let pairs = resolve(h, state.registry())?;
    let n = state.n_modes();
    let amps = state.amplitudes();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    let i = Complex64::new(0.0, 1.0);
    for (b, &a) in amps.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for &(jk, tk, jl, tl, c) in &pairs {
            let (b1, p1) = majorana_act(b, n, jl, tl);
            let (b2, p2) = majorana_act(b1, n, jk, tk);
            out[b2] += i * c * p1 * p2 * a;
        }
    }
    FockVector::from_amplitudes(state.registry().clone(), out)
}

/// Lowest eigenpair of the dense `2^n x 2^n` matrix of `H` on `registry`.
pub fn exact_ground_state(h: &QuadraticHamiltonian, registry: &ModeRegistry) -> Result<(f64, FockVector)> {
    exact_ground_state_with_cap(h, registry, DEFAULT_DIAG_CAP)
}

pub fn exact_ground_state_with_cap(
    h: &QuadraticHamiltonian,
    registry: &ModeRegistry,
    cap: usize,
) -> Result<(f64, FockVector)> {
    let n = registry.len();
    if n > cap {
        return Err(FockError::ModeCap { requested: n, cap });
    }
    if h.h.iter().all(|&x| x == 0.0) {
        return Ok((0.0, FockVector::vacuum(registry.clone())?));
    }
    let pairs = resolve(h, registry)?;
    let dim = 1usize << n;
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    let i = Complex64::new(0.0, 1.0);
    for b in 0..dim {
        for &(jk, tk, jl, tl, c) in &pairs {
            let (b1, p1) = majorana_act(b, n, jl, tl);
            let (b2, p2) = majorana_act(b1, n, jk, tk);
            mat[(b2, b)] += i * c * p1 * p2;
        }
    }
    let eig = mat.symmetric_eigen();
    let (imin, emin) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, &e)| if e < acc.1 { (k, e) } else { acc });
    let vec: Vec<Complex64> = eig.eigenvectors.column(imin).iter().copied().collect();
    Ok((emin, FockVector::from_amplitudes(registry.clone(), vec)?))
}
