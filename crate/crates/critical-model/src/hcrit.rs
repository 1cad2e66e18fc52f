use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use fock_oracle::LatticeSpec;
use gaussian_core::DiracTable;

use crate::{ModelError, Result};

/// The displayed critical Hamiltonian:
/// `2i a^dag_(h,v) a^dag_(h,v+1) - 2i a^dag_(h,v) a^dag_(h+1,v) + h.c.
///  - a^dag_(h,v) (a_(h+1,v+1) + a_(h+1,v-1)) + h.c.`
/// Odd lattice sizes only.
pub fn hcrit_coefficients(lattice: &LatticeSpec) -> Result<DiracTable> {
    if lattice.nh.is_multiple_of(2) || lattice.nv.is_multiple_of(2) {
        return Err(ModelError::Precondition(format!("lattice {lattice} must be odd in both directions")));
    }
    let pairing = BTreeMap::from([((0, 1), Complex64::new(0.0, 2.0)), ((1, 0), Complex64::new(0.0, -2.0))]);
    let m1 = Complex64::new(-1.0, 0.0);
    let hopping = BTreeMap::from([((1, 1), m1), ((1, -1), m1), ((-1, -1), m1), ((-1, 1), m1)]);
    Ok(DiracTable { pairing, hopping, mu: 0.0, constant: 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proportionality {
    /// Least-squares `lambda` in `candidate = lambda * reference`.
    pub scale: f64,
    /// Largest `|candidate - lambda reference|` on the reference support.
    pub residual: f64,
    /// Largest `|candidate|` off the reference support.
    pub off_pattern: f64,
}

impl Proportionality {
    pub fn holds(&self, residual_tol: f64, off_tol: f64) -> bool {
        self.scale > 0.0 && self.residual <= residual_tol && self.off_pattern <= off_tol
    }
}

fn entries(t: &DiracTable) -> BTreeMap<(u8, i32, i32), Complex64> {
    let mut m = BTreeMap::new();
    for (&(a, b), &v) in &t.pairing {
        m.insert((0, a, b), v);
    }
    for (&(a, b), &v) in &t.hopping {
        m.insert((1, a, b), v);
    }
    m.insert((2, 0, 0), Complex64::new(t.mu, 0.0));
    m
}

/// Fits `candidate ~ lambda * reference` over pairing, hopping and chemical potential. The
/// additive constant is ignored.
pub fn proportionality(reference: &DiracTable, candidate: &DiracTable) -> Proportionality {
    let r = entries(reference);
    let c = entries(candidate);
    let zero = Complex64::new(0.0, 0.0);
    let support: BTreeSet<_> = r.iter().filter(|(_, v)| v.norm() > 0.0).map(|(k, _)| *k).collect();
    let (mut num, mut den) = (0.0, 0.0);
    for k in &support {
        let (x, y) = (r[k], c.get(k).copied().unwrap_or(zero));
        num += (x.conj() * y).re;
        den += x.norm_sqr();
    }
    let scale = if den > 0.0 { num / den } else { 0.0 };
    let residual = support
        .iter()
        .map(|k| (c.get(k).copied().unwrap_or(zero) - r[k] * scale).norm())
        .fold(0.0f64, f64::max);
    let off_pattern = c.iter().filter(|(k, _)| !support.contains(k)).map(|(_, v)| v.norm()).fold(0.0f64, f64::max);
    Proportionality { scale, residual, off_pattern }
}
