//! Translation-invariant quadratic Hamiltonians `H = i sum_kl h_kl c_k c_l`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use fock_oracle::{LatticeSpec, ModeLabel};

use crate::channel::GaussianChannel;
use crate::cm::MajoranaCM;
use crate::fourier::FourierModel;
use crate::laurent::Laurent2;
use crate::{GaussError, Result};

const ANTISYM_TOL: f64 = 1e-12;
/// Blocks with larger max-norm count as present for locality checks.
pub const LOCALITY_TOL: f64 = 1e-12;

/// `h_{(n, r), (n + D, s)} = blocks[D][(r, s)]` for Majorana types `r, s`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    blocks: BTreeMap<(i32, i32), Matrix2<f64>>,
}

impl QuadraticHamiltonian {
    /// Requires `h(-D) = -h(D)^T`.
    pub fn new(blocks: BTreeMap<(i32, i32), Matrix2<f64>>) -> Result<Self> {
        for (&(a, b), m) in &blocks {
            let partner = blocks.get(&(-a, -b)).copied().unwrap_or_else(Matrix2::zeros);
            let err = (m + partner.transpose()).amax();
            if err > ANTISYM_TOL {
                return Err(GaussError::Contract(format!("h({a},{b}) violates h(-D) = -h(D)^T by {err:e}")));
            }
        }
        let blocks = blocks.into_iter().filter(|(_, m)| m.amax() > 0.0).collect();
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &BTreeMap<(i32, i32), Matrix2<f64>> {
        &self.blocks
    }

    pub fn block(&self, dh: i32, dv: i32) -> Matrix2<f64> {
        self.blocks.get(&(dh, dv)).copied().unwrap_or_else(Matrix2::zeros)
    }

    /// Largest `|dh| + |dv|` with a block above [`LOCALITY_TOL`].
    pub fn radius(&self) -> i32 {
        self.blocks
            .iter()
            .filter(|(_, m)| m.amax() > LOCALITY_TOL)
            .map(|(&(a, b), _)| a.abs() + b.abs())
            .max()
            .unwrap_or(0)
    }

    /// `h_hat(phi) = sum_D h(D) exp(i phi.D)`.
    pub fn h_hat(&self, phi: (f64, f64)) -> Matrix2<Complex64> {
        let mut acc = Matrix2::zeros();
        for (&(a, b), m) in &self.blocks {
            let e = Complex64::from_polar(1.0, phi.0 * a as f64 + phi.1 * b as f64);
            acc += m.map(|x| Complex64::new(x, 0.0)) * e;
        }
        acc
    }

    /// Full qp matrix on a torus; displacements wrap.
    pub fn to_lattice(&self, lattice: &LatticeSpec) -> DMatrix<f64> {
        let n = lattice.n_sites();
        let mut h = DMatrix::zeros(2 * n, 2 * n);
        for s in lattice.sites() {
            let i = lattice.index(s);
            for (&(a, b), m) in &self.blocks {
                let j = lattice.index(lattice.shift(s, a as i64, b as i64));
                for r in 0..2 {
                    for t in 0..2 {
                        h[(r * n + i, t * n + j)] += m[(r, t)];
                    }
                }
            }
        }
        h
    }

    /// Same Hamiltonian as an operator on the physical modes of `lattice`, for dense checks.
    pub fn to_fock(&self, lattice: &LatticeSpec) -> Result<fock_oracle::QuadraticHamiltonian> {
        let modes: Vec<ModeLabel> = lattice.sites().map(ModeLabel::phys).collect();
        Ok(fock_oracle::QuadraticHamiltonian::new(modes, self.to_lattice(lattice))?)
    }

    /// `<H> = sum_kl h_kl Gamma_kl` on `lattice`.
    pub fn energy(&self, lattice: &LatticeSpec, gamma: &MajoranaCM) -> Result<f64> {
        if gamma.modes() != lattice.n_sites() {
            return Err(GaussError::Contract("covariance matrix does not match lattice".into()));
        }
        Ok(self.to_lattice(lattice).component_mul(gamma.matrix()).sum())
    }
}

/// Multiplies by `z_var` and divides by `(z_var - r)^2`, if exact.
fn strip_factor(p: &Laurent2, var: usize, r: f64) -> Option<Laurent2> {
    p.shift(var, 1).div_linear(var, r)?.div_linear(var, r)
}

/// Denominator and numerator of `g_hat = num / d` with every common factor
/// `(z + 2 + 1/z)` or `(2 - z - 1/z)` removed, in either variable. A constant `g_hat` reduces
/// to `d = 1`.
pub fn reduced_polynomials(model: &FourierModel) -> (Laurent2, [[Laurent2; 2]; 2]) {
    let mut d = model.d_poly().clone();
    let mut num = model.num_poly().clone();
    if let Some(((e1, e2), lead)) = d.terms().next() {
        let c = Matrix2::from_fn(|r, s| num[r][s].coeff(e1, e2) / lead);
        let constant = (0..2).all(|r| (0..2).all(|s| (&num[r][s] - &d.scale(c[(r, s)])).is_zero()));
        if constant {
            let num = std::array::from_fn(|r| std::array::from_fn(|s| Laurent2::constant(c[(r, s)])));
            return (Laurent2::constant(1.0), num);
        }
    }
    loop {
        let mut progress = false;
        for var in [1, 2] {
            for r in [-1.0, 1.0] {
                let Some(d2) = strip_factor(&d, var, r) else { continue };
                let mut ok = true;
                let mut n2: [[Laurent2; 2]; 2] = Default::default();
                for a in 0..2 {
                    for b in 0..2 {
                        match strip_factor(&num[a][b], var, r) {
                            Some(x) => n2[a][b] = x,
                            None => ok = false,
                        }
                    }
                }
                if ok {
                    d = d2;
                    num = n2;
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    (d, num)
}

/// Parent Hamiltonian of a per-site channel; see [`parent_hamiltonian_from_model`].
pub fn parent_hamiltonian(ch: &GaussianChannel, radius_cap: i32) -> Result<QuadraticHamiltonian> {
    parent_hamiltonian_from_model(&FourierModel::new(ch)?, radius_cap)
}

/// Parent Hamiltonian with `h_hat = -d_red g_hat`, where `d_red` is the reduced denominator
/// normalized positive. Fails if a block lies beyond `radius_cap` in either direction.
pub fn parent_hamiltonian_from_model(model: &FourierModel, radius_cap: i32) -> Result<QuadraticHamiltonian> {
    let (d, num) = reduced_polynomials(model);
    // Sign of d_red where it is largest on a coarse grid.
    let mut best = (0.0f64, 1.0f64);
    for a in 0..16 {
        for b in 0..16 {
            let tau = std::f64::consts::TAU;
            let v = d.eval_phi(tau * a as f64 / 16.0, tau * b as f64 / 16.0).re;
            if v.abs() > best.0 {
                best = (v.abs(), v.signum());
            }
        }
    }
    let sign = -best.1;
    let mut blocks: BTreeMap<(i32, i32), Matrix2<f64>> = BTreeMap::new();
    for r in 0..2 {
        for s in 0..2 {
            for ((a, b), c) in num[r][s].terms() {
                blocks.entry((a, b)).or_insert_with(Matrix2::zeros)[(r, s)] = sign * c;
            }
        }
    }
    for (&(a, b), m) in &blocks {
        if (a.abs() > radius_cap || b.abs() > radius_cap) && m.amax() > LOCALITY_TOL {
            return Err(GaussError::Locality { dh: a, dv: b, norm: m.amax() });
        }
    }
    QuadraticHamiltonian::new(blocks)
}

/// `H = sum_n [ sum_D P(D) a^dag_n a^dag_{n+D} + h.c. ] + sum_n sum_{D != 0} T(D) a^dag_n a_{n+D}
///      + mu sum_n a^dag_n a_n + N * constant`,
/// with `P` on the half-space `dh > 0` or `dh = 0, dv > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracTable {
    pub pairing: BTreeMap<(i32, i32), Complex64>,
    pub hopping: BTreeMap<(i32, i32), Complex64>,
    pub mu: f64,
    pub constant: f64,
}

fn half_space(d: (i32, i32)) -> bool {
    d.0 > 0 || (d.0 == 0 && d.1 > 0)
}

const DIRAC_TOL: f64 = 1e-13;

fn prune(m: BTreeMap<(i32, i32), Complex64>) -> BTreeMap<(i32, i32), Complex64> {
    m.into_iter().filter(|(_, v)| v.norm() > DIRAC_TOL).collect()
}

/// Rewrites `i sum h c c` with `c1 = a^dag + a`, `c2 = -i (a^dag - a)`.
pub fn majorana_to_dirac(h: &QuadraticHamiltonian) -> Result<DiracTable> {
    let i = Complex64::i();
    let u = [Complex64::new(1.0, 0.0), -i];
    let v = [Complex64::new(1.0, 0.0), i];
    let mut p_raw: BTreeMap<(i32, i32), Complex64> = BTreeMap::new();
    let mut a_raw: BTreeMap<(i32, i32), Complex64> = BTreeMap::new();
    let mut t: BTreeMap<(i32, i32), Complex64> = BTreeMap::new();
    let mut constant = Complex64::new(0.0, 0.0);
    for (&dd, m) in h.blocks() {
        let neg = (-dd.0, -dd.1);
        for r in 0..2 {
            for s in 0..2 {
                let w = i * m[(r, s)];
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                *t.entry(dd).or_default() += w * u[r] * v[s];
                if dd == (0, 0) {
                    // a a^dag = 1 - a^dag a; a^dag a^dag = a a = 0.
                    *t.entry(dd).or_default() -= w * v[r] * u[s];
                    constant += w * v[r] * u[s];
                } else {
                    *p_raw.entry(dd).or_default() += w * u[r] * u[s];
                    *a_raw.entry(dd).or_default() += w * v[r] * v[s];
                    *t.entry(neg).or_default() -= w * v[r] * u[s];
                }
            }
        }
    }
    let keys: Vec<(i32, i32)> = p_raw.keys().chain(a_raw.keys()).copied().collect();
    let mut pairing = BTreeMap::new();
    for dd in keys.into_iter().filter(|&d| half_space(d)) {
        let neg = (-dd.0, -dd.1);
        let get = |m: &BTreeMap<(i32, i32), Complex64>, k| m.get(&k).copied().unwrap_or_default();
        let pf = get(&p_raw, dd) - get(&p_raw, neg);
        let af = get(&a_raw, dd) - get(&a_raw, neg);
        if (af + pf.conj()).norm() > 1e-12 {
            return Err(GaussError::Numerical(format!("pairing at {dd:?} is not paired with its conjugate")));
        }
        pairing.insert(dd, pf);
    }
    let mu_c = t.remove(&(0, 0)).unwrap_or_default();
    for (&dd, &x) in &t {
        let back = t.get(&(-dd.0, -dd.1)).copied().unwrap_or_default();
        if (x - back.conj()).norm() > 1e-12 {
            return Err(GaussError::Numerical(format!("hopping at {dd:?} is not Hermitian")));
        }
    }
    if mu_c.im.abs() > 1e-12 || constant.im.abs() > 1e-12 {
        return Err(GaussError::Numerical("on-site terms are not real".into()));
    }
    Ok(DiracTable { pairing: prune(pairing), hopping: prune(t), mu: mu_c.re, constant: constant.re })
}

/// Inverse of [`majorana_to_dirac`] up to the constant, which `i sum h c c` cannot carry.
pub fn dirac_to_majorana(table: &DiracTable) -> Result<QuadraticHamiltonian> {
    let i = Complex64::i();
    let alpha = [Complex64::new(0.5, 0.0), 0.5 * i];
    let beta = [Complex64::new(0.5, 0.0), -0.5 * i];
    let mut c: BTreeMap<(i32, i32), [[Complex64; 2]; 2]> = BTreeMap::new();
    let mut add = |d: (i32, i32), x: usize, y: usize, w: Complex64| {
        c.entry(d).or_insert([[Complex64::new(0.0, 0.0); 2]; 2])[x][y] += w;
    };
    for (&dd, &pf) in &table.pairing {
        if !half_space(dd) {
            return Err(GaussError::Contract(format!("pairing displacement {dd:?} outside the half-space")));
        }
        for x in 0..2 {
            for y in 0..2 {
                add(dd, x, y, pf * alpha[x] * alpha[y]);
                // conj(P) a_{n+D} a_n, written as c_0 c_{-D}.
                add((-dd.0, -dd.1), x, y, pf.conj() * beta[x] * beta[y]);
            }
        }
    }
    let mut hop = table.hopping.clone();
    *hop.entry((0, 0)).or_default() += table.mu;
    for (&dd, &tv) in &hop {
        for x in 0..2 {
            for y in 0..2 {
                add(dd, x, y, tv * alpha[x] * beta[y]);
            }
        }
    }
    let mut blocks = BTreeMap::new();
    let keys: Vec<(i32, i32)> = c.keys().flat_map(|&(a, b)| [(a, b), (-a, -b)]).collect();
    for dd in keys {
        let neg = (-dd.0, -dd.1);
        let zero = [[Complex64::new(0.0, 0.0); 2]; 2];
        let cd = c.get(&dd).copied().unwrap_or(zero);
        let cn = c.get(&neg).copied().unwrap_or(zero);
        let mut m = Matrix2::zeros();
        for x in 0..2 {
            for y in 0..2 {
                let hv = (cd[x][y] - cn[y][x]) / (2.0 * i);
                if hv.im.abs() > 1e-12 {
                    return Err(GaussError::Numerical(format!("Dirac table is not Hermitian at {dd:?}")));
                }
                m[(x, y)] = if dd == (0, 0) && x == y { 0.0 } else { hv.re };
            }
        }
        blocks.insert(dd, m);
    }
    QuadraticHamiltonian::new(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(t: f64) -> QuadraticHamiltonian {
        QuadraticHamiltonian::new([((0, 0), Matrix2::new(0.0, t, -t, 0.0))].into_iter().collect()).unwrap()
    }

    #[test]
    fn single_mode_is_number_operator() {
        // i t (c1 c2 - c2 c1) = 2t (1 - 2 n).
        let d = majorana_to_dirac(&single(1.0)).unwrap();
        assert!((d.mu + 4.0).abs() < 1e-15);
        assert!((d.constant - 2.0).abs() < 1e-15);
        assert!(d.pairing.is_empty() && d.hopping.is_empty());
    }

    #[test]
    fn rejects_non_antisymmetric_blocks() {
        let r = QuadraticHamiltonian::new([((1, 0), Matrix2::new(1.0, 0.0, 0.0, 0.0))].into_iter().collect());
        assert!(r.is_err());
    }

    #[test]
    fn dirac_round_trip() {
        let mut b = BTreeMap::new();
        b.insert((1, 0), Matrix2::new(0.3, -0.7, 0.2, 1.1));
        b.insert((-1, 0), -Matrix2::new(0.3, -0.7, 0.2, 1.1).transpose());
        b.insert((0, 1), Matrix2::new(-0.4, 0.0, 0.9, 0.5));
        b.insert((0, -1), -Matrix2::new(-0.4, 0.0, 0.9, 0.5).transpose());
        b.insert((0, 0), Matrix2::new(0.0, 0.25, -0.25, 0.0));
        let h = QuadraticHamiltonian::new(b).unwrap();
        let back = dirac_to_majorana(&majorana_to_dirac(&h).unwrap()).unwrap();
        for (k, m) in h.blocks() {
            assert!((m - back.block(k.0, k.1)).amax() < 1e-14, "{k:?}");
        }
        for (k, m) in back.blocks() {
            assert!((m - h.block(k.0, k.1)).amax() < 1e-14, "{k:?}");
        }
    }

    #[test]
    fn lattice_matrix_matches_fock_action() {
        let h = single(0.5);
        let l = LatticeSpec::new(2, 1).unwrap();
        let m = h.to_lattice(&l);
        assert_eq!(m[(0, 2)], 0.5);
        assert_eq!(m[(1, 3)], 0.5);
        assert!(h.to_fock(&l).is_ok());
    }
}
