//! Per-momentum blocks of translation-invariant covariance matrices.
//!
//! With one physical and four virtual modes per site, each momentum carries the 2x2 complex
//! block `g_hat(phi) = B (D - omega_hat(phi))^{-1} B^T + A` over `(c1, c2)`. Numerator and
//! denominator are kept as exact Laurent polynomials in `z = exp(i phi)`.

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use fock_oracle::LatticeSpec;

use crate::channel::{bond_omega, GaussianChannel};
use crate::cm::MajoranaCM;
use crate::laurent::Laurent2;
use crate::{GaussError, Result};

/// `|d(phi)|` below this is a zero-norm momentum.
pub const ZERO_NORM_TOL: f64 = 1e-12;

/// `(2 pi k_h / N_h, 2 pi k_v / N_v)` in `k_v`-major order.
pub fn reciprocal_points(lattice: &LatticeSpec) -> Vec<(f64, f64)> {
    let tau = std::f64::consts::TAU;
    let mut out = Vec::with_capacity(lattice.n_sites());
    for kv in 0..lattice.nv {
        for kh in 0..lattice.nh {
            out.push((tau * kh as f64 / lattice.nh as f64, tau * kv as f64 / lattice.nv as f64));
        }
    }
    out
}

/// Site-local qp position of Majorana `t` of virtual species `sp` (alpha..delta = 0..4).
fn vq(t: usize, sp: usize) -> usize {
    4 * t + sp
}

/// `omega_hat(z)_{ij} = sum_D Gamma_in[(0, i), (D, j)] z^D` over the 8 site-local virtual
/// Majoranas.
pub fn symbolic_fourier_bond() -> Vec<Vec<Laurent2>> {
    let mut w = vec![vec![Laurent2::zero(); 8]; 8];
    let om = bond_omega();
    // (x species at the origin, y species at offset e).
    for (xs, ys, e) in [(1usize, 0usize, (1i32, 0i32)), (3, 2, (0, 1))] {
        let loc = [(xs, 0usize, 0i32), (ys, 0, 1), (xs, 1, 0), (ys, 1, 1)];
        for (i, &(si, ti, oi)) in loc.iter().enumerate() {
            for (j, &(sj, tj, oj)) in loc.iter().enumerate() {
                if om[i][j] == 0.0 {
                    continue;
                }
                let k = oj - oi;
                w[vq(ti, si)][vq(tj, sj)].add_term(om[i][j], k * e.0, k * e.1);
            }
        }
    }
    w
}

/// Numeric `omega_hat(phi)`.
pub fn fourier_bond(phi: (f64, f64)) -> DMatrix<Complex64> {
    let w = symbolic_fourier_bond();
    DMatrix::from_fn(8, 8, |i, j| w[i][j].eval_phi(phi.0, phi.1))
}

/// One momentum block.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBlock {
    pub phi: (f64, f64),
    /// `det(D - omega_hat(phi))`.
    pub d: f64,
    /// Real with `p / d = i g_hat_11`.
    pub p: f64,
    /// `q / d = g_hat_21`.
    pub q: Complex64,
    /// `None` at zero-norm momenta. Computed independently of `p, q, d` and more accurate
    /// than their quotients near removable zeros.
    pub g_hat: Option<Matrix2<Complex64>>,
    pub zero_norm: bool,
}

impl FourierBlock {
    /// `(p/d, q/d)` read from `g_hat`.
    pub fn ratios(&self) -> Option<(f64, Complex64)> {
        self.g_hat.map(|g| ((Complex64::i() * g[(0, 0)]).re, g[(1, 0)]))
    }

    /// Block built from `(p, q, d)` with `g_hat = -(1/d) [[i p, q], [-q, -i p]]`, or its
    /// anti-Hermitian completion when `q` is complex.
    pub fn from_pqd(phi: (f64, f64), p: f64, q: Complex64, d: f64) -> Self {
        let zero_norm = d.abs() < ZERO_NORM_TOL;
        let i = Complex64::i();
        let g_hat = (!zero_norm).then(|| {
            Matrix2::new(-i * p / d, -q.conj() / d, q / d, i * p / d)
        });
        Self { phi, d, p, q, g_hat, zero_norm }
    }

    /// Real 4x4 form over the modes `(C1, -C2, -S2, -S1)`, with
    /// `C_x = sqrt(2/N) sum_n cos(phi.n) c^x_n` and `S_x = sqrt(2/N) sum_n sin(phi.n) c^x_n`:
    ///
    /// ```text
    ///        [  0     Re q  -Im q   p   ]
    /// 1/d *  [ -Re q   0     p     Im q ]
    ///        [  Im q  -p     0     Re q ]
    ///        [ -p    -Im q  -Re q   0   ]
    /// ```
    pub fn gamma_hat(&self) -> Option<Matrix4<f64>> {
        if self.zero_norm {
            return None;
        }
        let (p, rq, iq) = (self.p / self.d, self.q.re / self.d, self.q.im / self.d);
        Some(Matrix4::new(
            0.0, rq, -iq, p, //
            -rq, 0.0, p, iq, //
            iq, -p, 0.0, rq, //
            -p, -iq, -rq, 0.0,
        ))
    }
}

/// Real covariance of `(C1, -C2, -S2, -S1)` computed directly from a complex block. Valid when
/// `phi` and `-phi` are distinct momenta.
pub fn real_block_from_g_hat(g: &Matrix2<Complex64>) -> Matrix4<f64> {
    // Covariances over (C1, C2, S1, S2).
    let mut r = Matrix4::zeros();
    for x in 0..2 {
        for y in 0..2 {
            r[(x, y)] = g[(x, y)].re;
            r[(2 + x, 2 + y)] = g[(x, y)].re;
            r[(x, 2 + y)] = g[(x, y)].im;
            r[(2 + x, y)] = -g[(x, y)].im;
        }
    }
    let pick = [0usize, 1, 3, 2];
    let sign = [1.0, -1.0, -1.0, -1.0];
    Matrix4::from_fn(|i, j| sign[i] * sign[j] * r[(pick[i], pick[j])])
}

/// Exact numerator and denominator polynomials of a per-site channel.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierModel {
    channel: GaussianChannel,
    d: Laurent2,
    /// `g_hat = num / d`.
    num: [[Laurent2; 2]; 2],
    /// Same ratio with common factors cancelled; evaluated for `g_hat`.
    reduced: (Laurent2, [[Laurent2; 2]; 2]),
}

impl FourierModel {
    pub fn new(channel: &GaussianChannel) -> Result<Self> {
        if channel.p_modes() != 1 || channel.q_modes() != 4 {
            return Err(GaussError::Contract(
                "Fourier blocks need one physical and four virtual modes per site".into(),
            ));
        }
        let w = symbolic_fourier_bond();
        let m: Vec<Vec<Laurent2>> = (0..8)
            .map(|i| (0..8).map(|j| &Laurent2::constant(channel.d()[(i, j)]) - &w[i][j]).collect())
            .collect();
        let d = Laurent2::det(&m);
        // b_r (M)^{-1} b_s^T = -det([[M, b_s^T], [b_r, 0]]) / det M.
        let b = channel.b();
        let mut num: [[Laurent2; 2]; 2] = Default::default();
        for (r, row) in num.iter_mut().enumerate() {
            for (s, slot) in row.iter_mut().enumerate() {
                let mut bordered = m.clone();
                for (i, line) in bordered.iter_mut().enumerate() {
                    line.push(Laurent2::constant(b[(s, i)]));
                }
                let mut last: Vec<Laurent2> = (0..8).map(|j| Laurent2::constant(b[(r, j)])).collect();
                last.push(Laurent2::zero());
                bordered.push(last);
                let bab = -&Laurent2::det(&bordered);
                *slot = &bab + &d.scale(channel.a()[(r, s)]);
            }
        }
        let mut model = Self { channel: channel.clone(), d, num, reduced: Default::default() };
        model.reduced = crate::hamiltonian::reduced_polynomials(&model);
        Ok(model)
    }

    pub fn channel(&self) -> &GaussianChannel {
        &self.channel
    }

    pub fn d_poly(&self) -> &Laurent2 {
        &self.d
    }

    pub fn num_poly(&self) -> &[[Laurent2; 2]; 2] {
        &self.num
    }

    pub fn block(&self, phi: (f64, f64)) -> FourierBlock {
        let d = self.d.eval_phi(phi.0, phi.1).re;
        let zero_norm = d.abs() < ZERO_NORM_TOL;
        let n = Matrix2::from_fn(|r, s| self.num[r][s].eval_phi(phi.0, phi.1));
        let i = Complex64::i();
        let p = (i * n[(0, 0)]).re;
        let q = n[(1, 0)];
        // Away from zero norm, g_hat comes from the reduced ratio: near removable zeros the
        // unreduced quotient loses about eps/|d| in relative accuracy.
        let g_hat = (!zero_norm).then(|| {
            let (dr, nr) = &self.reduced;
            Matrix2::from_fn(|r, s| nr[r][s].eval_phi(phi.0, phi.1)) / dr.eval_phi(phi.0, phi.1)
        });
        FourierBlock { phi, d, p, q, g_hat, zero_norm }
    }

    /// Zero-norm momenta among the reciprocal points of `lattice`.
    pub fn zero_momenta(&self, lattice: &LatticeSpec) -> Vec<(f64, f64)> {
        reciprocal_points(lattice).into_iter().filter(|&phi| self.block(phi).zero_norm).collect()
    }
}

pub fn gamma_out_hat(ch: &GaussianChannel, phi: (f64, f64)) -> Result<FourierBlock> {
    Ok(FourierModel::new(ch)?.block(phi))
}

/// `max |g_hat^2 + 1|`.
pub fn purity_check(block: &FourierBlock) -> Result<f64> {
    let g = block.g_hat.as_ref().ok_or_else(|| GaussError::ZeroNorm {
        det: block.d,
        context: format!("momentum {:?}", block.phi),
    })?;
    let r = g * g + Matrix2::identity();
    Ok(r.iter().fold(0.0f64, |a, x| a.max(x.norm())))
}

/// Translation-invariant covariance matrix on a finite torus, stored by displacement.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationInvariantCM {
    lattice: LatticeSpec,
    /// `g[M(D) - 1][r][s] = Gamma[(r, n), (s, n + D)]`.
    g: Vec<[[f64; 2]; 2]>,
}

impl TranslationInvariantCM {
    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// Correlator at displacement `(dh, dv)`, wrapped onto the torus.
    pub fn at(&self, dh: i64, dv: i64) -> [[f64; 2]; 2] {
        let s = self.lattice.shift((1, 1), dh, dv);
        self.g[self.lattice.index(s)]
    }

    /// Full qp covariance matrix over the listed sites.
    pub fn restrict_sites(&self, sites: &[(usize, usize)]) -> Result<MajoranaCM> {
        let k = sites.len();
        let mut m = DMatrix::zeros(2 * k, 2 * k);
        for (a, &sa) in sites.iter().enumerate() {
            for (b, &sb) in sites.iter().enumerate() {
                let blk = self.at(sb.0 as i64 - sa.0 as i64, sb.1 as i64 - sa.1 as i64);
                for r in 0..2 {
                    for s in 0..2 {
                        m[(r * k + a, s * k + b)] = if a == b && r == s { 0.0 } else { blk[r][s] };
                    }
                }
            }
        }
        let asym = (&m + m.transpose()).amax();
        if asym > 1e-10 {
            return Err(GaussError::Numerical(format!("reconstructed covariance asymmetric ({asym:e})")));
        }
        MajoranaCM::new((&m - m.transpose()) * 0.5)
    }

    pub fn to_cm(&self) -> Result<MajoranaCM> {
        let sites: Vec<(usize, usize)> = self.lattice.sites().collect();
        self.restrict_sites(&sites)
    }
}

/// Inverse transform `g(D) = (1/N) sum_phi g_hat(phi) exp(-i phi.D)` over the reciprocal points.
pub fn real_space_gamma(model: &FourierModel, lattice: &LatticeSpec) -> Result<TranslationInvariantCM> {
    let pts = reciprocal_points(lattice);
    let mut blocks = Vec::with_capacity(pts.len());
    let mut zeros = Vec::new();
    for &phi in &pts {
        let b = model.block(phi);
        match b.g_hat {
            Some(g) => blocks.push(g),
            None => zeros.push(phi),
        }
    }
    if !zeros.is_empty() {
        return Err(GaussError::ZeroMomenta(zeros));
    }
    let n = pts.len() as f64;
    let mut g = Vec::with_capacity(lattice.n_sites());
    for s in lattice.sites() {
        let (dh, dv) = ((s.0 - 1) as f64, (s.1 - 1) as f64);
        let mut acc = Matrix2::<Complex64>::zeros();
        for (phi, blk) in pts.iter().zip(&blocks) {
            acc += blk * Complex64::from_polar(1.0 / n, -(phi.0 * dh + phi.1 * dv));
        }
        let imag = acc.iter().fold(0.0f64, |a, x| a.max(x.im.abs()));
        if imag > 1e-10 {
            return Err(GaussError::Numerical(format!("inverse transform not real ({imag:e})")));
        }
        g.push([[acc[(0, 0)].re, acc[(0, 1)].re], [acc[(1, 0)].re, acc[(1, 1)].re]]);
    }
    Ok(TranslationInvariantCM { lattice: *lattice, g })
}
