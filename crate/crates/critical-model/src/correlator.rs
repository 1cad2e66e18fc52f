//! Real-space correlators `xi_{n1,n2} = (2 pi)^-2 int g_xi(phi) exp(i n.phi) d^2 phi` with
//! `g_p = g_hat_11` and `g_q = g_hat_12`. In the lattice convention of `gaussian-core` this is
//! `Gamma[(1, s), (y, s - n)]`, `y = 1` for `p` and `y = 2` for `q`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use gaussian_core::{reduced_polynomials, Laurent2};

use crate::example::example_model;
use crate::quadrature::gauss_legendre_on;
use crate::{ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    P,
    Q,
}

impl Kind {
    pub const ALL: [Kind; 2] = [Kind::P, Kind::Q];

    fn col(self) -> usize {
        match self {
            Kind::P => 0,
            Kind::Q => 1,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::P => "p",
            Kind::Q => "q",
        })
    }
}

impl FromStr for Kind {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Kind::P),
            "q" => Ok(Kind::Q),
            _ => Err(ModelError::Precondition(format!("unknown correlator kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorResult {
    pub n1: i64,
    pub n2: i64,
    pub kind: Kind,
    pub numeric: f64,
    pub residue_closed_form: f64,
    pub asymptotic: f64,
}

/// Essential zeros of the reduced denominator, where `g_hat` has no limit.
pub const SINGULAR_POINTS: [(f64, f64); 2] = [(FRAC_PI_2, FRAC_PI_2), (3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2)];
/// Width of the bump `chi = exp(-(r/sigma)^8)` around each singular point.
pub const BUMP_SIGMA: f64 = 0.5;
/// Polar patch radius; `chi(PATCH_RADIUS)` is below `1e-200`.
const PATCH_RADIUS: f64 = 2.2 * BUMP_SIGMA;
pub const MIN_GRID: usize = 101;
/// Imaginary parts above this mean the integrand lost its symmetry.
const IMAG_TOL: f64 = 1e-9;

fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(TAU) - PI
}

fn bump(phi: (f64, f64), centre: (f64, f64)) -> f64 {
    let r2 = (wrap(phi.0 - centre.0).powi(2) + wrap(phi.1 - centre.1).powi(2)) / (BUMP_SIGMA * BUMP_SIGMA);
    (-r2.powi(4)).exp()
}

/// `(g_hat_11, g_hat_12)` from the reduced polynomials.
struct Integrand {
    d: Laurent2,
    n11: Laurent2,
    n12: Laurent2,
}

impl Integrand {
    fn new() -> Self {
        let (d, num) = reduced_polynomials(&example_model());
        let [[n11, n12], _] = num;
        Self { d, n11, n12 }
    }

    fn eval(&self, phi: (f64, f64)) -> [Complex64; 2] {
        let d = self.d.eval_phi(phi.0, phi.1);
        [self.n11.eval_phi(phi.0, phi.1) / d, self.n12.eval_phi(phi.0, phi.1) / d]
    }
}

/// Precomputed quadrature for [`correlator_numeric`]: a `grid x grid` trapezoid rule on the
/// smooth part `g (1 - chi)` plus polar Gauss-Legendre patches on `g chi` around the
/// singular points.
pub struct CorrelatorGrid {
    grid: usize,
    roots: Vec<Complex64>,
    regular: Vec<[Complex64; 2]>,
    patch: Vec<((f64, f64), [Complex64; 2])>,
}

impl CorrelatorGrid {
    /// `grid` must be odd and at least [`MIN_GRID`].
    pub fn new(grid: usize) -> Result<Self> {
        if grid.is_multiple_of(2) || grid < MIN_GRID {
            return Err(ModelError::Precondition(format!("grid must be odd and >= {MIN_GRID}, got {grid}")));
        }
        let f = Integrand::new();
        let model = example_model();
        let h = TAU / grid as f64;
        let zeros: Vec<(f64, f64)> = (0..grid * grid)
            .into_par_iter()
            .map(|i| (h * (i / grid) as f64, h * (i % grid) as f64))
            .filter(|&phi| model.block(phi).zero_norm)
            .collect();
        if !zeros.is_empty() {
            return Err(ModelError::ZeroNorm(zeros));
        }
        let w = 1.0 / (grid * grid) as f64;
        let regular: Vec<[Complex64; 2]> = (0..grid * grid)
            .into_par_iter()
            .map(|i| {
                let phi = (h * (i / grid) as f64, h * (i % grid) as f64);
                let chi: f64 = SINGULAR_POINTS.iter().map(|&c| bump(phi, c)).sum();
                let g = f.eval(phi);
                [g[0] * (w * (1.0 - chi)), g[1] * (w * (1.0 - chi))]
            })
            .collect();
        let (mr, mt) = ((grid / 4).max(48), (grid / 2).max(64));
        let (r, wr) = gauss_legendre_on(mr, 0.0, PATCH_RADIUS);
        let mut nodes = Vec::with_capacity(2 * mr * mt);
        for &c in &SINGULAR_POINTS {
            for (ri, wi) in r.iter().zip(&wr) {
                for j in 0..mt {
                    let th = TAU * j as f64 / mt as f64;
                    let phi = (c.0 + ri * th.cos(), c.1 + ri * th.sin());
                    // Area element r dr dtheta over (2 pi)^2.
                    let weight = wi * ri * (TAU / mt as f64) / (TAU * TAU) * bump(phi, c);
                    nodes.push((phi, weight));
                }
            }
        }
        let patch = nodes
            .into_par_iter()
            .map(|(phi, weight)| {
                let g = f.eval(phi);
                (phi, [g[0] * weight, g[1] * weight])
            })
            .collect();
        let roots = (0..grid).map(|k| Complex64::from_polar(1.0, h * k as f64)).collect();
        Ok(Self { grid, roots, regular, patch })
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn value(&self, n1: i64, n2: i64, kind: Kind) -> Result<f64> {
        let g = self.grid as i64;
        let c = kind.col();
        let (a, b) = (n1.rem_euclid(g) as usize, n2.rem_euclid(g) as usize);
        let mut acc = Complex64::new(0.0, 0.0);
        for k1 in 0..self.grid {
            let base = (a * k1) % self.grid;
            let row = &self.regular[k1 * self.grid..(k1 + 1) * self.grid];
            let mut idx = base;
            for v in row {
                acc += v[c] * self.roots[idx];
                idx += b;
                if idx >= self.grid {
                    idx -= self.grid;
                }
            }
        }
        for (phi, v) in &self.patch {
            acc += v[c] * Complex64::from_polar(1.0, n1 as f64 * phi.0 + n2 as f64 * phi.1);
        }
        if acc.im.abs() > IMAG_TOL {
            return Err(ModelError::Numerical(format!("correlator ({n1}, {n2}) {kind} has imaginary part {:e}", acc.im)));
        }
        Ok(acc.re)
    }
}

/// Quadrature value of the correlator double integral; see [`CorrelatorGrid`].
pub fn correlator_numeric(n1: i64, n2: i64, kind: Kind, grid: usize) -> Result<f64> {
    CorrelatorGrid::new(grid)?.value(n1, n2, kind)
}

/// Plain `grid x grid` Riemann sum of the unreduced blocks: the exact correlator of the
/// `grid x grid` torus. Any grid size; fails on zero-norm momenta.
pub fn correlator_trapezoid(n1: i64, n2: i64, kind: Kind, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(ModelError::Precondition("grid must be positive".into()));
    }
    let model = example_model();
    let h = TAU / grid as f64;
    let mut zeros = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    for k1 in 0..grid {
        for k2 in 0..grid {
            let phi = (h * k1 as f64, h * k2 as f64);
            let b = model.block(phi);
            match b.g_hat {
                Some(g) => acc += g[(0, kind.col())] * Complex64::from_polar(1.0, n1 as f64 * phi.0 + n2 as f64 * phi.1),
                None => zeros.push(phi),
            }
        }
    }
    if !zeros.is_empty() {
        return Err(ModelError::ZeroNorm(zeros));
    }
    let v = acc / (grid * grid) as f64;
    if v.im.abs() > IMAG_TOL {
        return Err(ModelError::Numerical(format!("imaginary part {:e}", v.im)));
    }
    Ok(v.re)
}

/// Numerators of `xi/d` as rational functions of `z = exp(i phi1)`, over the common
/// denominator `2 i z - (z^2 - 1) sin phi2`.
fn z_numerator(kind: Kind, z: Complex64, phi2: f64) -> Complex64 {
    let i = Complex64::i();
    match kind {
        Kind::P => i * (z * z - 1.0 - 2.0 * i * z * phi2.sin()),
        Kind::Q => i * (z * z + 1.0) * phi2.cos(),
    }
}

/// Poles `z_-` and `z_+` of the common denominator.
pub fn poles(phi2: f64) -> (Complex64, Complex64) {
    let (c, s) = (phi2.cos().abs(), phi2.sin());
    (Complex64::new(0.0, (1.0 - c) / s), Complex64::new(0.0, (1.0 + c) / s))
}

/// `I(phi2) = (2 pi i)^-1 oint (xi/d) z^(n1 - 1) dz` over the unit circle, as the sum of the
/// residues inside it: `z_-` always, and `z = 0` when `n1 = 0`. Requires `sin phi2 != 0`.
pub fn residue_integrand(n1: i64, kind: Kind, phi2: f64) -> Result<Complex64> {
    if n1 < 0 {
        return Err(ModelError::Precondition(format!("n1 must be >= 0, got {n1}")));
    }
    let s = phi2.sin();
    if s == 0.0 {
        return Err(ModelError::Precondition("sin phi2 = 0".into()));
    }
    let i = Complex64::i();
    let (zm, _) = poles(phi2);
    let dprime = 2.0 * i - 2.0 * zm * s;
    let mut total = z_numerator(kind, zm, phi2) * zm.powi(n1 as i32 - 1) / dprime;
    if n1 == 0 {
        total += z_numerator(kind, Complex64::new(0.0, 0.0), phi2) / s;
    }
    Ok(total)
}

/// `I^(p)` on `[0, pi/2]` in the form `i^(n1+1) cos t tan(t/2)^(n1-1) / (1 + cos t)`, `n1 >= 1`.
fn reduced_i_p(n1: i64, t: f64) -> Complex64 {
    let c = t.cos();
    Complex64::i().powi(n1 as i32 + 1) * (c * (t / 2.0).tan().powi(n1 as i32 - 1) / (1.0 + c))
}

const RESIDUE_NODES: usize = 160;

/// Residue-reduced correlator. For `n1 >= 1`:
/// `p = (1/2pi) (1 - (-1)^(n1+n2)) 2 Re J`, `q = -(1/2pi) (1 + (-1)^(n1+n2)) 2 Re J` with
/// `J = int_0^(pi/2) exp(i n2 t) I^(p)(t) dt`. For `n1 = 0` the residues are integrated over
/// the full period.
pub fn correlator_residue(n1: i64, n2: i64, kind: Kind) -> Result<f64> {
    if n1 < 0 {
        return Err(ModelError::Precondition(format!("n1 must be >= 0, got {n1}")));
    }
    if n1 == 0 {
        let mut acc = Complex64::new(0.0, 0.0);
        for q in 0..4 {
            let (a, b) = (q as f64 * FRAC_PI_2, (q + 1) as f64 * FRAC_PI_2);
            let (x, w) = gauss_legendre_on(RESIDUE_NODES, a, b);
            for (t, wt) in x.iter().zip(&w) {
                acc += residue_integrand(0, kind, *t)? * Complex64::from_polar(*wt, n2 as f64 * t);
            }
        }
        return Ok(acc.re / TAU);
    }
    let (x, w) = gauss_legendre_on(RESIDUE_NODES, 0.0, FRAC_PI_2);
    let j: Complex64 = x.iter().zip(&w).map(|(t, wt)| reduced_i_p(n1, *t) * Complex64::from_polar(*wt, n2 as f64 * t)).sum();
    let sign = if (n1 + n2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let pref = match kind {
        Kind::P => 1.0 - sign,
        Kind::Q => -(1.0 + sign),
    };
    Ok(pref * j.re / PI)
}

/// `K(n1, n2) = (n1 + 3 + i n2) / (n1 + 1 + i n2)^3`.
pub fn kernel_k(n1: i64, n2: i64) -> Result<Complex64> {
    let den = Complex64::new(n1 as f64 + 1.0, n2 as f64);
    if den.norm() == 0.0 {
        return Err(ModelError::Precondition("K has a pole at (n1, n2) = (-1, 0)".into()));
    }
    Ok(Complex64::new(n1 as f64 + 3.0, n2 as f64) / den.powi(3))
}

/// Asymptotic form up to one scale: `(1 - (-1)^(n1+n2)) Re(i^(n1+n2+1) K)` for `p` and
/// `-(1 + (-1)^(n1+n2)) Re(i^(n1+n2+1) K)` for `q`. The scale tends to `1/pi`.
pub fn asymptotic_k(n1: i64, n2: i64, kind: Kind) -> Result<f64> {
    let k = kernel_k(n1, n2)?;
    let phase = Complex64::i().powi((n1 + n2 + 1).rem_euclid(4) as i32);
    let v = (phase * k).re;
    let sign = if (n1 + n2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(match kind {
        Kind::P => (1.0 - sign) * v,
        Kind::Q => -(1.0 + sign) * v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values() {
        assert!((kernel_k(1, 0).unwrap() - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((kernel_k(0, 1).unwrap() - Complex64::new(-0.5, -1.0)).norm() < 1e-15);
        assert!(kernel_k(-1, 0).is_err());
        // p at (1, 0): prefactor 2, phase i^2.
        assert!((asymptotic_k(1, 0, Kind::P).unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(asymptotic_k(1, 0, Kind::Q).unwrap(), 0.0);
        assert_eq!(asymptotic_k(2, 2, Kind::P).unwrap(), 0.0);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("p".parse::<Kind>().unwrap(), Kind::P);
        assert_eq!(Kind::Q.to_string(), "q");
        assert!("x".parse::<Kind>().is_err());
    }

    #[test]
    fn only_lower_pole_inside() {
        for j in 1..200 {
            let t = FRAC_PI_2 * j as f64 / 200.0;
            let (zm, zp) = poles(t);
            assert!(zm.norm() < 1.0 && zp.norm() > 1.0);
        }
    }

    #[test]
    fn residue_integrand_matches_closed_form() {
        for n1 in 1..6 {
            for j in 1..50 {
                let t = 0.1 + 6.0 * j as f64 / 50.0;
                let (c, s) = (t.cos(), t.sin());
                let want = Complex64::i().powi(n1 as i32 + 1) * ((1.0 - c.abs()).powi(n1 as i32) * c.abs() / s.powi(n1 as i32 + 1));
                let got = residue_integrand(n1, Kind::P, t).unwrap();
                assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{n1} {t}");
            }
        }
    }

    #[test]
    fn residue_integrand_shift_symmetry() {
        for n1 in 0..6 {
            for j in 1..40 {
                let t = 0.05 + 3.0 * j as f64 / 40.0;
                let a = residue_integrand(n1, Kind::P, t + PI).unwrap();
                let b = residue_integrand(n1, Kind::P, t).unwrap();
                let sign = if n1 % 2 == 0 { -1.0 } else { 1.0 };
                assert!((a - sign * b).norm() < 1e-12 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn grid_preconditions() {
        assert!(matches!(CorrelatorGrid::new(100), Err(ModelError::Precondition(_))));
        assert!(matches!(CorrelatorGrid::new(99), Err(ModelError::Precondition(_))));
        assert!(matches!(correlator_trapezoid(1, 0, Kind::P, 4), Err(ModelError::ZeroNorm(z)) if !z.is_empty()));
    }

    #[test]
    fn bump_is_negligible_at_patch_edge() {
        let c = SINGULAR_POINTS[0];
        assert!(bump((c.0 + PATCH_RADIUS, c.1), c) < 1e-200);
        assert_eq!(bump(c, c), 1.0);
    }
}
