use nalgebra::DMatrix;
use num_complex::Complex64;

use fock_oracle::{FPEPSTensor, FockVector, ModeLabel, ModeRegistry, OperatorPoly, Species};
use gaussian_core::{interleaved_to_qp, FourierModel, GaussianChannel};

use crate::{ModelError, Result};

/// `2 B`, site-interleaved over the virtual Majoranas `(c1, c2)` of `alpha, beta, gamma, delta`.
pub const B_INTERLEAVED_X2: [[f64; 8]; 2] =
    [[1., -1., -1., 1., 0., 0., 0., 0.], [0., 0., 0., 0., 1., -1., -1., 1.]];

/// `4 D`, same ordering as [`B_INTERLEAVED_X2`].
pub const D_INTERLEAVED_X4: [[f64; 8]; 8] = [
    [0., 0., 2., 2., 1., -1., 1., -1.],
    [0., 0., 2., 2., -1., 1., -1., 1.],
    [-2., -2., 0., 0., 1., -1., 1., -1.],
    [-2., -2., 0., 0., -1., 1., -1., 1.],
    [-1., 1., -1., 1., 0., 0., 2., 2.],
    [1., -1., 1., -1., 0., 0., 2., 2.],
    [-1., 1., -1., 1., -2., -2., 0., 0.],
    [1., -1., 1., -1., -2., -2., 0., 0.],
];

/// The example channel in qp order, `A = 0`.
pub fn example_channel() -> GaussianChannel {
    let b = DMatrix::from_fn(2, 8, |i, j| B_INTERLEAVED_X2[i][j] / 2.0);
    let d = DMatrix::from_fn(8, 8, |i, j| D_INTERLEAVED_X4[i][j] / 4.0);
    let b = interleaved_to_qp(&b, false, true).expect("even axis");
    let d = interleaved_to_qp(&d, true, true).expect("even axes");
    GaussianChannel::new(DMatrix::zeros(2, 2), b, d).expect("example channel is valid")
}

pub fn example_model() -> FourierModel {
    FourierModel::new(&example_channel()).expect("one physical and four virtual modes")
}

/// `(p/d, q/d)` from the closed forms.
pub fn closed_form_ratios(phi: (f64, f64)) -> Result<(f64, f64)> {
    let (s1, s2) = (phi.0.sin(), phi.1.sin());
    let den = -1.0 + s1 * s2;
    if den.abs() < gaussian_core::ZERO_NORM_TOL {
        return Err(ModelError::ZeroNorm(vec![phi]));
    }
    Ok(((s1 - s2) / den, phi.0.cos() * phi.1.cos() / den))
}

/// Exponent of the projector, with the Greek letters annihilating the site's virtual modes.
fn exponent(site: (usize, usize)) -> OperatorPoly {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let ann = |s: Species| OperatorPoly::annihilate(ModeLabel::new(site, s));
    let (al, be, ga, de) = (ann(Species::Alpha), ann(Species::Beta), ann(Species::Gamma), ann(Species::Delta));
    let lin = |a: Complex64, b: Complex64, g: Complex64, d: Complex64| {
        al.scale(a).add(&be.scale(b)).add(&ga.scale(g)).add(&de.scale(d))
    };
    let z = c(0.0, 0.0);
    let left = lin(c(0.0, 1.0), c(1.0, 0.0), z, z);
    let right = lin(z, z, c(-1.0, 0.0), c(0.0, 1.0));
    let phys = OperatorPoly::create(ModeLabel::phys(site)).mul(&lin(c(0.0, -1.0), c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)));
    left.mul(&right).add(&al.mul(&be)).add(&ga.mul(&de)).add(&phys)
}

/// Coefficients of `Q = exp(X)` in the form `sum A^[k]_{lrud} a^dag^k alpha^l beta^r gamma^u delta^d`.
/// `A` is read off as `(-1)^{n(n-1)/2} <k; 0000| Q |0; lrud>` with `n = l + r + u + d`, where the
/// ket is `alpha^dag^l beta^dag^r gamma^dag^u delta^dag^d |0>`.
pub fn example_projector_tensor() -> FPEPSTensor {
    let site = (1, 1);
    let labels: Vec<ModeLabel> = std::iter::once(ModeLabel::phys(site))
        .chain(Species::AUX.iter().map(|&s| ModeLabel::new(site, s)))
        .collect();
    let reg = ModeRegistry::new(labels).expect("distinct labels");
    let x = exponent(site);
    let vac = FockVector::vacuum(reg).expect("five modes");
    let bra1 = vac.apply_poly(&OperatorPoly::create(ModeLabel::phys(site))).expect("registered");
    FPEPSTensor::from_fn(0, |k, l, r, u, d| {
        let mut ket = vac.clone();
        for (bit, s) in [(d, Species::Delta), (u, Species::Gamma), (r, Species::Beta), (l, Species::Alpha)] {
            if bit == 1 {
                ket = ket.apply_poly(&OperatorPoly::create(ModeLabel::new(site, s))).expect("registered");
            }
        }
        // exp(X)|ket> by the terminating series.
        let mut term = ket.clone();
        let mut acc = ket;
        for n in 1..=5 {
            term = term.apply_poly(&x.scale(Complex64::new(1.0 / n as f64, 0.0))).expect("registered");
            acc = add(&acc, &term);
        }
        let bra = if k == 1 { &bra1 } else { &vac };
        let amp = bra.inner(&acc).expect("same registry");
        let n = (l + r + u + d) as u32;
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -amp
        } else {
            amp
        }
    })
}

fn add(a: &FockVector, b: &FockVector) -> FockVector {
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y).collect();
    FockVector::from_amplitudes(a.registry().clone(), amps).expect("same length")
}
