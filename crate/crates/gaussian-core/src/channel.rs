use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use fock_oracle::LatticeSpec;

use crate::cm::MajoranaCM;
use crate::{GaussError, Result};

const VALIDITY_TOL: f64 = 1e-12;
/// Smallest singular value of `D - Gamma_in` treated as nonzero.
const SINGULAR_TOL: f64 = 1e-10;

/// Pure Gaussian map with `p` physical and `q` virtual modes; all blocks qp ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    d: DMatrix<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ChannelJson {
    p_modes: usize,
    q_modes: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<f64>>,
    #[serde(rename = "D")]
    d: Vec<Vec<f64>>,
}

fn to_rows(x: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..x.nrows()).map(|i| x.row(i).iter().copied().collect()).collect()
}

fn from_rows(rows: &[Vec<f64>], nr: usize, nc: usize, name: &str) -> Result<DMatrix<f64>> {
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return Err(GaussError::Contract(format!("{name} must be {nr}x{nc}")));
    }
    Ok(DMatrix::from_fn(nr, nc, |i, j| rows[i][j]))
}

impl GaussianChannel {
    /// Checks `G = [[A, B], [-B^T, D]]` for `G = -G^T` and `G G^T = 1`.
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>, d: DMatrix<f64>) -> Result<Self> {
        let (np, nq) = (a.nrows(), d.nrows());
        if a.ncols() != np || d.ncols() != nq || b.nrows() != np || b.ncols() != nq || np % 2 != 0 || nq % 2 != 0 {
            return Err(GaussError::Contract("channel block shapes are inconsistent".into()));
        }
        let ch = Self { a, b, d };
        let (anti, orth) = ch.validity_residuals();
        if anti > VALIDITY_TOL || orth > VALIDITY_TOL {
            return Err(GaussError::Contract(format!(
                "channel invalid: |G + G^T| = {anti:e}, |G G^T - 1| = {orth:e}"
            )));
        }
        Ok(ch)
    }

    pub fn p_modes(&self) -> usize {
        self.a.nrows() / 2
    }

    pub fn q_modes(&self) -> usize {
        self.d.nrows() / 2
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    pub fn d(&self) -> &DMatrix<f64> {
        &self.d
    }

    pub fn assembled(&self) -> DMatrix<f64> {
        let (np, nq) = (self.a.nrows(), self.d.nrows());
        let mut g = DMatrix::zeros(np + nq, np + nq);
        g.view_mut((0, 0), (np, np)).copy_from(&self.a);
        g.view_mut((0, np), (np, nq)).copy_from(&self.b);
        g.view_mut((np, 0), (nq, np)).copy_from(&(-self.b.transpose()));
        g.view_mut((np, np), (nq, nq)).copy_from(&self.d);
        g
    }

    /// `(max |G + G^T|, max |G G^T - 1|)`.
    pub fn validity_residuals(&self) -> (f64, f64) {
        let g = self.assembled();
        let n = g.nrows();
        let anti = (&g + g.transpose()).amax();
        let orth = (&g * g.transpose() - DMatrix::identity(n, n)).amax();
        (anti, orth)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ChannelJson =
            serde_json::from_str(text).map_err(|e| GaussError::Contract(format!("bad channel file: {e}")))?;
        let (np, nq) = (2 * raw.p_modes, 2 * raw.q_modes);
        Self::new(
            from_rows(&raw.a, np, np, "A")?,
            from_rows(&raw.b, np, nq, "B")?,
            from_rows(&raw.d, nq, nq, "D")?,
        )
    }

    pub fn to_json(&self) -> String {
        let raw = ChannelJson {
            p_modes: self.p_modes(),
            q_modes: self.q_modes(),
            a: to_rows(&self.a),
            b: to_rows(&self.b),
            d: to_rows(&self.d),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serializes")
    }
}

/// `Gamma_out = B (D - Gamma_in)^{-1} B^T + A`.
pub fn apply_channel(ch: &GaussianChannel, gamma_in: &MajoranaCM) -> Result<MajoranaCM> {
    if gamma_in.modes() != ch.q_modes() {
        return Err(GaussError::Contract(format!(
            "channel has {} virtual modes, input has {}",
            ch.q_modes(),
            gamma_in.modes()
        )));
    }
    let m = &ch.d - gamma_in.matrix();
    let smin = m.clone().singular_values().min();
    let lu = m.lu();
    let det = lu.determinant();
    if smin < SINGULAR_TOL {
        return Err(GaussError::ZeroNorm {
            det,
            context: format!("D - Gamma_in is singular (smallest singular value {smin:e})"),
        });
    }
    let x = lu
        .solve(&ch.b.transpose())
        .ok_or_else(|| GaussError::ZeroNorm { det, context: "LU solve failed".into() })?;
    let g = &ch.b * x + &ch.a;
    let asym = (&g + g.transpose()).amax();
    if asym > 1e-8 {
        return Err(GaussError::Numerical(format!("output asymmetry {asym:e}")));
    }
    MajoranaCM::new((&g - g.transpose()) * 0.5)
}

/// Covariance matrix of `(1 + x^dag y^dag)/sqrt 2` over `(x1, y1, x2, y2)`.
pub fn bond_omega() -> [[f64; 4]; 4] {
    [[0.0, 0.0, 0.0, 1.0], [0.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]]
}

/// Position of virtual mode `species` (0..4 for alpha..delta) of site `m` among `4N`.
fn vmode(m: usize, species: usize) -> usize {
    4 * m + species
}

/// Every bond `beta_s alpha_{s+x}` and `delta_s gamma_{s+y}` of the lattice, over all `4N`
/// virtual modes.
pub fn lattice_bond_cm(lattice: &LatticeSpec) -> MajoranaCM {
    let n = lattice.n_sites();
    let nm = 4 * n;
    let mut g = DMatrix::zeros(2 * nm, 2 * nm);
    let om = bond_omega();
    for s in lattice.sites() {
        let m = lattice.index(s);
        let pairs = [
            (vmode(m, 1), vmode(lattice.index(lattice.right(s)), 0)),
            (vmode(m, 3), vmode(lattice.index(lattice.up(s)), 2)),
        ];
        for (x, y) in pairs {
            let js = [x, y, x + nm, y + nm];
            for i in 0..4 {
                for j in 0..4 {
                    g[(js[i], js[j])] += om[i][j];
                }
            }
        }
    }
    MajoranaCM::new(g).expect("bond blocks are antisymmetric")
}

/// The translation-invariant lattice channel `(+)_n ch`, qp ordered over `N` physical and
/// `4N` virtual modes.
pub fn lattice_channel(ch: &GaussianChannel, lattice: &LatticeSpec) -> Result<GaussianChannel> {
    if ch.p_modes() != 1 || ch.q_modes() != 4 {
        return Err(GaussError::Contract("lattice channel needs one physical and four virtual modes per site".into()));
    }
    let n = lattice.n_sites();
    let (np, nq) = (2 * n, 8 * n);
    let mut a = DMatrix::zeros(np, np);
    let mut b = DMatrix::zeros(np, nq);
    let mut d = DMatrix::zeros(nq, nq);
    let pg = |m: usize, t: usize| t * n + m;
    let vg = |m: usize, j: usize| (j / 4) * 4 * n + vmode(m, j % 4);
    for m in 0..n {
        for t in 0..2 {
            for u in 0..2 {
                a[(pg(m, t), pg(m, u))] = ch.a[(t, u)];
            }
            for j in 0..8 {
                b[(pg(m, t), vg(m, j))] = ch.b[(t, j)];
            }
        }
        for i in 0..8 {
            for j in 0..8 {
                d[(vg(m, i), vg(m, j))] = ch.d[(i, j)];
            }
        }
    }
    GaussianChannel::new(a, b, d)
}
