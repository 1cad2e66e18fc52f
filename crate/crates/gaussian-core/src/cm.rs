use nalgebra::DMatrix;

use crate::{GaussError, Result};

const ANTISYM_TOL: f64 = 1e-12;

/// Real antisymmetric `2m x 2m` covariance matrix in qp order.
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaCM {
    matrix: DMatrix<f64>,
}

impl MajoranaCM {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || !matrix.nrows().is_multiple_of(2) {
            return Err(GaussError::Contract(format!(
                "covariance matrix must be square of even size, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let err = (&matrix + matrix.transpose()).amax();
        if err > ANTISYM_TOL {
            return Err(GaussError::Contract(format!("covariance matrix not antisymmetric ({err:e})")));
        }
        Ok(Self { matrix })
    }

    /// Vacuum of `m` modes: `Gamma_{c1 c2} = 1` for every mode.
    pub fn vacuum(m: usize) -> Self {
        let mut g = DMatrix::zeros(2 * m, 2 * m);
        for j in 0..m {
            g[(j, m + j)] = 1.0;
            g[(m + j, j)] = -1.0;
        }
        Self { matrix: g }
    }

    pub fn modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// `max |Gamma^2 + 1|`; zero for a pure state.
    pub fn purity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        (&self.matrix * &self.matrix + DMatrix::identity(n, n)).amax()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.purity_residual() <= tol
    }

    /// Covariance matrix of the listed modes (positions in `0..m`), in the listed order.
    pub fn restrict(&self, modes: &[usize]) -> Result<Self> {
        let m = self.modes();
        if let Some(&bad) = modes.iter().find(|&&j| j >= m) {
            return Err(GaussError::Contract(format!("mode {bad} out of range {m}")));
        }
        let idx: Vec<usize> = modes.iter().copied().chain(modes.iter().map(|j| j + m)).collect();
        let k = idx.len();
        let g = DMatrix::from_fn(k, k, |a, b| self.matrix[(idx[a], idx[b])]);
        Ok(Self { matrix: g })
    }
}

/// Permutation `p` with `qp[p[i]] = interleaved[i]` for `m` modes.
fn interleaved_positions(m: usize) -> Vec<usize> {
    (0..2 * m).map(|i| (i % 2) * m + i / 2).collect()
}

/// Reorders rows and/or columns from `(c1_1, c2_1, c1_2, c2_2, ...)` to qp order.
/// `rows`/`cols` select which axes are Majorana axes.
pub fn interleaved_to_qp(x: &DMatrix<f64>, rows: bool, cols: bool) -> Result<DMatrix<f64>> {
    permute_axes(x, rows, cols, false)
}

pub fn qp_to_interleaved(x: &DMatrix<f64>, rows: bool, cols: bool) -> Result<DMatrix<f64>> {
    permute_axes(x, rows, cols, true)
}

fn permute_axes(x: &DMatrix<f64>, rows: bool, cols: bool, inverse: bool) -> Result<DMatrix<f64>> {
    let axis = |n: usize| -> Result<Vec<usize>> {
        if !n.is_multiple_of(2) {
            return Err(GaussError::Contract(format!("Majorana axis of odd length {n}")));
        }
        let p = interleaved_positions(n / 2);
        if inverse {
            let mut inv = vec![0; n];
            for (i, &q) in p.iter().enumerate() {
                inv[q] = i;
            }
            Ok(inv)
        } else {
            Ok(p)
        }
    };
    let pr = if rows { axis(x.nrows())? } else { (0..x.nrows()).collect() };
    let pc = if cols { axis(x.ncols())? } else { (0..x.ncols()).collect() };
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    for i in 0..x.nrows() {
        for j in 0..x.ncols() {
            out[(pr[i], pc[j])] = x[(i, j)];
        }
    }
    Ok(out)
}
