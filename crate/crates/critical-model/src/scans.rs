use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use fock_oracle::LatticeSpec;
use gaussian_core::{block_entropy, gap, parent_hamiltonian_from_model, real_space_gamma, PARENT_RADIUS_CAP};

use crate::correlator::{asymptotic_k, correlator_residue, CorrelatorGrid, CorrelatorResult, Kind};
use crate::example::example_model;
use crate::{ModelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `(n, 0)`
    Axis,
    /// `(n, n)`
    Diagonal,
    /// `(n, 2n)`
    NTwoN,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Axis, Direction::Diagonal, Direction::NTwoN];

    pub fn point(self, n: i64) -> (i64, i64) {
        match self {
            Direction::Axis => (n, 0),
            Direction::Diagonal => (n, n),
            Direction::NTwoN => (n, 2 * n),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Axis => "axis",
            Direction::Diagonal => "diagonal",
            Direction::NTwoN => "n-2n",
        })
    }
}

impl FromStr for Direction {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axis" => Ok(Direction::Axis),
            "diagonal" => Ok(Direction::Diagonal),
            "n-2n" => Ok(Direction::NTwoN),
            _ => Err(ModelError::Precondition(format!("unknown direction {s:?}; expected axis, diagonal or n-2n"))),
        }
    }
}

/// Correlators at `n = 1..=max_n` along `dir`, both kinds, ordered by kind then `n`.
pub fn direction_scan(dir: Direction, max_n: i64, grid: usize) -> Result<Vec<CorrelatorResult>> {
    let cg = CorrelatorGrid::new(grid)?;
    correlator_table(&cg, &(1..=max_n).map(|n| dir.point(n)).collect::<Vec<_>>())
}

/// [`CorrelatorResult`] rows for each point and kind, ordered by kind then point.
pub fn correlator_table(cg: &CorrelatorGrid, points: &[(i64, i64)]) -> Result<Vec<CorrelatorResult>> {
    let jobs: Vec<(Kind, (i64, i64))> = Kind::ALL.iter().flat_map(|&k| points.iter().map(move |&p| (k, p))).collect();
    jobs.into_par_iter()
        .map(|(kind, (n1, n2))| {
            Ok(CorrelatorResult {
                n1,
                n2,
                kind,
                numeric: cg.value(n1, n2, kind)?,
                residue_closed_form: correlator_residue(n1, n2, kind)?,
                asymptotic: asymptotic_k(n1, n2, kind)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub n: usize,
    pub gap: f64,
}

/// Gap of the parent Hamiltonian on `n x n` tori.
pub fn gap_scan(sizes: &[usize]) -> Result<Vec<GapPoint>> {
    let model = example_model();
    let h = parent_hamiltonian_from_model(&model, PARENT_RADIUS_CAP)?;
    sizes
        .par_iter()
        .map(|&n| {
            let lattice = LatticeSpec::new(n, n).map_err(|e| ModelError::Precondition(e.to_string()))?;
            let zeros = model.zero_momenta(&lattice);
            if !zeros.is_empty() {
                return Err(ModelError::ZeroNorm(zeros));
            }
            Ok(GapPoint { n, gap: gap(&h, &lattice) })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint {
    pub l: usize,
    pub bits: f64,
}

/// Entropy of `L x L` blocks of the example state on a `torus x torus` lattice.
pub fn entropy_scan(torus: usize, blocks: &[usize]) -> Result<Vec<EntropyPoint>> {
    let lattice = LatticeSpec::new(torus, torus).map_err(|e| ModelError::Precondition(e.to_string()))?;
    if let Some(&l) = blocks.iter().find(|&&l| l == 0 || l > torus) {
        return Err(ModelError::Precondition(format!("block size {l} does not fit a {torus}x{torus} torus")));
    }
    let gamma = real_space_gamma(&example_model(), &lattice)?;
    blocks
        .par_iter()
        .map(|&l| {
            let sites: Vec<(usize, usize)> = (1..=l).flat_map(|h| (1..=l).map(move |v| (h, v))).collect();
            let cm = gamma.restrict_sites(&sites)?;
            let modes: Vec<usize> = (0..sites.len()).collect();
            Ok(EntropyPoint { l, bits: block_entropy(&cm, &modes)? })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation coefficient.
    pub r: f64,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares `y = intercept + slope x`. Needs two distinct `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(ModelError::Precondition("linear fit needs two or more paired samples".into()));
    }
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        sxy += (a - mx) * (b - my);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 {
        return Err(ModelError::Precondition("linear fit needs two distinct x".into()));
    }
    let slope = sxy / sxx;
    let r = if syy == 0.0 { 1.0 } else { sxy / (sxx * syy).sqrt() };
    Ok(LinearFit { slope, intercept: my - slope * mx, r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_parsing() {
        for d in Direction::ALL {
            assert_eq!(d.to_string().parse::<Direction>().unwrap(), d);
        }
        assert!("up".parse::<Direction>().is_err());
        assert_eq!(Direction::NTwoN.point(3), (3, 6));
    }

    #[test]
    fn fit_of_exact_line() {
        let f = linear_fit(&[1.0, 2.0, 3.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-15 && (f.intercept + 1.0).abs() < 1e-15 && (f.r - 1.0).abs() < 1e-15);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_err());
        assert!(linear_fit(&[1.0], &[0.0]).is_err());
    }

    #[test]
    fn gap_rejects_zero_momenta() {
        assert!(matches!(gap_scan(&[4]), Err(ModelError::ZeroNorm(_))));
        let g = gap_scan(&[3, 5]).unwrap();
        assert!(g[0].gap > g[1].gap && g[1].gap > 0.0);
    }

    #[test]
    fn entropy_block_bounds() {
        assert!(entropy_scan(5, &[6]).is_err());
        assert!(entropy_scan(5, &[0]).is_err());
        let s = entropy_scan(7, &[1, 2]).unwrap();
        assert!(s[0].bits > 0.0 && s[1].bits > s[0].bits);
    }
}
