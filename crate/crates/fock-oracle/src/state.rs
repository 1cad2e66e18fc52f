use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::{ModeLabel, ModeRegistry};
use crate::ops::OperatorPoly;
use crate::{FockError, Result, DEFAULT_MODE_CAP};

/// Dense amplitude vector over `2^n` occupation strings of a registry.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    registry: ModeRegistry,
    amps: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct FockVectorJson {
    modes: Vec<String>,
    amplitudes: Vec<[f64; 2]>,
}

/// Applies one resolved factor to a basis index. Returns the new index and whether the
/// fermionic sign is negative, or `None` for an exact zero.
#[inline]
fn act(idx: usize, n: usize, j: usize, dagger: bool) -> Option<(usize, bool)> {
    let bit = 1usize << (n - 1 - j);
    let occupied = idx & bit != 0;
    if occupied == dagger {
        return None;
    }
    let before = (idx >> (n - j)).count_ones() & 1 == 1;
    Some((idx ^ bit, before))
}

impl FockVector {
    pub fn vacuum(registry: ModeRegistry) -> Result<Self> {
        Self::vacuum_with_cap(registry, DEFAULT_MODE_CAP)
    }

    pub fn vacuum_with_cap(registry: ModeRegistry, cap: usize) -> Result<Self> {
        let mut v = Self::zeros_with_cap(registry, cap)?;
        v.amps[0] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn zeros_with_cap(registry: ModeRegistry, cap: usize) -> Result<Self> {
        let n = registry.len();
        if n == 0 {
            return Err(FockError::Contract("registry is empty".into()));
        }
        if n > cap {
            return Err(FockError::ModeCap { requested: n, cap });
        }
        Ok(Self {
            registry,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    pub fn from_amplitudes(registry: ModeRegistry, amps: Vec<Complex64>) -> Result<Self> {
        if registry.len() > DEFAULT_MODE_CAP {
            return Err(FockError::ModeCap {
                requested: registry.len(),
                cap: DEFAULT_MODE_CAP,
            });
        }
        if amps.len() != 1usize << registry.len() {
            return Err(FockError::Contract(format!(
                "expected {} amplitudes, got {}",
                1usize << registry.len(),
                amps.len()
            )));
        }
        Ok(Self { registry, amps })
    }

    pub fn registry(&self) -> &ModeRegistry {
        &self.registry
    }

    pub fn n_modes(&self) -> usize {
        self.registry.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// Bit mask of mode `label` in the basis index.
    pub fn mode_bit(&self, label: &ModeLabel) -> Result<usize> {
        let j = self.registry.position(label)?;
        Ok(1 << (self.n_modes() - 1 - j))
    }

    pub fn apply_poly(&self, op: &OperatorPoly) -> Result<Self> {
        let n = self.n_modes();
        let resolved: Vec<(Complex64, Vec<(usize, bool)>)> = op
            .terms
            .iter()
            .map(|(c, fs)| {
                let f = fs
                    .iter()
                    .rev()
                    .map(|f| Ok((self.registry.position(&f.label)?, f.dagger)))
                    .collect::<Result<Vec<_>>>()?;
                Ok((*c, f))
            })
            .collect::<Result<_>>()?;
        let support: Vec<usize> = (0..self.amps.len())
            .filter(|&i| self.amps[i] != Complex64::new(0.0, 0.0))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (c, factors) in &resolved {
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            'basis: for &i in &support {
                let mut idx = i;
                let mut neg = false;
                for &(j, dagger) in factors {
                    match act(idx, n, j, dagger) {
                        Some((next, s)) => {
                            idx = next;
                            neg ^= s;
                        }
                        None => continue 'basis,
                    }
                }
                let v = c * self.amps[i];
                if neg {
                    out[idx] -= v;
                } else {
                    out[idx] += v;
                }
            }
        }
        Ok(Self {
            registry: self.registry.clone(),
            amps: out,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(FockError::ZeroNorm);
        }
        Ok(Self {
            registry: self.registry.clone(),
            amps: self.amps.iter().map(|a| a / n).collect(),
        })
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.registry != other.registry {
            return Err(FockError::Contract("inner product of states on different registries".into()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|<a|b>| / (|a| |b|)`; equals 1 iff the states agree up to phase and normalization.
    pub fn overlap_modulus(&self, other: &Self) -> Result<f64> {
        let na = self.norm();
        let nb = other.norm();
        if na == 0.0 || nb == 0.0 {
            return Err(FockError::ZeroNorm);
        }
        Ok(self.inner(other)?.norm() / (na * nb))
    }

    /// Fermion-number parity of the support, or `None` if both parities appear above `tol`.
    pub fn parity(&self, tol: f64) -> Option<u32> {
        let mut seen = [false; 2];
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() > tol {
                seen[(i.count_ones() & 1) as usize] = true;
            }
        }
        match seen {
            [true, false] => Some(0),
            [false, true] => Some(1),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        let j = FockVectorJson {
            modes: self.registry.labels().iter().map(|l| l.to_string()).collect(),
            amplitudes: self.amps.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: FockVectorJson =
            serde_json::from_str(text).map_err(|e| FockError::Contract(format!("bad JSON: {e}")))?;
        let labels = j.modes.iter().map(|s| s.parse()).collect::<Result<Vec<ModeLabel>>>()?;
        let amps = j.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Self::from_amplitudes(ModeRegistry::new(labels)?, amps)
    }
}
