//! JSON tensor sets and seeded random tensors.
//!
//! A tensor set looks like
//! `{"lattice": {"nh": 2, "nv": 1}, "parity": [[0, 1]], "tensors": [{"site": [1, 1], "entries": [{"k": 0, "l": 0, "r": 0, "u": 0, "d": 0, "re": 1.0, "im": 0.0}]}, ...]}`.
//! Entries not listed are zero; tensors may come in any order but every site needs one.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use fock_oracle::{FPEPSTensor, FockError, LatticeSpec, Result};

use crate::peps::PEPSTensor;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LatticeJson {
    pub nh: usize,
    pub nv: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub k: u8,
    pub l: u8,
    pub r: u8,
    pub u: u8,
    pub d: u8,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SiteTensorJson {
    pub site: [usize; 2],
    pub entries: Vec<EntryJson>,
}

/// `parity[v-1][h-1]` is the parity of the tensor at `(h, v)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorSetJson {
    pub lattice: LatticeJson,
    pub parity: Vec<Vec<u8>>,
    pub tensors: Vec<SiteTensorJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PepsEntryJson {
    pub k: u8,
    pub l: u8,
    pub lp: u8,
    pub r: u8,
    pub rp: u8,
    pub u: u8,
    pub d: u8,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PepsSiteJson {
    pub site: [usize; 2],
    pub has_lprime: bool,
    pub has_rprime: bool,
    pub entries: Vec<PepsEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PepsJson {
    pub lattice: LatticeJson,
    pub tensors: Vec<PepsSiteJson>,
}

/// Fermionic tensors of a whole lattice, stored in `M` order.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSet {
    pub lattice: LatticeSpec,
    pub tensors: Vec<FPEPSTensor>,
}

impl TensorSet {
    pub fn new(lattice: LatticeSpec, tensors: Vec<FPEPSTensor>) -> Result<Self> {
        if tensors.len() != lattice.n_sites() {
            return Err(FockError::Contract(format!(
                "lattice {lattice} needs {} tensors, got {}",
                lattice.n_sites(),
                tensors.len()
            )));
        }
        for t in &tensors {
            t.validate()?;
        }
        Ok(Self { lattice, tensors })
    }

    pub fn parities(&self) -> Vec<u8> {
        self.tensors.iter().map(|t| t.parity()).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TensorSetJson = serde_json::from_str(text).map_err(|e| FockError::Contract(format!("bad tensor set: {e}")))?;
        let lattice = LatticeSpec::new(raw.lattice.nh, raw.lattice.nv)?;
        if raw.parity.len() != lattice.nv || raw.parity.iter().any(|row| row.len() != lattice.nh) {
            return Err(FockError::Contract(format!("parity grid must be {} rows of {}", lattice.nv, lattice.nh)));
        }
        if raw.parity.iter().flatten().any(|&c| c > 1) {
            return Err(FockError::Contract("parities must be 0 or 1".into()));
        }
        let mut slots: Vec<Option<FPEPSTensor>> = vec![None; lattice.n_sites()];
        for st in raw.tensors {
            let site = (st.site[0], st.site[1]);
            if !lattice.contains(site) {
                return Err(FockError::Contract(format!("site {site:?} outside lattice {lattice}")));
            }
            let mut t = FPEPSTensor::zeros(raw.parity[site.1 - 1][site.0 - 1]);
            for e in st.entries {
                if [e.k, e.l, e.r, e.u, e.d].iter().any(|&b| b > 1) {
                    return Err(FockError::Contract("tensor indices must be 0 or 1".into()));
                }
                t.set(e.k, e.l, e.r, e.u, e.d, Complex64::new(e.re, e.im))?;
            }
            let m = lattice.index(site);
            if slots[m].replace(t).is_some() {
                return Err(FockError::Contract(format!("site {site:?} given twice")));
            }
        }
        let tensors = slots
            .into_iter()
            .enumerate()
            .map(|(m, t)| t.ok_or_else(|| FockError::Contract(format!("no tensor for site {:?}", lattice.site(m)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lattice, tensors)
    }

    pub fn to_json(&self) -> String {
        let tensors = self
            .tensors
            .iter()
            .enumerate()
            .map(|(m, t)| {
                let s = self.lattice.site(m);
                let entries = t
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != Complex64::new(0.0, 0.0))
                    .map(|(i, v)| {
                        let (k, l, r, u, d) = FPEPSTensor::unpack(i);
                        EntryJson { k, l, r, u, d, re: v.re, im: v.im }
                    })
                    .collect();
                SiteTensorJson { site: [s.0, s.1], entries }
            })
            .collect();
        let parity = (0..self.lattice.nv)
            .map(|v| (0..self.lattice.nh).map(|h| self.tensors[v * self.lattice.nh + h].parity()).collect())
            .collect();
        let lattice = LatticeJson { nh: self.lattice.nh, nv: self.lattice.nv };
        serde_json::to_string_pretty(&TensorSetJson { lattice, parity, tensors })
            .expect("plain data serializes")
    }

    /// Tensors with independent entries uniform in the unit square of the complex plane.
    pub fn random(lattice: LatticeSpec, parities: &[u8], seed: u64) -> Result<Self> {
        if parities.len() != lattice.n_sites() {
            return Err(FockError::Contract(format!("parity assignment needs {} entries", lattice.n_sites())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tensors = parities.iter().map(|&c| random_tensor(c, &mut rng)).collect();
        Self::new(lattice, tensors)
    }
}

pub fn random_tensor(parity: u8, rng: &mut impl Rng) -> FPEPSTensor {
    FPEPSTensor::from_fn(parity, |_, _, _, _, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn peps_to_json(lattice: &LatticeSpec, tensors: &[PEPSTensor]) -> String {
    let tensors = tensors
        .iter()
        .map(|t| {
            let entries = t
                .data()
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != Complex64::new(0.0, 0.0))
                .map(|(i, v)| {
                    let [k, l, lp, r, rp, u, d] = PEPSTensor::unpack(i);
                    PepsEntryJson { k, l, lp, r, rp, u, d, re: v.re, im: v.im }
                })
                .collect();
            PepsSiteJson {
                site: [t.site().0, t.site().1],
                has_lprime: t.has_lprime(),
                has_rprime: t.has_rprime(),
                entries,
            }
        })
        .collect();
    let lattice = LatticeJson { nh: lattice.nh, nv: lattice.nv };
    serde_json::to_string_pretty(&PepsJson { lattice, tensors }).expect("plain data serializes")
}
