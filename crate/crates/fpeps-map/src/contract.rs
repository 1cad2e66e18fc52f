//! Exact contraction of binary-index tensor networks by pairwise permute-and-multiply.

use num_complex::Complex64;

use fock_oracle::{FockError, FockVector, LatticeSpec, ModeRegistry, Result};

use crate::peps::PEPSTensor;

/// Leg label; bonds are named by the site they leave in the `+x`/`+y` direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg {
    Phys(usize),
    H(usize),
    V(usize),
    Extra(usize),
}

/// Dense tensor over binary legs; leg `i` of `rank` legs is bit `rank - 1 - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    legs: Vec<Leg>,
    data: Vec<Complex64>,
}

impl DenseTensor {
    pub fn new(legs: Vec<Leg>, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != 1usize << legs.len() {
            return Err(FockError::Contract(format!("{} legs need {} entries", legs.len(), 1usize << legs.len())));
        }
        for (i, a) in legs.iter().enumerate() {
            if legs[i + 1..].contains(a) {
                return Err(FockError::Contract(format!("duplicate leg {a:?}")));
            }
        }
        Ok(Self { legs, data })
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Reorders legs to `order`, which must be a permutation of the current legs.
    pub fn permute(&self, order: &[Leg]) -> Result<Self> {
        let n = self.legs.len();
        if order.len() != n {
            return Err(FockError::Contract("permutation has wrong length".into()));
        }
        let src: Vec<usize> = order
            .iter()
            .map(|l| {
                self.legs
                    .iter()
                    .position(|x| x == l)
                    .ok_or_else(|| FockError::Contract(format!("leg {l:?} not present")))
            })
            .collect::<Result<_>>()?;
        if src.iter().zip(0..).all(|(a, b)| *a == b) {
            return Ok(self.clone());
        }
        let mut seen = src.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != n {
            return Err(FockError::Contract("permutation repeats a leg".into()));
        }
        let mut data = vec![Complex64::new(0.0, 0.0); self.data.len()];
        for (j, slot) in data.iter_mut().enumerate() {
            let mut i = 0usize;
            for (p, &s) in src.iter().enumerate() {
                let bit = (j >> (n - 1 - p)) & 1;
                i |= bit << (n - 1 - s);
            }
            *slot = self.data[i];
        }
        Self::new(order.to_vec(), data)
    }

    /// Sums over all legs shared with `other`; the result keeps the free legs of `self`
    /// followed by those of `other`.
    pub fn contract(&self, other: &Self) -> Result<Self> {
        let shared: Vec<Leg> = self.legs.iter().filter(|l| other.legs.contains(l)).copied().collect();
        let free_a: Vec<Leg> = self.legs.iter().filter(|l| !shared.contains(l)).copied().collect();
        let free_b: Vec<Leg> = other.legs.iter().filter(|l| !shared.contains(l)).copied().collect();
        let a = self.permute(&[free_a.clone(), shared.clone()].concat())?;
        let b = other.permute(&[shared.clone(), free_b.clone()].concat())?;
        let (m, k, n) = (1usize << free_a.len(), 1usize << shared.len(), 1usize << free_b.len());
        let mut out = vec![Complex64::new(0.0, 0.0); m * n];
        for i in 0..m {
            let row = &a.data[i * k..(i + 1) * k];
            let dst = &mut out[i * n..(i + 1) * n];
            for (p, &x) in row.iter().enumerate() {
                if x == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &y) in dst.iter_mut().zip(&b.data[p * n..(p + 1) * n]) {
                    *o += x * y;
                }
            }
        }
        Self::new([free_a, free_b].concat(), out)
    }
}

/// Raw legs of a site tensor in storage order `k, l, l', r, r', u, d`.
fn site_legs(lattice: &LatticeSpec, t: &PEPSTensor) -> [Option<Leg>; 7] {
    let s = t.site();
    let m = lattice.index(s);
    let left = lattice.index(lattice.left(s));
    let down = lattice.index(lattice.down(s));
    [
        Some(Leg::Phys(m)),
        Some(Leg::H(left)),
        t.has_lprime().then_some(Leg::Extra(left)),
        Some(Leg::H(m)),
        t.has_rprime().then_some(Leg::Extra(m)),
        Some(Leg::V(down)),
        Some(Leg::V(m)),
    ]
}

/// Legs that appear once among `raw`; a leg appearing twice is a bond closing on itself.
fn open_legs(raw: &[Option<Leg>]) -> Vec<Leg> {
    let all: Vec<Leg> = raw.iter().flatten().copied().collect();
    all.iter().filter(|l| all.iter().filter(|x| x == l).count() == 1).copied().collect()
}

/// Dense form of a site tensor. A bond that starts and ends on the same site is traced.
pub fn site_dense(lattice: &LatticeSpec, t: &PEPSTensor) -> Result<DenseTensor> {
    let raw = site_legs(lattice, t);
    let open = open_legs(&raw);
    let mut legs = open.clone();
    for l in raw.iter().flatten() {
        if !legs.contains(l) {
            legs.push(*l);
        }
    }
    let r = legs.len();
    let r_open = open.len();
    let mut data = vec![Complex64::new(0.0, 0.0); 1 << r_open];
    for (i, &v) in t.data().iter().enumerate() {
        if v == Complex64::new(0.0, 0.0) {
            continue;
        }
        let bits = PEPSTensor::unpack(i);
        let mut assigned: Vec<Option<u8>> = vec![None; r];
        let mut ok = true;
        for (b, l) in bits.iter().zip(raw.iter()) {
            match l {
                None => ok &= *b == 0,
                Some(l) => {
                    let p = legs.iter().position(|x| x == l).expect("leg collected above");
                    match assigned[p] {
                        None => assigned[p] = Some(*b),
                        Some(prev) => ok &= prev == *b,
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let j = assigned[..r_open]
            .iter()
            .enumerate()
            .fold(0usize, |acc, (p, b)| acc | ((b.unwrap_or(0) as usize) << (r_open - 1 - p)));
        data[j] += v;
    }
    DenseTensor::new(open, data)
}

/// Largest number of open legs while absorbing sites in `order`.
fn max_open_rank(lattice: &LatticeSpec, tensors: &[PEPSTensor], order: &[usize]) -> usize {
    let mut open: Vec<Leg> = Vec::new();
    let mut best = 0;
    for &m in order {
        for l in open_legs(&site_legs(lattice, &tensors[m])) {
            if let Some(p) = open.iter().position(|x| *x == l) {
                open.swap_remove(p);
            } else {
                open.push(l);
            }
        }
        best = best.max(open.len());
    }
    best
}

/// Row-major or column-major absorption order, whichever keeps fewer legs open.
pub fn contraction_order(lattice: &LatticeSpec, tensors: &[PEPSTensor]) -> Vec<usize> {
    let rows: Vec<usize> = (0..lattice.n_sites()).collect();
    let mut cols = Vec::with_capacity(rows.len());
    for h in 1..=lattice.nh {
        for v in 1..=lattice.nv {
            cols.push(lattice.index((h, v)));
        }
    }
    if max_open_rank(lattice, tensors, &cols) < max_open_rank(lattice, tensors, &rows) {
        cols
    } else {
        rows
    }
}

/// Largest lattice handled by [`contract_peps`].
pub const CONTRACT_SITE_CAP: usize = 12;

/// Physical state of the spin PEPS, over the physical registry in `M` order.
pub fn contract_peps(lattice: &LatticeSpec, tensors: &[PEPSTensor]) -> Result<FockVector> {
    let n = lattice.n_sites();
    if n > CONTRACT_SITE_CAP {
        return Err(FockError::ModeCap { requested: n, cap: CONTRACT_SITE_CAP });
    }
    if tensors.len() != n {
        return Err(FockError::Contract(format!("lattice {lattice} needs {n} tensors, got {}", tensors.len())));
    }
    for (m, t) in tensors.iter().enumerate() {
        if t.site() != lattice.site(m) {
            return Err(FockError::Contract(format!("tensor {m} belongs to site {:?}", t.site())));
        }
    }
    let mut acc = DenseTensor::new(Vec::new(), vec![Complex64::new(1.0, 0.0)])?;
    for m in contraction_order(lattice, tensors) {
        acc = acc.contract(&site_dense(lattice, &tensors[m])?)?;
    }
    let phys: Vec<Leg> = (0..n).map(Leg::Phys).collect();
    let acc = acc.permute(&phys)?;
    FockVector::from_amplitudes(ModeRegistry::physical(lattice), acc.data)
}
