use num_complex::Complex64;

use fock_oracle::{FPEPSTensor, FockError, LatticeSpec, Result, Site};

use crate::sign::SignFunction;

/// Spin-PEPS tensor `B^[k]_{l l' r r' u d}`.
///
/// The extra bond `l'`/`r'` only exists between columns `h` and `h+1`; missing legs are
/// stored at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PEPSTensor {
    site: Site,
    has_lprime: bool,
    has_rprime: bool,
    data: [Complex64; 128],
}

impl PEPSTensor {
    pub fn index(k: u8, l: u8, lp: u8, r: u8, rp: u8, u: u8, d: u8) -> usize {
        ((k as usize) << 6)
            | ((l as usize) << 5)
            | ((lp as usize) << 4)
            | ((r as usize) << 3)
            | ((rp as usize) << 2)
            | ((u as usize) << 1)
            | d as usize
    }

    pub fn unpack(i: usize) -> [u8; 7] {
        std::array::from_fn(|b| (i >> (6 - b) & 1) as u8)
    }

    pub fn zeros(lattice: &LatticeSpec, site: Site) -> Self {
        Self {
            site,
            has_lprime: site.0 > 1,
            has_rprime: site.0 < lattice.nh,
            data: [Complex64::new(0.0, 0.0); 128],
        }
    }

    pub fn site(&self) -> Site {
        self.site
    }

    pub fn has_lprime(&self) -> bool {
        self.has_lprime
    }

    pub fn has_rprime(&self) -> bool {
        self.has_rprime
    }

    pub fn data(&self) -> &[Complex64; 128] {
        &self.data
    }

    #[allow(clippy::too_many_arguments)]
    pub fn get(&self, k: u8, l: u8, lp: u8, r: u8, rp: u8, u: u8, d: u8) -> Complex64 {
        self.data[Self::index(k, l, lp, r, rp, u, d)]
    }

    #[allow(clippy::too_many_arguments)]
    pub fn set(&mut self, k: u8, l: u8, lp: u8, r: u8, rp: u8, u: u8, d: u8, value: Complex64) -> Result<()> {
        if (lp == 1 && !self.has_lprime) || (rp == 1 && !self.has_rprime) {
            return Err(FockError::Contract(format!("site {:?} has no such extra leg", self.site)));
        }
        self.data[Self::index(k, l, lp, r, rp, u, d)] = value;
        Ok(())
    }
}

/// `B = (-1)^f A (-1)^((d+l) r')` in the first column and
/// `B = (-1)^f A (-1)^(d r') delta(l', r'+u+d)` elsewhere.
pub fn map_to_peps(lattice: &LatticeSpec, site: Site, tensor: &FPEPSTensor, sign: &SignFunction) -> Result<PEPSTensor> {
    if !lattice.contains(site) {
        return Err(FockError::Contract(format!("site {site:?} outside lattice {lattice}")));
    }
    tensor.validate()?;
    let mut out = PEPSTensor::zeros(lattice, site);
    let rps: &[u8] = if out.has_rprime { &[0, 1] } else { &[0] };
    for (i, &a) in tensor.entries().iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (k, l, r, u, d) = FPEPSTensor::unpack(i);
        let base = if sign.get(k, l, r, u, d) == 1 { -a } else { a };
        for &rp in rps {
            let (lp, phase) = if site.0 == 1 {
                (0, ((d + l) * rp) & 1)
            } else {
                ((rp + u + d) & 1, (d * rp) & 1)
            };
            out.data[PEPSTensor::index(k, l, lp, r, rp, u, d)] = if phase == 1 { -base } else { base };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn single_column_is_plain_sign_flip() {
        let l = LatticeSpec::new(1, 2).unwrap();
        let t = FPEPSTensor::from_fn(0, |k, l, r, u, d| c(1.0 + (k + 2 * l + 3 * r + 4 * u + 5 * d) as f64));
        let sign = SignFunction::zero();
        let b = map_to_peps(&l, (1, 1), &t, &sign).unwrap();
        for i in 0..32 {
            let (k, lv, r, u, d) = FPEPSTensor::unpack(i);
            assert_eq!(b.get(k, lv, 0, r, 0, u, d), t.entries()[i]);
        }
        assert!(!b.has_lprime() && !b.has_rprime());
    }

    #[test]
    fn interior_column_fixes_lprime() {
        let l = LatticeSpec::new(3, 1).unwrap();
        let t = FPEPSTensor::from_fn(1, |_, _, _, _, _| c(1.0));
        let b = map_to_peps(&l, (2, 1), &t, &SignFunction::zero()).unwrap();
        assert!(b.has_lprime() && b.has_rprime());
        // k=1, u=1, d=1, r'=1: l' = 1, phase (-1)^(d r') = -1.
        assert_eq!(b.get(1, 0, 1, 0, 1, 1, 1), c(-1.0));
        assert_eq!(b.get(1, 0, 0, 0, 1, 1, 1), c(0.0));
        // first column: (-1)^((d+l) r') with l=1, d=0, r'=1.
        let b1 = map_to_peps(&l, (1, 1), &t, &SignFunction::zero()).unwrap();
        assert_eq!(b1.get(0, 1, 0, 0, 1, 0, 0), c(-1.0));
        assert_eq!(b1.get(0, 1, 0, 0, 0, 0, 0), c(1.0));
    }

    #[test]
    fn literal_first_column_examples() {
        let l = LatticeSpec::new(2, 1).unwrap();
        let mut t = FPEPSTensor::zeros(0);
        t.set(0, 0, 0, 0, 0, c(1.0)).unwrap();
        let b = map_to_peps(&l, (1, 1), &t, &SignFunction::zero()).unwrap();
        assert_eq!(b.get(0, 0, 0, 0, 0, 0, 0), c(1.0));
        assert_eq!(b.get(0, 0, 0, 0, 1, 0, 0), c(1.0));
        assert_eq!(b.data().iter().filter(|x| x.norm() > 0.0).count(), 2);

        let mut t = FPEPSTensor::zeros(0);
        t.set(0, 0, 1, 0, 1, c(1.0)).unwrap();
        let b = map_to_peps(&l, (1, 1), &t, &SignFunction::zero()).unwrap();
        assert_eq!(b.get(0, 0, 0, 1, 1, 0, 1), c(-1.0));
        assert_eq!(b.get(0, 0, 0, 1, 0, 0, 1), c(1.0));
    }

    #[test]
    fn delta_constraint_halves_extra_slots() {
        let l = LatticeSpec::new(3, 1).unwrap();
        let t = FPEPSTensor::from_fn(0, |_, _, _, _, _| c(1.0));
        let b = map_to_peps(&l, (2, 1), &t, &SignFunction::zero()).unwrap();
        for i in 0..32 {
            let (k, lv, r, u, d) = FPEPSTensor::unpack(i);
            if t.entries()[i] == c(0.0) {
                continue;
            }
            let nz = (0..4u8).filter(|s| b.get(k, lv, s >> 1, r, s & 1, u, d).norm() > 0.0).count();
            assert_eq!(nz, 2);
        }
        let last = map_to_peps(&l, (3, 1), &t, &SignFunction::zero()).unwrap();
        assert!(last.data().iter().enumerate().all(|(i, x)| PEPSTensor::unpack(i)[4] == 0 || x.norm() == 0.0));
    }

    #[test]
    fn invalid_parity_is_rejected() {
        let l = LatticeSpec::new(1, 1).unwrap();
        let mut raw = [c(0.0); 32];
        raw[1] = c(1.0);
        let t = FPEPSTensor::from_entries(1, raw).unwrap();
        let mut wrong = FPEPSTensor::zeros(0);
        assert!(wrong.set(0, 0, 0, 0, 1, c(1.0)).is_err());
        assert!(map_to_peps(&l, (1, 1), &t, &SignFunction::zero()).is_ok());
        assert!(map_to_peps(&l, (2, 1), &t, &SignFunction::zero()).is_err());
    }

    #[test]
    fn missing_leg_cannot_be_set() {
        let l = LatticeSpec::new(2, 1).unwrap();
        let mut b = PEPSTensor::zeros(&l, (2, 1));
        assert!(b.set(0, 0, 0, 0, 1, 0, 0, c(1.0)).is_err());
        assert!(b.set(0, 0, 1, 0, 0, 0, 0, c(1.0)).is_ok());
    }
}
