use num_complex::Complex64;

use crate::{FockError, Result};

/// Site projector coefficients `A^[k]_{lrud}` with fixed parity `(k+l+r+u+d) mod 2 = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct FPEPSTensor {
    entries: [Complex64; 32],
    parity: u8,
}

impl FPEPSTensor {
    pub fn index(k: u8, l: u8, r: u8, u: u8, d: u8) -> usize {
        ((k as usize) << 4) | ((l as usize) << 3) | ((r as usize) << 2) | ((u as usize) << 1) | d as usize
    }

    /// `(k, l, r, u, d)` of a flat index.
    pub fn unpack(i: usize) -> (u8, u8, u8, u8, u8) {
        (
            (i >> 4 & 1) as u8,
            (i >> 3 & 1) as u8,
            (i >> 2 & 1) as u8,
            (i >> 1 & 1) as u8,
            (i & 1) as u8,
        )
    }

    pub fn zeros(parity: u8) -> Self {
        Self {
            entries: [Complex64::new(0.0, 0.0); 32],
            parity: parity & 1,
        }
    }

    /// Fills every parity-allowed entry from `f`; the other entries stay zero.
    pub fn from_fn(parity: u8, mut f: impl FnMut(u8, u8, u8, u8, u8) -> Complex64) -> Self {
        let mut t = Self::zeros(parity);
        for i in 0..32usize {
            if (i.count_ones() as u8 & 1) == t.parity {
                let (k, l, r, u, d) = Self::unpack(i);
                t.entries[i] = f(k, l, r, u, d);
            }
        }
        t
    }

    pub fn from_entries(parity: u8, entries: [Complex64; 32]) -> Result<Self> {
        let t = Self { entries, parity: parity & 1 };
        t.validate()?;
        Ok(t)
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn entries(&self) -> &[Complex64; 32] {
        &self.entries
    }

    pub fn get(&self, k: u8, l: u8, r: u8, u: u8, d: u8) -> Complex64 {
        self.entries[Self::index(k, l, r, u, d)]
    }

    pub fn set(&mut self, k: u8, l: u8, r: u8, u: u8, d: u8, value: Complex64) -> Result<()> {
        if (k + l + r + u + d) & 1 != self.parity && value != Complex64::new(0.0, 0.0) {
            return Err(FockError::Parity { k, l, r, u, d, parity: self.parity });
        }
        self.entries[Self::index(k, l, r, u, d)] = value;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (i, e) in self.entries.iter().enumerate() {
            if (i.count_ones() as u8 & 1) != self.parity && *e != Complex64::new(0.0, 0.0) {
                let (k, l, r, u, d) = Self::unpack(i);
                return Err(FockError::Parity { k, l, r, u, d, parity: self.parity });
            }
        }
        Ok(())
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| **e != Complex64::new(0.0, 0.0)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for i in 0..32usize {
            let (k, l, r, u, d) = FPEPSTensor::unpack(i);
            assert_eq!(FPEPSTensor::index(k, l, r, u, d), i);
        }
        assert_eq!(FPEPSTensor::index(1, 0, 0, 0, 0), 16);
    }

    #[test]
    fn parity_is_enforced() {
        let mut t = FPEPSTensor::zeros(0);
        assert!(t.set(1, 0, 0, 0, 0, Complex64::new(1.0, 0.0)).is_err());
        assert!(t.set(1, 1, 0, 0, 0, Complex64::new(1.0, 0.0)).is_ok());
        let mut raw = [Complex64::new(0.0, 0.0); 32];
        raw[1] = Complex64::new(1.0, 0.0);
        assert!(FPEPSTensor::from_entries(0, raw).is_err());
        assert!(FPEPSTensor::from_entries(1, raw).is_ok());
    }

    #[test]
    fn from_fn_fills_allowed_half() {
        let t = FPEPSTensor::from_fn(1, |_, _, _, _, _| Complex64::new(1.0, 0.0));
        assert_eq!(t.nonzero_count(), 16);
        assert!(t.validate().is_ok());
    }
}
