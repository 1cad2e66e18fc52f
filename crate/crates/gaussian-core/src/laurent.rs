//! Real Laurent polynomials in `z1 = exp(i phi1)`, `z2 = exp(i phi2)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Coefficients below this magnitude are dropped after arithmetic.
const CLEAN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), f64>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: f64, e1: i32, e2: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e1, e2);
        p
    }

    pub fn add_term(&mut self, c: f64, e1: i32, e2: i32) {
        if c == 0.0 {
            return;
        }
        let v = self.terms.entry((e1, e2)).or_insert(0.0);
        *v += c;
        if v.abs() < CLEAN_TOL {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), f64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    pub fn coeff(&self, e1: i32, e2: i32) -> f64 {
        self.terms.get(&(e1, e2)).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut p = Self::zero();
        for (&(a, b), &c) in &self.terms {
            p.add_term(c * s, a, b);
        }
        p
    }

    /// Multiplies by `z_var^k`.
    pub fn shift(&self, var: usize, k: i32) -> Self {
        let mut p = Self::zero();
        for (&(a, b), &c) in &self.terms {
            if var == 1 {
                p.add_term(c, a + k, b);
            } else {
                p.add_term(c, a, b + k);
            }
        }
        p
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.terms.iter().map(|(&(a, b), &c)| c * z1.powi(a) * z2.powi(b)).sum()
    }

    pub fn eval_phi(&self, phi1: f64, phi2: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, phi1), Complex64::from_polar(1.0, phi2))
    }

    /// Exact quotient by `(z_var - r)`, or `None` if the remainder is nonzero.
    pub fn div_linear(&self, var: usize, r: f64) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Group by the other exponent: each slice is a one-variable Laurent polynomial.
        let mut slices: BTreeMap<i32, BTreeMap<i32, f64>> = BTreeMap::new();
        for (&(a, b), &c) in &self.terms {
            let (e, other) = if var == 1 { (a, b) } else { (b, a) };
            slices.entry(other).or_default().insert(e, c);
        }
        let tol = 1e-12 * self.max_abs_coeff().max(1.0);
        let mut out = Self::zero();
        for (other, slice) in slices {
            let lo = *slice.keys().next().expect("nonempty slice");
            let hi = *slice.keys().next_back().expect("nonempty slice");
            // Synthetic division of sum_e c_e z^(e - lo) by (z - r), from the top.
            let mut carry = 0.0;
            for e in (lo..=hi).rev() {
                let c = slice.get(&e).copied().unwrap_or(0.0) + r * carry;
                if e == lo {
                    if c.abs() > tol {
                        return None;
                    }
                } else {
                    let qe = e - 1;
                    if var == 1 {
                        out.add_term(c, qe, other);
                    } else {
                        out.add_term(c, other, qe);
                    }
                }
                carry = c;
            }
        }
        Some(out)
    }

    /// Determinant by cofactor expansion over column subsets.
    pub fn det(m: &[Vec<Laurent2>]) -> Laurent2 {
        let n = m.len();
        if n == 0 {
            return Laurent2::constant(1.0);
        }
        // minors[mask] = det of rows (n - popcount(mask)..n) restricted to columns in mask.
        let mut minors: Vec<Option<Laurent2>> = vec![None; 1 << n];
        minors[0] = Some(Laurent2::constant(1.0));
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = n - k;
            let mut acc = Laurent2::zero();
            let mut pos = 0;
            for col in 0..n {
                if mask >> col & 1 == 0 {
                    continue;
                }
                let sub = minors[mask ^ (1 << col)].as_ref().expect("smaller masks first");
                if !m[row][col].is_zero() && !sub.is_zero() {
                    let term = &m[row][col] * sub;
                    acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                pos += 1;
            }
            minors[mask] = Some(acc);
        }
        minors.pop().flatten().expect("full mask computed")
    }

    /// `adj(M)_{ij} = (-1)^{i+j} det(M without row j and column i)`.
    pub fn adjugate(m: &[Vec<Laurent2>]) -> Vec<Vec<Laurent2>> {
        let n = m.len();
        let mut adj = vec![vec![Laurent2::zero(); n]; n];
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<Laurent2>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                    .collect();
                let d = Laurent2::det(&minor);
                *slot = if (i + j) % 2 == 0 { d } else { -&d };
            }
        }
        adj
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            p.add_term(c, a, b);
        }
        p
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = self.clone();
        for (&(a, b), &c) in &rhs.terms {
            p.add_term(-c, a, b);
        }
        p
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut p = Laurent2::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &rhs.terms {
                p.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        p
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        self.scale(-1.0)
    }
}
