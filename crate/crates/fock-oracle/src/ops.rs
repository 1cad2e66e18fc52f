use num_complex::Complex64;

use crate::lattice::ModeLabel;

/// Creation (`dagger = true`) or annihilation operator on a labeled mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub label: ModeLabel,
    pub dagger: bool,
}

impl Factor {
    pub fn create(label: ModeLabel) -> Self {
        Self { label, dagger: true }
    }

    pub fn annihilate(label: ModeLabel) -> Self {
        Self { label, dagger: false }
    }
}

/// Sum of monomials. Factors of a monomial are written left to right and act right to left.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OperatorPoly {
    pub terms: Vec<(Complex64, Vec<Factor>)>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(c: Complex64) -> Self {
        Self { terms: vec![(c, Vec::new())] }
    }

    pub fn monomial(c: Complex64, factors: Vec<Factor>) -> Self {
        Self { terms: vec![(c, factors)] }
    }

    pub fn create(label: ModeLabel) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), vec![Factor::create(label)])
    }

    pub fn annihilate(label: ModeLabel) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), vec![Factor::annihilate(label)])
    }

    /// `c^(1) = a^dag + a`.
    pub fn majorana1(label: ModeLabel) -> Self {
        Self::create(label).add(&Self::annihilate(label))
    }

    /// `c^(2) = -i (a^dag - a)`.
    pub fn majorana2(label: ModeLabel) -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::create(label).scale(-i).add(&Self::annihilate(label).scale(i))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self { terms }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(a, f)| (a * c, f.clone())).collect(),
        }
    }

    /// Operator product `self * other`: `other` acts first.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().copied());
                terms.push((a * b, f));
            }
        }
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
