use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::{FockError, Result};

/// Lattice site `(h, v)`, both 1-based.
pub type Site = (usize, usize);

/// Periodic `nh x nv` lattice. Sites are ordered by `M(h,v) = (v-1) nh + h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    pub nh: usize,
    pub nv: usize,
}

impl LatticeSpec {
    pub fn new(nh: usize, nv: usize) -> Result<Self> {
        if nh == 0 || nv == 0 {
            return Err(FockError::InvalidLattice { nh, nv });
        }
        Ok(Self { nh, nv })
    }

    pub fn n_sites(&self) -> usize {
        self.nh * self.nv
    }

    /// Zero-based position `M(h,v) - 1`.
    pub fn index(&self, site: Site) -> usize {
        let (h, v) = site;
        debug_assert!(self.contains(site));
        (v - 1) * self.nh + (h - 1)
    }

    pub fn site(&self, index: usize) -> Site {
        (index % self.nh + 1, index / self.nh + 1)
    }

    pub fn contains(&self, site: Site) -> bool {
        let (h, v) = site;
        (1..=self.nh).contains(&h) && (1..=self.nv).contains(&v)
    }

    /// Sites in ascending `M` order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.n_sites()).map(|m| self.site(m))
    }

    /// `(h+1, v)` with wraparound.
    pub fn right(&self, site: Site) -> Site {
        (site.0 % self.nh + 1, site.1)
    }

    /// `(h-1, v)` with wraparound.
    pub fn left(&self, site: Site) -> Site {
        ((site.0 + self.nh - 2) % self.nh + 1, site.1)
    }

    /// `(h, v+1)` with wraparound.
    pub fn up(&self, site: Site) -> Site {
        (site.0, site.1 % self.nv + 1)
    }

    /// `(h, v-1)` with wraparound.
    pub fn down(&self, site: Site) -> Site {
        (site.0, (site.1 + self.nv - 2) % self.nv + 1)
    }

    /// Site displaced by `(dh, dv)` with wraparound.
    pub fn shift(&self, site: Site, dh: i64, dv: i64) -> Site {
        let h = (site.0 as i64 - 1 + dh).rem_euclid(self.nh as i64) as usize + 1;
        let v = (site.1 as i64 - 1 + dv).rem_euclid(self.nv as i64) as usize + 1;
        (h, v)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.nh, self.nv)
    }
}

impl FromStr for LatticeSpec {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FockError::Contract(format!("cannot parse lattice '{s}', expected NHxNV"));
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let nh = a.trim().parse().map_err(|_| bad())?;
        let nv = b.trim().parse().map_err(|_| bad())?;
        LatticeSpec::new(nh, nv)
    }
}

/// Physical mode `a` and the four auxiliary modes attached to a site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Species {
    Phys,
    Alpha,
    Beta,
    Gamma,
    Delta,
}

impl Species {
    pub const AUX: [Species; 4] = [Species::Alpha, Species::Beta, Species::Gamma, Species::Delta];

    fn tag(self) -> &'static str {
        match self {
            Species::Phys => "a",
            Species::Alpha => "alpha",
            Species::Beta => "beta",
            Species::Gamma => "gamma",
            Species::Delta => "delta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    pub site: Site,
    pub species: Species,
}

impl ModeLabel {
    pub fn new(site: Site, species: Species) -> Self {
        Self { site, species }
    }

    pub fn phys(site: Site) -> Self {
        Self::new(site, Species::Phys)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.species.tag(), self.site.0, self.site.1)
    }
}

impl FromStr for ModeLabel {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || FockError::UnknownMode(s.to_string());
        let (tag, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let (h, v) = inner.split_once(',').ok_or_else(bad)?;
        let species = match tag {
            "a" => Species::Phys,
            "alpha" => Species::Alpha,
            "beta" => Species::Beta,
            "gamma" => Species::Gamma,
            "delta" => Species::Delta,
            _ => return Err(bad()),
        };
        let h = h.trim().parse().map_err(|_| bad())?;
        let v = v.trim().parse().map_err(|_| bad())?;
        Ok(Self::new((h, v), species))
    }
}

/// Ordered list of mode labels; position in the list fixes the bit position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeRegistry {
    labels: Vec<ModeLabel>,
    lookup: HashMap<ModeLabel, usize>,
}

impl ModeRegistry {
    pub fn new(labels: Vec<ModeLabel>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(*l, i).is_some() {
                return Err(FockError::Contract(format!("duplicate mode label {l}")));
            }
        }
        Ok(Self { labels, lookup })
    }

    /// Physical modes only, in `M` order.
    pub fn physical(lattice: &LatticeSpec) -> Self {
        Self::new(lattice.sites().map(ModeLabel::phys).collect()).expect("labels are distinct")
    }

    /// Physical modes first (by `M`), then `alpha, beta, gamma, delta` of each site, site-major.
    pub fn full(lattice: &LatticeSpec) -> Self {
        let mut labels: Vec<ModeLabel> = lattice.sites().map(ModeLabel::phys).collect();
        for s in lattice.sites() {
            labels.extend(Species::AUX.iter().map(|&sp| ModeLabel::new(s, sp)));
        }
        Self::new(labels).expect("labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn position(&self, label: &ModeLabel) -> Result<usize> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| FockError::UnknownMode(label.to_string()))
    }
}
