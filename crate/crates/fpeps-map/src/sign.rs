//! Local sign tables obtained by normal-ordering the fermionic network.
//!
//! Each bond carries one occupation variable. The sign of a bond configuration is a
//! quadratic form over GF(2) in these variables. Its part that couples a site's `l` or `d`
//! index to the row parity to the right is carried by the extra horizontal bond of the
//! spin PEPS; everything left over must involve a single site and goes into `f`.

use std::collections::BTreeSet;

use fock_oracle::{FPEPSTensor, FockError, LatticeSpec, Result, Site, Species};

/// Per-site table `f(k, l, r, u, d)` in `{0, 1}`, indexed like [`FPEPSTensor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignFunction {
    table: [u8; 32],
}

impl SignFunction {
    pub fn zero() -> Self {
        Self { table: [0; 32] }
    }

    pub fn get(&self, k: u8, l: u8, r: u8, u: u8, d: u8) -> u8 {
        self.table[FPEPSTensor::index(k, l, r, u, d)]
    }

    pub fn table(&self) -> &[u8; 32] {
        &self.table
    }
}

/// Slots of the local index tuple `(l, r, u, d)`.
const L: usize = 0;
const R: usize = 1;
const U: usize = 2;
const D: usize = 3;

struct Network<'a> {
    lattice: &'a LatticeSpec,
}

impl Network<'_> {
    fn h_var(&self, s: Site) -> usize {
        2 * self.lattice.index(s)
    }

    fn v_var(&self, s: Site) -> usize {
        2 * self.lattice.index(s) + 1
    }

    /// Bond variables of `(l, r, u, d)` at `s`.
    fn local(&self, s: Site) -> [usize; 4] {
        [
            self.h_var(self.lattice.left(s)),
            self.h_var(s),
            self.v_var(self.lattice.down(s)),
            self.v_var(s),
        ]
    }

    fn mode_var(&self, s: Site, sp: Species) -> usize {
        let loc = self.local(s);
        match sp {
            Species::Alpha => loc[L],
            Species::Beta => loc[R],
            Species::Gamma => loc[U],
            Species::Delta => loc[D],
            Species::Phys => unreachable!("physical modes carry no bond variable"),
        }
    }
}

/// GF(2) polynomial of degree <= 2; `(a, a)` encodes the linear term `a`.
#[derive(Default)]
struct Quadric(BTreeSet<(usize, usize)>);

impl Quadric {
    fn toggle(&mut self, a: usize, b: usize) {
        let key = (a.min(b), a.max(b));
        if !self.0.remove(&key) {
            self.0.insert(key);
        }
    }
}

/// Sign tables for every site (indexed by `M - 1`) under the parity assignment `parity[M-1]`.
///
/// Conventions: projectors act in ascending `M`, so the auxiliary annihilators read
/// `Q_N ... Q_1` from left to right; bonds create `beta^dag alpha^dag` and `delta^dag gamma^dag`.
pub fn derive_sign_functions(lattice: &LatticeSpec, parity: &[u8]) -> Result<Vec<SignFunction>> {
    let n = lattice.n_sites();
    if parity.len() != n {
        return Err(FockError::Contract(format!("parity assignment needs {n} entries")));
    }
    let net = Network { lattice };
    let sites: Vec<Site> = lattice.sites().collect();

    let mut ann = Vec::with_capacity(4 * n);
    for s in sites.iter().rev() {
        for sp in Species::AUX {
            ann.push((*s, sp));
        }
    }
    let mut cre = Vec::with_capacity(4 * n);
    for &s in &sites {
        cre.push((s, Species::Beta));
        cre.push((lattice.right(s), Species::Alpha));
        cre.push((s, Species::Delta));
        cre.push((lattice.up(s), Species::Gamma));
    }
    let pos_c = |m: &(Site, Species)| cre.iter().position(|x| x == m).expect("every aux mode is created once");
    let pc: Vec<usize> = ann.iter().map(pos_c).collect();

    let mut q = Quadric::default();
    for i in 0..ann.len() {
        for j in (i + 1)..ann.len() {
            if pc[i] < pc[j] {
                q.toggle(net.mode_var(ann[i].0, ann[i].1), net.mode_var(ann[j].0, ann[j].1));
            }
        }
    }

    // Row-parity part, carried by the extra bond: l_(1,v) Pi(1,v) + sum_h d_(h,v) Pi(h,v)
    // with Pi(h,v) = sum_{j>h} (u + d)_(j,v).
    for v in 1..=lattice.nv {
        for h in 1..=lattice.nh {
            let loc = net.local((h, v));
            for j in (h + 1)..=lattice.nh {
                let other = net.local((j, v));
                for x in [other[U], other[D]] {
                    if h == 1 {
                        q.toggle(loc[L], x);
                    }
                    q.toggle(loc[D], x);
                }
            }
        }
    }

    let mut monomials: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(a, b) in &q.0 {
        let owner = sites.iter().enumerate().find_map(|(m, &s)| {
            let loc = net.local(s);
            let sa = loc.iter().position(|&x| x == a)?;
            let sb = loc.iter().position(|&x| x == b)?;
            Some((m, sa, sb))
        });
        match owner {
            Some((m, sa, sb)) => monomials[m].push((sa, sb)),
            None => {
                return Err(FockError::Contract(format!(
                    "sign term couples bond variables {a} and {b} of different sites"
                )))
            }
        }
    }

    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let later: u8 = parity[m + 1..].iter().fold(0, |acc, c| acc ^ (c & 1));
        let mut table = [0u8; 32];
        for (i, slot) in table.iter_mut().enumerate() {
            let (k, l, r, u, d) = FPEPSTensor::unpack(i);
            let idx = [l, r, u, d];
            let mut f = k & later;
            for &(sa, sb) in &monomials[m] {
                f ^= idx[sa] & idx[sb];
            }
            *slot = f;
        }
        out.push(SignFunction { table });
    }
    Ok(out)
}

/// Sign table of one site; see [`derive_sign_functions`].
pub fn derive_sign_function(lattice: &LatticeSpec, site: Site, parity: &[u8]) -> Result<SignFunction> {
    if !lattice.contains(site) {
        return Err(FockError::Contract(format!("site {site:?} outside lattice {lattice}")));
    }
    Ok(derive_sign_functions(lattice, parity)?.swap_remove(lattice.index(site)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_is_local_on_small_tori() {
        for nh in 1..=5 {
            for nv in 1..=5 {
                let l = LatticeSpec::new(nh, nv).unwrap();
                assert!(derive_sign_functions(&l, &vec![0; nh * nv]).is_ok(), "{nh}x{nv}");
            }
        }
    }

    #[test]
    fn physical_term_tracks_later_parities() {
        let l = LatticeSpec::new(3, 1).unwrap();
        let even = derive_sign_functions(&l, &[0, 0, 0]).unwrap();
        let odd = derive_sign_functions(&l, &[0, 1, 0]).unwrap();
        for i in 0..32 {
            let k = (i >> 4) as u8 & 1;
            assert_eq!(odd[0].table()[i] ^ even[0].table()[i], k);
            assert_eq!(odd[1].table()[i], even[1].table()[i]);
            assert_eq!(odd[2].table()[i], even[2].table()[i]);
        }
    }

    #[test]
    fn wrong_parity_length_is_rejected() {
        let l = LatticeSpec::new(2, 2).unwrap();
        assert!(derive_sign_functions(&l, &[0, 0]).is_err());
        assert!(derive_sign_function(&l, (3, 1), &[0; 4]).is_err());
    }
}
