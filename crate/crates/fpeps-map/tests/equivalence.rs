use fock_oracle::{build_fpeps, build_fpeps_ordered, FPEPSTensor, FockVector, LatticeSpec, DEFAULT_MODE_CAP};
use fpeps_map::{map_tensor_set, peps_state, TensorSet};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = 1e-12;
const OVERLAP_TOL: f64 = 1e-10;

fn max_diff(a: &FockVector, b: &FockVector) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn check(nh: usize, nv: usize, parities: &[u8], seed: u64) {
    let l = LatticeSpec::new(nh, nv).unwrap();
    let set = TensorSet::random(l, parities, seed).unwrap();
    let oracle = build_fpeps(&l, &set.tensors).unwrap();
    let mapped = peps_state(&set).unwrap();
    assert!(oracle.norm() > 1e-6, "{nh}x{nv} {parities:?}: oracle vanished");
    let ov = oracle.overlap_modulus(&mapped).unwrap();
    assert!((ov - 1.0).abs() < OVERLAP_TOL, "{nh}x{nv} {parities:?} seed {seed}: overlap {ov}");
    // Each of the 2N bonds carries 1/sqrt 2 in the fermionic construction only.
    let scaled = FockVector::from_amplitudes(
        mapped.registry().clone(),
        mapped.amplitudes().iter().map(|a| a / f64::powi(2.0, l.n_sites() as i32)).collect(),
    )
    .unwrap();
    let d = max_diff(&oracle, &scaled) / oracle.norm();
    assert!(d < TOL, "{nh}x{nv} {parities:?} seed {seed}: relative difference {d:e}");
}

fn all_parities(n: usize) -> Vec<Vec<u8>> {
    (0..1u32 << n).map(|m| (0..n).map(|i| (m >> (n - 1 - i) & 1) as u8).collect()).collect()
}

#[test]
fn single_site_all_parities() {
    for p in all_parities(1) {
        check(1, 1, &p, 11);
    }
}

#[test]
fn two_site_strips_all_parities() {
    for p in all_parities(2) {
        check(1, 2, &p, 21);
        check(2, 1, &p, 22);
    }
}

#[test]
fn three_site_strips_all_parities() {
    for p in all_parities(3) {
        check(3, 1, &p, 31);
        check(1, 3, &p, 32);
    }
}

#[test]
fn two_by_two_all_parities() {
    for p in all_parities(4) {
        check(2, 2, &p, 40 + p.iter().map(|&x| x as u64).sum::<u64>());
    }
}

#[test]
fn fifty_random_sets_per_small_lattice() {
    for (nh, nv) in [(1, 2), (2, 1), (2, 2)] {
        for seed in 0..50u64 {
            let p: Vec<u8> = (0..nh * nv).map(|i| ((seed >> i) & 1) as u8).collect();
            check(nh, nv, &p, 1000 + seed);
        }
    }
}

#[test]
fn single_site_vacuum_tensor() {
    let l = LatticeSpec::new(1, 1).unwrap();
    let mut t = FPEPSTensor::zeros(0);
    t.set(0, 0, 0, 0, 0, Complex64::new(1.0, 0.0)).unwrap();
    let set = TensorSet::new(l, vec![t]).unwrap();
    let psi = peps_state(&set).unwrap();
    assert_eq!(psi.amplitudes(), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
}

/// Above the oracle's mode cap only the contraction itself and the parity sectors are checked.
#[test]
fn larger_lattices_contract_with_definite_parity() {
    for (nh, nv, seed) in [(2, 3, 61u64), (3, 2, 62), (3, 3, 63)] {
        let l = LatticeSpec::new(nh, nv).unwrap();
        let p: Vec<u8> = (0..nh * nv).map(|i| (i % 3 == 0) as u8).collect();
        let total = p.iter().fold(0u8, |a, b| a ^ b) as u32;
        let set = TensorSet::random(l, &p, seed).unwrap();
        let psi = peps_state(&set).unwrap();
        assert!(psi.norm() > 1e-6);
        assert_eq!(psi.parity(1e-12), Some(total));
    }
}

/// Contracting `l'`/`r'` along a row reproduces `Pi(h) = sum_{j>h} (u+d)_j mod 2` on every extra bond.
#[test]
fn extra_bond_carries_row_parity() {
    let l = LatticeSpec::new(4, 1).unwrap();
    let set = TensorSet::random(l, &[0, 1, 1, 0], 77).unwrap();
    let b = map_tensor_set(&set).unwrap();
    for ud in 0..(1u32 << 8) {
        let uds: Vec<(u8, u8)> = (0..4).map(|h| ((ud >> (2 * h) & 1) as u8, (ud >> (2 * h + 1) & 1) as u8)).collect();
        // r'_h is fixed by the tensors to its right through l'_(h+1) = r'_(h+1) + u + d.
        let mut rp = [0u8; 4];
        for h in (0..3).rev() {
            rp[h] = (rp[h + 1] + uds[h + 1].0 + uds[h + 1].1) & 1;
        }
        for h in 0..3 {
            let pi: u8 = uds[h + 1..].iter().fold(0, |a, (u, d)| a ^ u ^ d);
            assert_eq!(rp[h], pi);
        }
        for h in 1..4 {
            let (u, d) = uds[h];
            for k in 0..2 {
                for lv in 0..2 {
                    for r in 0..2 {
                        let wrong = b[h].get(k, lv, 1 ^ ((rp[h] + u + d) & 1), r, rp[h], u, d);
                        assert_eq!(wrong, Complex64::new(0.0, 0.0));
                    }
                }
            }
        }
    }
}

#[test]
fn one_extra_bond_per_horizontal_link() {
    let l = LatticeSpec::new(3, 2).unwrap();
    let set = TensorSet::random(l, &[0; 6], 9).unwrap();
    let b = map_tensor_set(&set).unwrap();
    let extra_links: usize = b.iter().filter(|t| t.has_rprime()).count();
    assert_eq!(extra_links, (l.nh - 1) * l.nv);
    for t in &b {
        assert_eq!(t.has_lprime(), t.site().0 > 1);
    }
}

#[test]
fn four_site_row() {
    check(4, 1, &[1, 0, 1, 1], 41);
    check(4, 1, &[0, 0, 0, 0], 42);
}

#[test]
fn oracle_does_not_depend_on_projector_order_for_even_tensors() {
    let l = LatticeSpec::new(2, 2).unwrap();
    let set = TensorSet::random(l, &[0; 4], 5).unwrap();
    let a = build_fpeps(&l, &set.tensors).unwrap();
    let b = build_fpeps_ordered(&l, &set.tensors, &[3, 1, 0, 2], DEFAULT_MODE_CAP).unwrap();
    assert!(max_diff(&a, &b) < TOL);
}


proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mapped_state_has_total_parity(seed in any::<u64>(), mask in 0u8..16) {
        let p: Vec<u8> = (0..4).map(|i| mask >> i & 1).collect();
        let l = LatticeSpec::new(2, 2).unwrap();
        let set = TensorSet::random(l, &p, seed).unwrap();
        let psi = peps_state(&set).unwrap();
        let total = p.iter().fold(0u8, |a, b| a ^ b) as u32;
        for (i, a) in psi.amplitudes().iter().enumerate() {
            if i.count_ones() & 1 != total {
                prop_assert!(a.norm() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_tensor_gives_zero_state(seed in any::<u64>(), site in 0usize..4, mask in 0u8..16) {
        let p: Vec<u8> = (0..4).map(|i| mask >> i & 1).collect();
        let l = LatticeSpec::new(2, 2).unwrap();
        let mut set = TensorSet::random(l, &p, seed).unwrap();
        set.tensors[site] = FPEPSTensor::zeros(p[site]);
        let b = map_tensor_set(&set).unwrap();
        prop_assert!(b[site].data().iter().all(|x| *x == Complex64::new(0.0, 0.0)));
        let psi = peps_state(&set).unwrap();
        prop_assert!(psi.amplitudes().iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn mapping_is_linear(seed in any::<u64>(), s in -2.0f64..2.0) {
        let l = LatticeSpec::new(2, 1).unwrap();
        let set = TensorSet::random(l, &[1, 0], seed).unwrap();
        let mut scaled = set.clone();
        let e = scaled.tensors[0].entries().map(|x| x * s);
        scaled.tensors[0] = FPEPSTensor::from_entries(1, e).unwrap();
        let a = peps_state(&set).unwrap();
        let b = peps_state(&scaled).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x * s - y).norm() < 1e-12);
        }
    }
}
