use std::f64::consts::{FRAC_PI_2, PI, TAU};

use fock_oracle::{covariance_matrix, exact_ground_state, ModeLabel, ModeRegistry};
use gaussian_core::*;
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The critical example, entered site-interleaved and converted to qp order.
fn example() -> GaussianChannel {
    let b = DMatrix::from_row_slice(
        2,
        8,
        &[1., -1., -1., 1., 0., 0., 0., 0., 0., 0., 0., 0., 1., -1., -1., 1.],
    ) / 2.0;
    let d = DMatrix::from_row_slice(
        8,
        8,
        &[
            0., 0., 2., 2., 1., -1., 1., -1., //
            0., 0., 2., 2., -1., 1., -1., 1., //
            -2., -2., 0., 0., 1., -1., 1., -1., //
            -2., -2., 0., 0., -1., 1., -1., 1., //
            -1., 1., -1., 1., 0., 0., 2., 2., //
            1., -1., 1., -1., 0., 0., 2., 2., //
            -1., 1., -1., 1., -2., -2., 0., 0., //
            1., -1., 1., -1., -2., -2., 0., 0.,
        ],
    ) / 4.0;
    GaussianChannel::new(
        DMatrix::zeros(2, 2),
        interleaved_to_qp(&b, false, true).unwrap(),
        interleaved_to_qp(&d, true, true).unwrap(),
    )
    .unwrap()
}

fn closed_forms(phi: (f64, f64)) -> (f64, f64) {
    let (s1, s2) = (phi.0.sin(), phi.1.sin());
    let den = -1.0 + s1 * s2;
    ((s1 - s2) / den, phi.0.cos() * phi.1.cos() / den)
}

fn lattice(nh: usize, nv: usize) -> LatticeSpec {
    LatticeSpec::new(nh, nv).unwrap()
}

#[test]
fn ratios_at_named_momenta() {
    let ch = example();
    let b = gamma_out_hat(&ch, (0.0, 0.0)).unwrap();
    assert!((b.p / b.d).abs() < 1e-14);
    assert!((b.q.re / b.d + 1.0).abs() < 1e-14 && b.q.im.abs() < 1e-14);
    let b = gamma_out_hat(&ch, (FRAC_PI_2, 0.0)).unwrap();
    assert!((b.p / b.d + 1.0).abs() < 1e-14);
    assert!((b.q / b.d).norm() < 1e-14);
}

#[test]
fn ratios_match_closed_forms_at_random_momenta() {
    let model = FourierModel::new(&example()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let phi = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
        let b = model.block(phi);
        let (p, q) = closed_forms(phi);
        let (pd, qd) = b.ratios().unwrap();
        assert!((pd - p).abs() < 1e-10, "{phi:?}");
        assert!((qd.re - q).abs() < 1e-10 && qd.im.abs() < 1e-10, "{phi:?}");
        let back = FourierBlock::from_pqd(phi, b.p, b.q, b.d).g_hat.unwrap();
        assert!((back - b.g_hat.unwrap()).iter().all(|x| x.norm() < 1e-9));
    }
}

#[test]
fn named_zero_momenta_are_not_zeros_of_d() {
    let model = FourierModel::new(&example()).unwrap();
    let named = model.block((FRAC_PI_2, 3.0 * FRAC_PI_2));
    assert!(!named.zero_norm);
    assert!((named.d - 8.0).abs() < 1e-12);
    // The removable factors vanish at phi_i = pi only.
    assert!(model.block((PI, 1.0)).zero_norm && model.block((2.0, PI)).zero_norm);
    assert!(!model.block((0.0, 1.0)).zero_norm && !model.block((2.0, 0.0)).zero_norm);
    // The vanishing factor is (-1 + sin phi1 sin phi2).
    assert!(model.block((FRAC_PI_2, FRAC_PI_2)).zero_norm);
    assert!(model.block((3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2)).zero_norm);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let phi = (rng.random_range(0.0..TAU), rng.random_range(0.0..TAU));
        let d = model.block(phi).d;
        let f = (1.0 - phi.0.sin() * phi.1.sin()) * (phi.0 / 2.0).cos().powi(2) * (phi.1 / 2.0).cos().powi(2);
        assert!((d - 16.0 * f).abs() < 1e-10, "{phi:?}");
    }
}

#[test]
fn real_block_matches_lattice_modes() {
    // Covariance of (C1, -C2, -S2, -S1) built from the real-space matrix on a 5x5 torus.
    let l = lattice(5, 5);
    let model = FourierModel::new(&example()).unwrap();
    let g = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
    let n = l.n_sites();
    for phi in [(TAU / 5.0, 2.0 * TAU / 5.0), (3.0 * TAU / 5.0, TAU / 5.0), (4.0 * TAU / 5.0, 4.0 * TAU / 5.0)] {
        let mut w = DMatrix::zeros(4, 2 * n);
        let norm = (2.0 / n as f64).sqrt();
        for s in l.sites() {
            let m = l.index(s);
            let a = phi.0 * (s.0 - 1) as f64 + phi.1 * (s.1 - 1) as f64;
            w[(0, m)] = norm * a.cos();
            w[(1, n + m)] = -norm * a.cos();
            w[(2, n + m)] = -norm * a.sin();
            w[(3, m)] = -norm * a.sin();
        }
        let r = &w * g.matrix() * w.transpose();
        let blk = model.block(phi);
        let want = blk.gamma_hat().unwrap();
        let direct = real_block_from_g_hat(&blk.g_hat.unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert!((r[(i, j)] - want[(i, j)]).abs() < 1e-12, "{phi:?} {i} {j}");
                assert!((direct[(i, j)] - want[(i, j)]).abs() < 1e-12, "{phi:?} {i} {j}");
            }
        }
    }
}

fn lattice_vs_fourier(nh: usize, nv: usize) -> f64 {
    let l = lattice(nh, nv);
    let ch = example();
    let big = lattice_channel(&ch, &l).unwrap();
    let direct = apply_channel(&big, &lattice_bond_cm(&l)).unwrap();
    let model = FourierModel::new(&ch).unwrap();
    let four = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
    (direct.matrix() - four.matrix()).amax()
}

#[test]
fn lattice_channel_equals_fourier_construction() {
    assert!(lattice_vs_fourier(3, 3) < 1e-10);
    assert!(lattice_vs_fourier(5, 5) < 1e-10);
    assert!(lattice_vs_fourier(3, 5) < 1e-10);
}

#[test]
fn output_is_pure_on_odd_tori() {
    for (nh, nv) in [(3, 3), (5, 5), (7, 3)] {
        let l = lattice(nh, nv);
        let big = lattice_channel(&example(), &l).unwrap();
        let out = apply_channel(&big, &lattice_bond_cm(&l)).unwrap();
        assert!(out.purity_residual() < 1e-10);
    }
}

#[test]
fn purity_of_blocks_and_sensitivity() {
    let model = FourierModel::new(&example()).unwrap();
    for phi in [(0.3, 1.9), (2.2, 4.0), (PI / 3.0, 0.4)] {
        let b = model.block(phi);
        assert!(purity_check(&b).unwrap() < 1e-10);
        let bad = FourierBlock::from_pqd(phi, 1.1 * b.p, b.q, b.d);
        if b.p.abs() > 0.1 * b.d.abs() {
            assert!(purity_check(&bad).unwrap() > 1e-3);
        }
    }
    let zero = model.block((FRAC_PI_2, FRAC_PI_2));
    assert!(matches!(purity_check(&zero), Err(GaussError::ZeroNorm { .. })));
    let vac = GaussianChannel::new(MajoranaCM::vacuum(1).into_matrix(), DMatrix::zeros(2, 8), vacuum_d()).unwrap();
    let b = gamma_out_hat(&vac, (0.7, 0.1)).unwrap();
    assert_eq!(purity_check(&b).unwrap(), 0.0);
}

/// D of a channel whose virtual part is decoupled: pairs (alpha, beta) and (gamma, delta) in
/// their own qp blocks.
fn vacuum_d() -> DMatrix<f64> {
    MajoranaCM::vacuum(4).into_matrix()
}

#[test]
fn four_by_four_reports_zero_momenta() {
    let l = lattice(4, 4);
    let model = FourierModel::new(&example()).unwrap();
    let zeros = model.zero_momenta(&l);
    assert!(zeros.contains(&(FRAC_PI_2, FRAC_PI_2)));
    assert!(zeros.contains(&(3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2)));
    assert!(!zeros.contains(&(FRAC_PI_2, 3.0 * FRAC_PI_2)));
    match real_space_gamma(&model, &l) {
        Err(GaussError::ZeroMomenta(z)) => assert_eq!(z, zeros),
        other => panic!("expected zero momenta, got {other:?}"),
    }
    assert!(matches!(ground_state_cm_consistency(&example(), &l), Err(GaussError::ZeroMomenta(_))));
    for n in [3, 5, 7, 9] {
        assert!(model.zero_momenta(&lattice(n, n)).is_empty());
    }
}

#[test]
fn parent_hamiltonian_coefficients() {
    let h = parent_hamiltonian(&example(), 1).unwrap();
    let mut keys: Vec<_> = h.blocks().keys().copied().collect();
    keys.sort();
    let want: Vec<(i32, i32)> = vec![(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];
    assert_eq!(keys, want);
    let close = |m: Matrix2<f64>, w: Matrix2<f64>| (m - w).amax() < 1e-12;
    assert!(close(h.block(1, 0), Matrix2::new(-0.5, 0.0, 0.0, 0.5)));
    assert!(close(h.block(0, 1), Matrix2::new(0.5, 0.0, 0.0, -0.5)));
    assert!(close(h.block(1, 1), Matrix2::new(0.0, -0.25, 0.25, 0.0)));
    assert!(close(h.block(1, -1), Matrix2::new(0.0, -0.25, 0.25, 0.0)));
    assert_eq!(h.radius(), 2);
    let d = majorana_to_dirac(&h).unwrap();
    assert!((d.pairing[&(1, 0)] - Complex64::new(0.0, -2.0)).norm() < 1e-12);
    assert!((d.pairing[&(0, 1)] - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    assert!((d.hopping[&(1, 1)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!((d.hopping[&(1, -1)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    assert!(d.mu.abs() < 1e-12);
    assert!(matches!(parent_hamiltonian(&example(), 0), Err(GaussError::Locality { .. })));
}

#[test]
fn reduced_denominator() {
    let model = FourierModel::new(&example()).unwrap();
    let (d, _) = reduced_polynomials(&model);
    for phi in [(0.3f64, 1.1f64), (2.0, 5.0)] {
        let want = 1.0 - phi.0.sin() * phi.1.sin();
        assert!((d.eval_phi(phi.0, phi.1).re.abs() - want).abs() < 1e-12);
    }
}

#[test]
fn decoupled_channel_gives_on_site_hamiltonian() {
    let a = MajoranaCM::vacuum(1).into_matrix();
    let ch = GaussianChannel::new(a.clone(), DMatrix::zeros(2, 8), vacuum_d()).unwrap();
    let h = parent_hamiltonian(&ch, 1).unwrap();
    assert_eq!(h.blocks().len(), 1);
    let m = h.block(0, 0);
    assert!((m + Matrix2::new(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)])).amax() < 1e-14);
    let d = majorana_to_dirac(&h).unwrap();
    assert!(d.pairing.is_empty() && d.hopping.is_empty());
}

#[test]
fn ground_state_consistency_on_odd_tori() {
    let ch = example();
    let model = FourierModel::new(&ch).unwrap();
    let h = parent_hamiltonian(&ch, 1).unwrap();
    for n in [3, 5, 7] {
        let l = lattice(n, n);
        assert!(ground_state_cm_consistency(&ch, &l).unwrap() < 1e-10);
        let g = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
        let e = h.energy(&l, &g).unwrap();
        assert!((e - ground_energy(&h, &l)).abs() < 1e-10, "{n}: {e}");
        assert!(gap(&h, &l) > 0.0);
    }
}

#[test]
fn ground_state_matches_exact_diagonalization() {
    let ch = example();
    let h = parent_hamiltonian(&ch, 1).unwrap();
    for (nh, nv) in [(3, 1), (1, 3), (3, 3)] {
        let l = lattice(nh, nv);
        let (e0, psi) = exact_ground_state(&h.to_fock(&l).unwrap(), &ModeRegistry::physical(&l)).unwrap();
        assert!((e0 - ground_energy(&h, &l)).abs() < 1e-9, "{nh}x{nv}");
        if nh == 3 && nv == 3 {
            let modes: Vec<ModeLabel> = l.sites().map(ModeLabel::phys).collect();
            let g = covariance_matrix(&psi, &modes).unwrap();
            let model = FourierModel::new(&ch).unwrap();
            let four = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
            assert!((g - four.matrix()).amax() < 1e-9);
        }
    }
}

#[test]
fn gap_closes_with_size() {
    let h = parent_hamiltonian(&example(), 1).unwrap();
    let gaps: Vec<f64> = [5, 9, 17, 33].iter().map(|&n| gap(&h, &lattice(n, n))).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn complementary_blocks_share_entropy() {
    let l = lattice(5, 5);
    let model = FourierModel::new(&example()).unwrap();
    let g = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let (a, b): (Vec<usize>, Vec<usize>) = (0..l.n_sites()).partition(|_| rng.random_bool(0.4));
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let sa = block_entropy(&g, &a).unwrap();
        let sb = block_entropy(&g, &b).unwrap();
        assert!((sa - sb).abs() < 1e-8);
    }
}

#[test]
fn hamiltonian_reality_condition() {
    let h = parent_hamiltonian(&example(), 1).unwrap();
    for phi in [(0.2, 0.9), (2.5, -1.0)] {
        let a = h.h_hat(phi).transpose();
        let b = h.h_hat((-phi.0, -phi.1));
        assert!((a + b).iter().all(|x| x.norm() < 1e-14));
    }
}
