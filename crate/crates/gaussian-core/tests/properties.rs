use gaussian_core::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G = O J O^T` for a random orthogonal `O`, split into channel blocks over 1 + 4 modes.
fn random_channel(seed: u64) -> GaussianChannel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = DMatrix::from_fn(10, 10, |_, _| rng.random_range(-1.0..1.0));
    let o = x.qr().q();
    let mut j = DMatrix::zeros(10, 10);
    for k in 0..5 {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    let g = &o * j * o.transpose();
    let g = (&g - g.transpose()) * 0.5;
    GaussianChannel::new(
        g.view((0, 0), (2, 2)).into_owned(),
        g.view((0, 2), (2, 8)).into_owned(),
        g.view((2, 2), (8, 8)).into_owned(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channel_validity(seed in any::<u64>()) {
        let (anti, orth) = random_channel(seed).validity_residuals();
        prop_assert!(anti <= 1e-12 && orth <= 1e-12);
    }

    #[test]
    fn blocks_are_pure(seed in any::<u64>(), a in 0.0..std::f64::consts::TAU, b in 0.0..std::f64::consts::TAU) {
        let blk = gamma_out_hat(&random_channel(seed), (a, b)).unwrap();
        prop_assume!(blk.d.abs() > 1e-6);
        prop_assert!(purity_check(&blk).unwrap() <= 1e-10 * blk.d.abs().recip().max(1.0));
    }

    #[test]
    fn lattice_output_matches_fourier(seed in any::<u64>()) {
        let ch = random_channel(seed);
        let l = LatticeSpec::new(3, 3).unwrap();
        let model = FourierModel::new(&ch).unwrap();
        prop_assume!(reciprocal_points(&l).iter().all(|&p| model.block(p).d.abs() > 1e-6));
        let big = lattice_channel(&ch, &l).unwrap();
        let direct = apply_channel(&big, &lattice_bond_cm(&l)).unwrap();
        let four = real_space_gamma(&model, &l).unwrap().to_cm().unwrap();
        prop_assert!((direct.matrix() - four.matrix()).amax() < 1e-8);
        prop_assert!(direct.purity_residual() < 1e-8);
    }

    #[test]
    fn parent_hamiltonian_is_real_and_local(seed in any::<u64>(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let h = parent_hamiltonian(&random_channel(seed), PARENT_RADIUS_CAP).unwrap();
        let x = h.h_hat((a, b)).transpose();
        let y = h.h_hat((-a, -b));
        prop_assert!((x + y).iter().all(|z| z.norm() < 1e-12));
        prop_assert!(h.blocks().keys().all(|k| k.0.abs() <= PARENT_RADIUS_CAP && k.1.abs() <= PARENT_RADIUS_CAP));
    }

    #[test]
    fn dirac_round_trip(seed in any::<u64>()) {
        let h = parent_hamiltonian(&random_channel(seed), PARENT_RADIUS_CAP).unwrap();
        let back = dirac_to_majorana(&majorana_to_dirac(&h).unwrap()).unwrap();
        for (k, m) in h.blocks() {
            prop_assert!((m - back.block(k.0, k.1)).amax() < 1e-12);
        }
    }

    #[test]
    fn entropy_of_complement(seed in any::<u64>(), mask in 1u32..((1 << 9) - 1)) {
        let ch = random_channel(seed);
        let l = LatticeSpec::new(3, 3).unwrap();
        let big = lattice_channel(&ch, &l).unwrap();
        let Ok(g) = apply_channel(&big, &lattice_bond_cm(&l)) else { return Ok(()) };
        prop_assume!(g.purity_residual() < 1e-8);
        let (a, b): (Vec<usize>, Vec<usize>) = (0..9).partition(|&i| mask >> i & 1 == 1);
        let sa = block_entropy(&g, &a).unwrap();
        let sb = block_entropy(&g, &b).unwrap();
        prop_assert!((sa - sb).abs() < 1e-8);
    }
}
