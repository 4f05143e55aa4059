// SPDX-License-Identifier: Apache-2.0

mod common;

use approx::assert_abs_diff_eq;
use common::{commuting_partner, gram_deviation, perturbed_basis, unbiased_partner, uniform_overlap_state};
use nalgebra::DVector;
use proptest::prelude::*;
use qcontext_core::bloch::{
    basis_to_bloch_frame, bloch_to_state, geometric_context_incompatibility, geometric_leakage_ratio,
    geometric_measurement_incompatibility, star, state_to_bloch, wedge, GeneratorSet,
};
use qcontext_core::incompatibility::{
    classify_context, coherence_form, context_incompatibility, eigenstate_ratio, initial_and_final_information,
    leakage_ratio, measurement_incompatibility, monotonicity_check, Classification,
};
use qcontext_core::leakage::{apply_noise, noise_sweep, stinespring_ledger};
use qcontext_core::linalg::{hs_norm_sq, identity, max_abs_diff, CMatrix};
use qcontext_core::mub::{maximize_incompatibility, mub_certificate, parameterize_basis, SearchConfig};
use qcontext_core::quantum::information;
use qcontext_core::random::{random_basis, random_context, random_pure_state};
use qcontext_core::{dephase, sequential_dephase, Context, DensityMatrix, KrausChannel, ObservableBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dephasing_is_idempotent_unital_and_trace_preserving(seed in any::<u64>(), d in 2usize..=5) {
        let ctx = random_context(&mut rng(seed), d);
        let once = dephase(&ctx.state, &ctx.first).unwrap();
        let twice = dephase(&once, &ctx.first).unwrap();
        prop_assert!(max_abs_diff(once.matrix(), twice.matrix()) < 1e-14);
        prop_assert!((once.matrix().trace().re - 1.0).abs() < 1e-13);
        let mixed = DensityMatrix::maximally_mixed(d);
        prop_assert!(max_abs_diff(dephase(&mixed, &ctx.first).unwrap().matrix(), mixed.matrix()) < 1e-14);
    }

    #[test]
    fn information_never_increases_along_the_protocol(seed in any::<u64>(), d in 2usize..=5) {
        let ctx = random_context(&mut rng(seed), d);
        let (i_initial, i_final) = initial_and_final_information(&ctx);
        prop_assert!(i_initial <= information(&ctx.state) + 1e-12);
        prop_assert!(i_final <= i_initial + 1e-12);
        let i_c = context_incompatibility(&ctx);
        prop_assert!(i_c >= -1e-12 && i_c <= (d as f64).ln() + 1e-12);
    }

    #[test]
    fn context_incompatibility_is_a_relative_entropy(seed in any::<u64>(), d in 2usize..=4) {
        let ctx = random_context(&mut rng(seed), d);
        let coherence = coherence_form(&ctx).unwrap();
        prop_assert!((coherence - context_incompatibility(&ctx)).abs() < 1e-9);
    }

    #[test]
    fn measurement_incompatibility_is_symmetric_and_bounded(seed in any::<u64>(), d in 2usize..=5) {
        let mut r = rng(seed);
        let x = random_basis(&mut r, d);
        let y = random_basis(&mut r, d);
        let xy = measurement_incompatibility(&x, &y).unwrap();
        let yx = measurement_incompatibility(&y, &x).unwrap();
        prop_assert!((xy - yx).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&xy));
        let averaged = (0..d).map(|j| eigenstate_ratio(j, &x, &y).unwrap()).sum::<f64>() / d as f64;
        prop_assert!((averaged - xy).abs() < 1e-12);
    }

    #[test]
    fn leakage_ratio_obeys_the_pythagorean_split(seed in any::<u64>(), d in 2usize..=5) {
        let ctx = random_context(&mut rng(seed), d);
        let phi_x = dephase(&ctx.state, &ctx.first).unwrap();
        let phi_yx = sequential_dephase(&ctx.state, &ctx.first, &ctx.second).unwrap();
        let mixed = identity(d).unscale(d as f64);
        let total = hs_norm_sq(&(phi_x.matrix() - &mixed));
        let kept = hs_norm_sq(&(phi_yx.matrix() - &mixed));
        let lost = hs_norm_sq(&(phi_yx.matrix() - phi_x.matrix()));
        prop_assert!((total - kept - lost).abs() < 1e-13);
        let ratio = leakage_ratio(&ctx).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&ratio));
        prop_assert!((ratio - (1.0 - kept / total)).abs() < 1e-10);
    }

    #[test]
    fn geometric_forms_match_state_space(seed in any::<u64>(), d in 2usize..=4) {
        let ctx = random_context(&mut rng(seed), d);
        let gens = GeneratorSet::new(d).unwrap();
        let r = state_to_bloch(&ctx.state, &gens).unwrap();
        let xf = basis_to_bloch_frame(&ctx.first, &gens).unwrap();
        let yf = basis_to_bloch_frame(&ctx.second, &gens).unwrap();
        prop_assert!((geometric_context_incompatibility(&r, &xf, &yf).unwrap() - context_incompatibility(&ctx)).abs() < 1e-10);
        prop_assert!((geometric_leakage_ratio(&r, &xf, &yf).unwrap() - leakage_ratio(&ctx).unwrap()).abs() < 1e-10);
        let m = measurement_incompatibility(&ctx.first, &ctx.second).unwrap();
        prop_assert!((geometric_measurement_incompatibility(&xf, &yf).unwrap() - m).abs() < 1e-10);
        prop_assert!(max_abs_diff(bloch_to_state(&r, &gens).unwrap().matrix(), ctx.state.matrix()) < 1e-12);
        prop_assert!(r.norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn star_is_symmetric_and_wedge_antisymmetric(seed in any::<u64>(), d in 2usize..=4) {
        let mut r = rng(seed);
        let gens = GeneratorSet::new(d).unwrap();
        let u = DVector::from_fn(gens.len(), |_, _| r.random_range(-1.0..1.0));
        let v = DVector::from_fn(gens.len(), |_, _| r.random_range(-1.0..1.0));
        let s = star(&u, &v, &gens).unwrap() - star(&v, &u, &gens).unwrap();
        let w = wedge(&u, &v, &gens).unwrap() + wedge(&v, &u, &gens).unwrap();
        prop_assert!(s.amax() < 1e-13 && w.amax() < 1e-13);
        prop_assert!(wedge(&u, &u, &gens).unwrap().amax() < 1e-13);
    }

    #[test]
    fn noise_contracts_information(seed in any::<u64>(), d in 2usize..=4, eps in 1e-4f64..=1.0) {
        let ctx = random_context(&mut rng(seed), d);
        let point = noise_sweep(&ctx, &[eps]).unwrap()[0];
        let (i_initial, _) = initial_and_final_information(&ctx);
        prop_assert!(point.i_initial_eps <= eps * i_initial + 1e-12);
        prop_assert!(point.i_initial_eps - point.i_final_eps <= eps * context_incompatibility(&ctx) + 1e-12);
        // The exact sweep agrees with evaluating the noisy state directly.
        let noisy = ctx.with_state(apply_noise(&ctx.state, eps).unwrap()).unwrap();
        let (a, b) = initial_and_final_information(&noisy);
        prop_assert!((a - point.i_initial_eps).abs() < 1e-12 && (b - point.i_final_eps).abs() < 1e-12);
    }

    #[test]
    fn depolarizing_channels_are_monotone(seed in any::<u64>(), d in 2usize..=4, w in 0.0f64..=1.0) {
        let ctx = random_context(&mut rng(seed), d);
        let outcome = monotonicity_check(&ctx, &KrausChannel::depolarizing(d, w).unwrap()).unwrap();
        prop_assert!(outcome.after <= w * outcome.before + 1e-9);
    }

    #[test]
    fn ledger_balances(seed in any::<u64>(), d in 2usize..=4) {
        let ctx = random_context(&mut rng(seed), d);
        prop_assert!(stinespring_ledger(&ctx).unwrap().balance_residual().abs() < 1e-9);
    }

    #[test]
    fn parameterized_bases_are_unitary(seed in any::<u64>(), d in 2usize..=5) {
        let mut r = rng(seed);
        let gens = GeneratorSet::new(d).unwrap();
        let coeffs: Vec<f64> = (0..gens.len()).map(|_| r.random_range(-std::f64::consts::PI..=std::f64::consts::PI)).collect();
        let basis = parameterize_basis(&coeffs, &gens).unwrap();
        prop_assert!(gram_deviation(basis.vectors()) < 1e-12);
    }

    #[test]
    fn incompatibility_ignores_phases_and_order(seed in any::<u64>(), d in 2usize..=5) {
        let mut r = rng(seed);
        let x = random_basis(&mut r, d);
        let y = random_basis(&mut r, d);
        let relabelled = commuting_partner(&mut r, &y);
        let a = measurement_incompatibility(&x, &y).unwrap();
        let b = measurement_incompatibility(&x, &relabelled).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
        let ca = mub_certificate(&x, &y, 1e-8).unwrap().max_deviation;
        let cb = mub_certificate(&x, &relabelled, 1e-8).unwrap().max_deviation;
        prop_assert!((ca - cb).abs() < 1e-12);
    }

    #[test]
    fn free_classification_implies_zero_incompatibility(seed in any::<u64>(), d in 2usize..=4) {
        let mut r = rng(seed);
        let x = random_basis(&mut r, d);
        let commuting = Context::new(random_pure_state(&mut r, d), x.clone(), commuting_partner(&mut r, &x)).unwrap();
        prop_assert_eq!(classify_context(&commuting), Classification::FreeCommuting);
        prop_assert!(context_incompatibility(&commuting).abs() <= 1e-9);
        let flat = Context::new(uniform_overlap_state(&mut r, &x), x.clone(), random_basis(&mut r, d)).unwrap();
        prop_assert_eq!(classify_context(&flat), Classification::FreeZeroInfo);
        prop_assert!(context_incompatibility(&flat).abs() <= 1e-9);
    }

    /// Close to the free set the measure is second order in the distance, so
    /// resourceful contexts can sit under any fixed reporting threshold.
    #[test]
    fn near_free_contexts_stay_resourceful(seed in any::<u64>(), d in 2usize..=3) {
        let mut r = rng(seed);
        let x = random_basis(&mut r, d);
        let y = perturbed_basis(&mut r, &x, 1e-3);
        let ctx = Context::new(random_pure_state(&mut r, d), x, y).unwrap();
        prop_assert_eq!(classify_context(&ctx), Classification::Resourceful);
        let i_c = context_incompatibility(&ctx);
        prop_assert!((-1e-15..1e-4).contains(&i_c));
    }
}

#[test]
fn search_is_seed_deterministic_and_monotone_per_restart() {
    let mut cfg = SearchConfig::new(3);
    cfg.restarts = 3;
    cfg.max_iters = 200;
    cfg.seed = 42;
    let fixed = ObservableBasis::computational(3);
    let a = maximize_incompatibility(&fixed, &cfg).unwrap();
    let b = maximize_incompatibility(&fixed, &cfg).unwrap();
    assert_eq!(a.trajectory, b.trajectory);
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    for w in a.trajectory.windows(2) {
        if w[0].restart == w[1].restart {
            assert!(w[1].objective >= w[0].objective);
            assert_eq!(w[1].iteration, w[0].iteration + 1);
        }
    }
    assert!((0.0..=1.0).contains(&a.objective));
    let cert = mub_certificate(&fixed, &a.best_basis, cfg.tol_mub).unwrap();
    assert_eq!(cert.is_mub, a.certified_mub);
    assert_abs_diff_eq!(
        measurement_incompatibility(&fixed, &a.best_basis).unwrap(),
        a.objective,
        epsilon = 1e-12
    );
}

#[test]
fn search_finds_pairs_where_no_complete_set_is_known() {
    let mut cfg = SearchConfig::new(6);
    cfg.restarts = 3;
    cfg.seed = 6;
    let res = maximize_incompatibility(&ObservableBasis::computational(6), &cfg).unwrap();
    assert!(res.objective > 1.0 - 1e-6, "1 - M = {}", 1.0 - res.objective);
}

#[test]
fn unbiased_partner_helper_is_unbiased() {
    let mut r = rng(1);
    for d in 2..=6 {
        let x = random_basis(&mut r, d);
        let cert = mub_certificate(&x, &unbiased_partner(&x), 1e-12).unwrap();
        assert!(cert.is_mub, "{cert:?}");
    }
}

#[test]
fn commuting_channels_pass_validation_and_skewed_unitaries_do_not() {
    let x = ObservableBasis::fourier(3);
    let y = ObservableBasis::computational(3);
    let ctx = Context::new(DensityMatrix::pure(&x.vector(1)).unwrap(), x.clone(), y).unwrap();
    let dephasing = KrausChannel::dephasing(&x);
    let outcome = monotonicity_check(&ctx, &dephasing).unwrap();
    assert_abs_diff_eq!(outcome.before, outcome.after, epsilon = 1e-12);

    let mut r = rng(3);
    let skew: CMatrix = common::haar(&mut r, 3);
    let unitary = KrausChannel::new(vec![skew]).unwrap();
    assert!(monotonicity_check(&ctx, &unitary).is_err());
}
