//! Cross-module invariants: norm preservation, permutation symmetry,
//! involutions, partition identities, and the monogamy equalities, exercised
//! on grids and on randomized inputs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::{PI, TAU};

use wtangle_core::densmat::{
    partial_trace, partial_transpose, partial_transpose_herm, spin_flip, trace_norm, DensityMatrix,
    HermitianMatrix, PureStateVector,
};
use wtangle_core::symstate::{
    canonicalize_ab, dnk_state, enumerate_slocc_configs, wclass_state, SymmetricState,
};
use wtangle_core::tangle::{concurrence_2q, concurrence_tangle_vec, negativity_2q};

fn random_pure_state(rng: &mut ChaCha20Rng, n: usize) -> PureStateVector {
    let dim = 1usize << n;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    PureStateVector::new(n, amps).unwrap()
}

#[test]
fn wclass_full_vectors_stay_normalized() {
    for n in 2..=12usize {
        for i in 1..=24 {
            let theta = i as f64 * TAU / 24.0;
            let psi = wclass_state(n, theta).unwrap().to_full_vector().unwrap();
            let norm_sq: f64 = psi.amps().iter().map(|a| a.norm_sqr()).sum();
            assert!((norm_sq - 1.0).abs() <= 1e-12, "n={n} theta={theta}");
        }
    }
}

#[test]
fn full_vector_invariant_under_all_transpositions() {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    for n in 2..=8usize {
        // A random symmetric state, not just the W-class slice.
        let mut coeffs: Vec<Complex64> = (0..=n)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        let psi = SymmetricState::from_dicke_coeffs(n, coeffs)
            .unwrap()
            .to_full_vector()
            .unwrap();
        for a in 0..n {
            for b in (a + 1)..n {
                for idx in 0..psi.amps().len() {
                    let ba = (idx >> a) & 1;
                    let bb = (idx >> b) & 1;
                    let swapped = (idx & !(1 << a) & !(1 << b)) | (ba << b) | (bb << a);
                    assert_eq!(
                        psi.amps()[idx],
                        psi.amps()[swapped],
                        "n={n}, swap bits {a},{b}, index {idx}"
                    );
                }
            }
        }
    }
}

#[test]
fn dnk_degenerates_exactly_for_all_small_cases() {
    for n in 2..=10usize {
        for k in 1..=n / 2 {
            let st = dnk_state(n, k, Complex64::ZERO, Complex64::new(1.0, 0.0)).unwrap();
            for (r, coeff) in st.dicke_coeffs().iter().enumerate() {
                let want = if r == k {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::ZERO
                };
                assert_eq!(*coeff, want, "n={n} k={k} r={r}");
            }
        }
    }
}

/// Independent partition counter: dynamic program over the largest part.
fn partition_count_dp(n: usize) -> usize {
    let mut table = vec![vec![0usize; n + 1]; n + 1];
    for row in table.iter_mut() {
        row[0] = 1;
    }
    for max_part in 1..=n {
        for total in 1..=n {
            table[max_part][total] = table[max_part - 1][total]
                + if total >= max_part {
                    table[max_part][total - max_part]
                } else {
                    0
                };
        }
    }
    table[n][n]
}

#[test]
fn slocc_counts_sum_to_total_partitions() {
    use wtangle_core::symstate::partition_count;
    for n in 1..=20usize {
        let total: usize = (1..=n).map(|r| partition_count(n, r).unwrap()).sum();
        assert_eq!(total, partition_count_dp(n), "n={n}");
    }
    // Every enumerated configuration is a proper partition.
    for r in 1..=9usize {
        for config in enumerate_slocc_configs(9, r).unwrap() {
            assert_eq!(config.total_qubits(), 9);
            assert_eq!(config.distinct_spinors(), r);
            assert!(config.parts().windows(2).all(|w| w[0] >= w[1]));
        }
    }
}

#[test]
fn every_pair_marginal_matches_the_closed_form_over_the_grid() {
    use wtangle_core::densmat::{closed_form_rho1, closed_form_rho2};
    let mut worst = 0.0f64;
    for n in 3..=6usize {
        for i in 1..=25 {
            let theta = i as f64 * TAU / 25.0;
            let psi = wclass_state(n, theta).unwrap().to_full_vector().unwrap();
            let want2 = closed_form_rho2(n, theta).unwrap();
            let want1 = closed_form_rho1(n, theta).unwrap();
            for a in 1..=n {
                let dev1 = (partial_trace(&psi, &[a]).unwrap().matrix() - want1.matrix())
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert!(dev1 <= 1e-12, "rho1 n={n} q={a} theta={theta}: {dev1:e}");
                worst = worst.max(dev1);
                for b in (a + 1)..=n {
                    let dev2 = (partial_trace(&psi, &[a, b]).unwrap().matrix() - want2.matrix())
                        .iter()
                        .map(|z| z.norm())
                        .fold(0.0, f64::max);
                    assert!(dev2 <= 1e-12, "rho2 n={n} pair ({a},{b}): {dev2:e}");
                    worst = worst.max(dev2);
                }
            }
        }
    }
    assert!(worst <= 1e-12);
}

#[test]
fn monogamy_equality_holds_on_both_routes() {
    use wtangle_core::densmat::{closed_form_rho1, closed_form_rho2};
    use wtangle_core::tangle::concurrence_1_rest;

    for n in 3..=10usize {
        for i in 1..=50 {
            let theta = i as f64 * TAU / 50.0;
            // Closed-form route.
            let c2 = concurrence_2q(&closed_form_rho2(n, theta).unwrap()).unwrap();
            let c1 = concurrence_1_rest(&closed_form_rho1(n, theta).unwrap()).unwrap();
            let gap = ((n - 1) as f64 * c2 * c2 - c1 * c1).abs();
            assert!(gap <= 1e-10, "closed route n={n} theta={theta}: {gap}");

            // Traced route.
            let psi = wclass_state(n, theta).unwrap().to_full_vector().unwrap();
            let c2 = concurrence_2q(&partial_trace(&psi, &[1, 2]).unwrap()).unwrap();
            let c1 = concurrence_1_rest(&partial_trace(&psi, &[1]).unwrap()).unwrap();
            let gap = ((n - 1) as f64 * c2 * c2 - c1 * c1).abs();
            assert!(gap <= 1e-10, "traced route n={n} theta={theta}: {gap}");
        }
    }
}

#[test]
fn ckw_inequality_on_seeded_random_states() {
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    for n in [3usize, 4, 5] {
        for _ in 0..100 {
            let psi = random_pure_state(&mut rng, n);
            let tangle = concurrence_tangle_vec(&psi, 1).unwrap();
            assert!(tangle >= -1e-9, "n={n}: tangle {tangle}");
        }
    }
}

#[test]
fn doubly_excited_states_only_go_through_the_generic_trace() {
    // k = 2 populates the doubly-excited corner of the pair marginal, which
    // no closed form covers; the generic partial trace must handle it.
    let inv = (0.5f64).sqrt();
    let st = dnk_state(4, 2, Complex64::new(inv, 0.0), Complex64::new(inv, 0.0)).unwrap();
    let psi = st.to_full_vector().unwrap();
    let rho2 = partial_trace(&psi, &[1, 2]).unwrap();
    assert!(rho2.entry(3, 3).re > 1e-3, "corner must be populated");
    assert!((rho2.trace_real() - 1.0).abs() <= 1e-12);
    let tangle = concurrence_tangle_vec(&psi, 1).unwrap();
    assert!(tangle >= -1e-9, "monogamy must still hold: {tangle}");
}

#[test]
fn negativity_tangle_dominates_concurrence_tangle() {
    use wtangle_core::tangle::negativity_tangle_focus;
    for n in 3..=8usize {
        for i in 1..=25 {
            let theta = i as f64 * TAU / 25.0;
            let psi = wclass_state(n, theta).unwrap().to_full_vector().unwrap();
            let neg = negativity_tangle_focus(&psi, 1).unwrap();
            let conc = concurrence_tangle_vec(&psi, 1).unwrap();
            assert!(neg >= conc - 1e-10, "n={n} theta={theta}: {neg} < {conc}");
            assert!(neg >= -1e-10, "n={n} theta={theta}: tangle {neg}");
        }
    }
}

#[test]
fn negativity_never_exceeds_concurrence_on_wclass_marginals() {
    use wtangle_core::densmat::closed_form_rho2;
    for n in 3..=12usize {
        for i in 1..=50 {
            let theta = i as f64 * TAU / 50.0;
            let rho = closed_form_rho2(n, theta).unwrap();
            assert!(
                negativity_2q(&rho).unwrap() <= concurrence_2q(&rho).unwrap() + 1e-10,
                "n={n} theta={theta}"
            );
        }
    }
}

fn random_hermitian_4x4(seed: u64) -> HermitianMatrix {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let raw = DMatrix::from_fn(4, 4, |_, _| {
        Complex64::new(
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        )
    });
    let herm = (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0);
    HermitianMatrix::from_matrix(herm).unwrap()
}

fn random_two_qubit_mixture(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut mat = DMatrix::<Complex64>::zeros(4, 4);
    let weights = [0.6, 0.4];
    for w in weights {
        let mut amps: Vec<Complex64> = (0..4)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        mat += DMatrix::from_fn(4, 4, |i, j| amps[i] * amps[j].conj() * w);
    }
    DensityMatrix::from_matrix(mat).unwrap()
}

proptest! {
    #[test]
    fn partial_transpose_is_an_exact_involution(seed in 0u64..256) {
        let m = random_hermitian_4x4(seed);
        let once = partial_transpose_herm(&m).unwrap();
        let twice = partial_transpose_herm(&once).unwrap();
        prop_assert_eq!(twice.matrix(), m.matrix());
        prop_assert_eq!(once.trace_real(), m.trace_real());
    }

    #[test]
    fn trace_norm_dominates_trace(seed in 0u64..256) {
        let m = random_hermitian_4x4(seed);
        let tn = trace_norm(&m);
        prop_assert!(tn >= m.trace_real().abs() - 1e-12);
    }

    #[test]
    fn spin_flip_is_involutive_and_trace_preserving(seed in 0u64..128) {
        let rho = random_two_qubit_mixture(seed);
        let once = spin_flip(&rho).unwrap();
        prop_assert!((once.trace_real() - 1.0).abs() <= 1e-12);
        let back = spin_flip(&DensityMatrix::from_matrix(once.matrix().clone()).unwrap()).unwrap();
        let dev = (back.matrix() - rho.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(dev <= 1e-14);
    }

    #[test]
    fn trace_norm_equals_trace_iff_psd(seed in 0u64..128) {
        let rho = random_two_qubit_mixture(seed);
        let as_herm = HermitianMatrix::from_matrix(rho.matrix().clone()).unwrap();
        prop_assert!((trace_norm(&as_herm) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn canonicalized_theta_reproduces_magnitudes(t in 1e-3..(PI - 1e-3), phase_a in 0.0..TAU, phase_b in 0.0..TAU) {
        let a = Complex64::from_polar((t / 2.0).cos(), phase_a);
        let b = Complex64::from_polar((t / 2.0).sin(), phase_b);
        let theta = canonicalize_ab(a, b);
        prop_assert!((0.0..=PI).contains(&theta));
        let st = wclass_state(4, theta).unwrap();
        prop_assert!((st.dicke_coeffs()[0].norm() - a.norm()).abs() <= 1e-14);
        prop_assert!((st.dicke_coeffs()[1].norm() - b.norm()).abs() <= 1e-14);
    }

    #[test]
    fn pairwise_negativity_matches_partial_transpose_route(n in 3usize..8, i in 1usize..32) {
        let theta = i as f64 * TAU / 32.0;
        let psi = wclass_state(n, theta).unwrap().to_full_vector().unwrap();
        let rho = partial_trace(&psi, &[1, 2]).unwrap();
        let neg = negativity_2q(&rho).unwrap();
        let direct = trace_norm(&partial_transpose(&rho).unwrap()) - 1.0;
        prop_assert!((neg - direct.max(0.0)).abs() <= 1e-14);
    }
}
