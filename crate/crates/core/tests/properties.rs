use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use wpd_core::channels::random_unital;
use wpd_core::duality::{
    info_content_i, info_content_s, minus_maximally_mixed, predictability, rank_factor_r,
    visibility,
};
use wpd_core::linalg::{hermitian_eig, hs_norm, partial_trace, tensor_product, trace_norm, HermitianOperator};
use wpd_core::profile::DimensionProfile;
use wpd_core::rng::{derive_seed, rng_from_seed};
use wpd_core::states::{ginibre_mixed, haar_pure, DensityMatrix};

const TOL: f64 = 1e-10;

fn small_dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 1..=3)
}

fn mixed_state() -> impl Strategy<Value = DensityMatrix> {
    (small_dims(), any::<u64>(), 0.0f64..1.0).prop_map(|(dims, seed, r)| {
        let p = DimensionProfile::new(dims).unwrap();
        let n = p.total_dim();
        let rank = 1 + ((r * n as f64) as usize).min(n - 1);
        ginibre_mixed(&p, rank, seed).unwrap()
    })
}

fn random_hermitian(n: usize, seed: u64) -> HermitianOperator {
    let mut rng = rng_from_seed(seed);
    let g = wpd_core::rng::complex_gaussian_matrix(&mut rng, n, n);
    HermitianOperator::from_matrix((&g + g.adjoint()) * Complex64::new(0.5, 0.0)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_preserves_trace(rho in mixed_state(), mask in 1usize..8) {
        let parties = rho.profile().parties();
        let keep: Vec<usize> = (0..parties).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let reduced = partial_trace(rho.op(), rho.profile(), &keep).unwrap();
        prop_assert!((reduced.trace() - 1.0).abs() < TOL);
        prop_assert!(reduced.dim() == rho.profile().dim_of(&keep));
    }

    #[test]
    fn partial_trace_of_product(na in 2usize..=3, nb in 2usize..=4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_hermitian(na, s1);
        let b = random_hermitian(nb, s2);
        let p = DimensionProfile::new(vec![na, nb]).unwrap();
        let ab = tensor_product(&a, &b);
        let got = partial_trace(&ab, &p, &[0]).unwrap();
        let want = a.scale(b.trace());
        prop_assert!(hs_norm(&got.sub(&want).unwrap()) < 1e-9);
    }

    #[test]
    fn information_content_identities(rho in mixed_state()) {
        let s = info_content_s(&rho);
        let pv = predictability(&rho).powi(2) + visibility(&rho).powi(2);
        prop_assert!((s * s - pv).abs() < TOL);
        prop_assert!((s - 2f64.sqrt() * hs_norm(&minus_maximally_mixed(&rho))).abs() < TOL);
    }

    #[test]
    fn sandwich_lower_and_corrected_upper(rho in mixed_state()) {
        let s = info_content_s(&rho);
        let i = info_content_i(&rho).unwrap();
        let mm = DensityMatrix::maximally_mixed(rho.profile().clone());
        let r = rank_factor_r(&rho, &mm).unwrap();
        prop_assert!(s <= i + 1e-9);
        prop_assert!(i <= (2.0 / r).sqrt() * s + 1e-9);
    }

    #[test]
    fn unital_channels_contract_information(rho in mixed_state(), seed in any::<u64>(), k in 1usize..=4) {
        let ch = random_unital(rho.dim(), k, seed).unwrap();
        let out = ch.apply(&rho).unwrap();
        prop_assert!((out.op().trace() - 1.0).abs() < TOL);
        prop_assert!(info_content_i(&out).unwrap() <= info_content_i(&rho).unwrap() + 1e-9);
    }

    #[test]
    fn composite_information_dominates_subsystem(rho in mixed_state()) {
        prop_assume!(rho.profile().parties() >= 2);
        let part = rho.reduce(&[0]).unwrap();
        prop_assert!(info_content_i(&part).unwrap() <= info_content_i(&rho).unwrap() + 1e-9);
    }

    #[test]
    fn trace_norm_dominates_hs_norm(n in 1usize..=8, seed in any::<u64>()) {
        let a = random_hermitian(n, seed);
        let t = trace_norm(&a).unwrap();
        let h = hs_norm(&a);
        prop_assert!(h <= t + 1e-9);
        prop_assert!(t <= (n as f64).sqrt() * h + 1e-9);
    }
}

#[test]
fn eigendecomposition_reconstructs_and_is_orthonormal() {
    let a = random_hermitian(6, 99);
    let eig = hermitian_eig(&a).unwrap();
    let v = &eig.eigenvectors;
    let gram = v.adjoint() * v;
    let eye = DMatrix::<Complex64>::identity(6, 6);
    assert!((gram - eye).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-9);
    let back = eig.reconstruct();
    assert!((back - a.as_matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max) < 1e-9);
    assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn haar_mean_reduced_purity() {
    // E[tr rho_A^2] = (n_A + n_B) / (n_A n_B + 1) = 4/5 for two qubits.
    let p = DimensionProfile::parse("2x2").unwrap();
    let samples = 100_000u64;
    let mean: f64 = (0..samples)
        .map(|i| haar_pure(&p, derive_seed(5, i)).reduce(&[0]).unwrap().purity())
        .sum::<f64>()
        / samples as f64;
    assert!((mean - 0.8).abs() < 0.01, "mean reduced purity {mean}");
}
