mod common;

use std::f64::consts::PI;

use common::{hermitian, hermitian_from_parts, jacobi_eigenvalues};
use morse_vqe::matrix::{ComplexMatrix, HermitianMatrix, C64};
use morse_vqe::vqe::{
    ansatz_state, energy_expectation, vqe_minimize, AnsatzConfig, Method, OptimizerSpec,
    ParameterVector,
};
use proptest::prelude::*;

fn energy(h: &HermitianMatrix, cfg: &AnsatzConfig, angles: &[f64]) -> f64 {
    let params = ParameterVector::new(angles.to_vec()).unwrap();
    energy_expectation(h, &ansatz_state(cfg, &params).unwrap()).unwrap()
}

fn config() -> impl Strategy<Value = AnsatzConfig> {
    (1usize..=4, 0usize..=3).prop_map(|(n, d)| AnsatzConfig::new(n, d).unwrap())
}

fn angles(cfg: AnsatzConfig) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-PI..PI, cfg.parameter_count())
}

#[test]
fn zero_angles_give_all_zero_state() {
    for (n, d) in [(1, 0), (3, 2), (5, 1)] {
        let cfg = AnsatzConfig::new(n, d).unwrap();
        let psi = ansatz_state(&cfg, &ParameterVector::zeros(cfg.parameter_count())).unwrap();
        assert_eq!(psi.amplitudes()[0], C64::new(1.0, 0.0));
        assert!(psi.amplitudes()[1..].iter().all(|z| z.norm() == 0.0));
    }
}

#[test]
fn parameter_count_rule() {
    for n in 1..=8 {
        for d in 0..=4 {
            assert_eq!(AnsatzConfig::new(n, d).unwrap().parameter_count(), n * (d + 1));
        }
    }
}

#[test]
fn wrong_parameter_count_rejected() {
    let cfg = AnsatzConfig::new(2, 1).unwrap();
    assert!(ansatz_state(&cfg, &ParameterVector::zeros(3)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ansatz_preserves_norm((cfg, theta) in config().prop_flat_map(|c| (Just(c), angles(c)))) {
        let psi = ansatz_state(&cfg, &ParameterVector::new(theta).unwrap()).unwrap();
        let norm: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        prop_assert!(psi.amplitudes().iter().all(|z| z.im == 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn parameter_shift_matches_finite_differences(
        (cfg, theta, h) in config().prop_flat_map(|c| (Just(c), angles(c), hermitian(c.dim())))
    ) {
        let step = 1e-5;
        for k in 0..theta.len() {
            let shifted = |delta: f64| {
                let mut t = theta.clone();
                t[k] += delta;
                energy(&h, &cfg, &t)
            };
            let shift = (shifted(PI / 2.0) - shifted(-PI / 2.0)) / 2.0;
            let fd = (shifted(step) - shifted(-step)) / (2.0 * step);
            prop_assert!((shift - fd).abs() <= 1e-8, "angle {}: {} vs {}", k, shift, fd);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn variational_bound_holds(
        h in hermitian(8),
        seed in 0u64..1000,
        method in prop::sample::select(Method::ALL.to_vec()),
    ) {
        let cfg = AnsatzConfig::new(3, 2).unwrap();
        let opt = OptimizerSpec::new(method).with_seed(seed).with_max_iterations(60);
        let res = vqe_minimize(&h, &cfg, &opt).unwrap();
        let lambda_min = jacobi_eigenvalues(h.as_matrix())[0];
        prop_assert!(res.energy >= lambda_min - 1e-9);
        let mins = res.running_minimum();
        prop_assert!(mins.windows(2).all(|w| w[1] <= w[0]));
        prop_assert!((res.energy - mins.last().unwrap()).abs() <= 1e-12);
        prop_assert!((energy(&h, &cfg, res.parameters.as_slice()) - res.energy).abs() <= 1e-12);
    }

    #[test]
    fn same_seed_same_trace(seed in 0u64..1000, method in prop::sample::select(Method::ALL.to_vec())) {
        let h = hermitian_from_parts(4, &[0.3, -0.2, 0.5, 0.1, 0.0, 1.0, -0.4, 0.2, 0.0, 0.0, -0.7, 0.6, 0.0, 0.0, 0.0, 0.2], &[0.0; 16]);
        let cfg = AnsatzConfig::new(2, 1).unwrap();
        let opt = OptimizerSpec::new(method).with_seed(seed).with_max_iterations(30);
        let a = vqe_minimize(&h, &cfg, &opt).unwrap();
        let b = vqe_minimize(&h, &cfg, &opt).unwrap();
        prop_assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn reaches_random_real_projector(
        v in prop::collection::vec(-1.0f64..1.0, 4).prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2),
        seed in 0u64..1000,
    ) {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let psi: Vec<f64> = v.iter().map(|x| x / norm).collect();
        let m = ComplexMatrix::from_fn(4, 4, |r, c| C64::new(-psi[r] * psi[c], 0.0));
        let h = HermitianMatrix::new(m).unwrap();
        let cfg = AnsatzConfig::new(2, 1).unwrap();
        let opt = OptimizerSpec::new(Method::QuasiNewtonFd).with_seed(seed).with_restarts(4);
        let res = vqe_minimize(&h, &cfg, &opt).unwrap();
        prop_assert!(res.energy <= -0.99, "{}", res.energy);
    }
}
