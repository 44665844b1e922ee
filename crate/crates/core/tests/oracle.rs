//! Randomized cross-validation between the integrator and the series
//! kernels, plus a direct equation-residual check of the series.

use num_complex::Complex64;
use proptest::prelude::*;

use wgqed::dde::{solve_dde, DelayProblem, DelayTerm, DickeBranch, SolverOptions};
use wgqed::series::{
    double_series_two_mode, single_mode_series, BinomialConvention,
    double_series_two_mode_with, SeriesParams,
};

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn branch_strategy() -> impl Strategy<Value = DickeBranch> {
    prop_oneof![Just(DickeBranch::Symmetric), Just(DickeBranch::Antisymmetric)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn single_mode_series_matches_the_integrator(
        gamma_tau in 0.01f64..10.0,
        phi in 0.0f64..(4.0 * std::f64::consts::PI),
        branch in branch_strategy(),
    ) {
        let tau = 1.0;
        let gamma = gamma_tau / tau;
        let t_max = (10.0 / gamma).min(100.0 * tau);
        let problem = DelayProblem {
            gamma,
            terms: vec![DelayTerm { alpha: Complex64::from_polar(gamma, phi), tau }],
            branch,
            initial: one(),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(t_max)).unwrap();
        let params = SeriesParams {
            initial: one(),
            gamma_total: gamma,
            alphas: vec![Complex64::from_polar(gamma, phi)],
            taus: vec![tau],
            branch,
        };
        for i in 0..=200 {
            let t = t_max * i as f64 / 200.0;
            let a = traj.value_at(t).unwrap();
            let b = single_mode_series(&params, t).unwrap().value;
            prop_assert!((a - b).norm() < 1e-6, "t={t}: dde {a}, series {b}");
        }
    }

    #[test]
    fn two_mode_series_matches_the_integrator(
        gamma1_tau in 0.01f64..10.0,
        gamma2_tau in 0.01f64..10.0,
        phi1 in 0.0f64..(4.0 * std::f64::consts::PI),
        phi2 in 0.0f64..(4.0 * std::f64::consts::PI),
        tau_ratio in 1.05f64..3.0,
        branch in branch_strategy(),
    ) {
        let tau1 = 1.0;
        let tau2 = tau_ratio * tau1;
        let gamma1 = gamma1_tau / tau1;
        let gamma2 = gamma2_tau / tau2;
        let gamma = gamma1 + gamma2;
        let t_max = (10.0 / gamma).min(100.0 * tau1);
        let alphas = vec![
            Complex64::from_polar(gamma1, phi1),
            Complex64::from_polar(gamma2, phi2),
        ];
        let problem = DelayProblem {
            gamma,
            terms: vec![
                DelayTerm { alpha: alphas[0], tau: tau1 },
                DelayTerm { alpha: alphas[1], tau: tau2 },
            ],
            branch,
            initial: one(),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(t_max)).unwrap();
        let params = SeriesParams { initial: one(), gamma_total: gamma, alphas, taus: vec![tau1, tau2], branch };
        for i in 0..=200 {
            let t = t_max * i as f64 / 200.0;
            let a = traj.value_at(t).unwrap();
            let b = double_series_two_mode(&params, t).unwrap().value;
            prop_assert!((a - b).norm() < 1e-6, "t={t}: dde {a}, series {b}");
        }
    }

    /// Arbiter independent of the integrator: the series must satisfy the
    /// delay equation itself under numerical differentiation.
    #[test]
    fn two_mode_series_satisfies_its_equation(
        gamma1 in 0.1f64..1.5,
        gamma2 in 0.1f64..1.5,
        phi1 in 0.0f64..(4.0 * std::f64::consts::PI),
        phi2 in 0.0f64..(4.0 * std::f64::consts::PI),
        branch in branch_strategy(),
    ) {
        let (tau1, tau2) = (1.0, 1.6180339887);
        let gamma = gamma1 + gamma2;
        let params = SeriesParams {
            initial: one(),
            gamma_total: gamma,
            alphas: vec![
                Complex64::from_polar(gamma1, phi1),
                Complex64::from_polar(gamma2, phi2),
            ],
            taus: vec![tau1, tau2],
            branch,
        };
        let eval = |t: f64| {
            if t <= 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                double_series_two_mode_with(&params, t, BinomialConvention::Standard)
                    .unwrap()
                    .value
            }
        };
        let h = 1e-4;
        // probe points chosen at least 10h away from every lattice kink
        for &t in &[0.7, 2.3, 3.8, 5.31] {
            let deriv = (-eval(t + 2.0 * h) + eval(t + h) * 8.0 - eval(t - h) * 8.0
                + eval(t - 2.0 * h))
                / (12.0 * h);
            let rhs = -gamma * eval(t)
                + (params.alphas[0] * eval(t - tau1) + params.alphas[1] * eval(t - tau2))
                    * branch.sign();
            let residual = (deriv - rhs).norm();
            prop_assert!(residual < 1e-6 * gamma.max(1.0), "t={t}: residual {residual:.3e}");
        }
    }
}
