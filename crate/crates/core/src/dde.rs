//! Fixed-step method-of-steps integrator for scalar linear
//! constant-coefficient delay differential equations
//!
//! ```text
//!     dC/dt = -gamma C(t) + sign * sum_j alpha_j C(t - tau_j) Theta(t - tau_j)
//! ```
//!
//! with `C(0)` given and `C(t) = 0` for `t < 0` (vacuum history). The Dicke
//! amplitudes of the two-atom problem obey exactly this form, one equation
//! per symmetry branch.
//!
//! The integrator advances with the classical 4th-order one-step scheme on a
//! fixed grid; delayed values are read from cubic-Hermite dense output of the
//! already-computed history. Delays are generically incommensurate, so the
//! grid is snapped to every sum of up to four delays inside the horizon: the
//! solution loses one derivative of smoothness per delay generation, and
//! beyond the fourth generation the remaining discontinuities are too smooth
//! to affect a 4th-order step.

use num_complex::Complex64;
use thiserror::Error;

use crate::mode_physics::ModeParams;
use crate::FOLD_THRESHOLD;

/// Hard cap on the total number of integration steps.
const MAX_STEPS: usize = 20_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum DdeError {
    #[error("step size underflow: horizon {t_max} needs more than {MAX_STEPS} steps of {h}")]
    StepUnderflow { t_max: f64, h: f64 },
    #[error("solution became non-finite at t = {t}")]
    NonFinite { t: f64 },
    #[error("t = {t} is outside the solved range [0, {t_max}]")]
    OutOfRange { t: f64, t_max: f64 },
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
}

/// Which Dicke amplitude the equation describes. The delayed term enters with
/// a minus sign for the symmetric branch and a plus sign for the
/// antisymmetric one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DickeBranch {
    Symmetric,
    Antisymmetric,
}

impl DickeBranch {
    pub fn sign(self) -> f64 {
        match self {
            DickeBranch::Symmetric => -1.0,
            DickeBranch::Antisymmetric => 1.0,
        }
    }
}

/// One delayed feedback term `alpha · C(t − tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayTerm {
    /// Complex coefficient, `alpha_j = gamma_j e^{i phi_j}` for mode `j`.
    pub alpha: Complex64,
    /// Delay `tau_j = d/v_j >= 0`.
    pub tau: f64,
}

/// A scalar linear DDE with multiple delays and zero pre-history.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayProblem {
    /// Local decay coefficient `gamma >= 0` (the total rate `sum_j gamma_j`).
    pub gamma: f64,
    pub terms: Vec<DelayTerm>,
    pub branch: DickeBranch,
    /// Amplitude at `t = 0`.
    pub initial: Complex64,
}

impl DelayProblem {
    /// Builds the Dicke-branch equation from resolved mode parameters:
    /// `gamma = sum_j gamma_j`, `alpha_j = gamma_j e^{i phi_j}`, `tau_j = d/v_j`.
    pub fn from_modes(modes: &[ModeParams], branch: DickeBranch, initial: Complex64) -> Self {
        let gamma = modes.iter().map(|p| p.gamma).sum();
        let terms = modes
            .iter()
            .map(|p| DelayTerm {
                alpha: Complex64::from_polar(p.gamma, p.phi),
                tau: p.tau,
            })
            .collect();
        Self { gamma, terms, branch, initial }
    }
}

/// Step-size control for [`solve_dde`].
///
/// The step is `h = min(tau_min/step_fraction_tau, 1/(gamma·step_fraction_gamma),
/// t_max/1000, max_step)`, applying only the constraints that exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub step_fraction_tau: u32,
    pub step_fraction_gamma: u32,
    /// Integration horizon.
    pub t_max: f64,
    /// Optional hard upper bound on the step, mainly for convergence studies.
    pub max_step: Option<f64>,
    /// When set, [`solve_dde`] follows up with a half-step solve and rejects
    /// the result if the two disagree by more than `1e-6·|C(0)|`.
    pub richardson_check: bool,
}

impl SolverOptions {
    pub fn for_horizon(t_max: f64) -> Self {
        Self {
            step_fraction_tau: 64,
            step_fraction_gamma: 200,
            t_max,
            max_step: None,
            richardson_check: false,
        }
    }

    fn validate(&self) -> Result<(), DdeError> {
        if self.step_fraction_tau < 8 || self.step_fraction_gamma < 8 {
            return Err(DdeError::InvalidOptions(format!(
                "step fractions must be >= 8 (got tau: {}, gamma: {})",
                self.step_fraction_tau, self.step_fraction_gamma
            )));
        }
        if !(self.t_max >= 0.0) || !self.t_max.is_finite() {
            return Err(DdeError::InvalidOptions(format!(
                "t_max must be finite and >= 0 (got {})",
                self.t_max
            )));
        }
        Ok(())
    }
}

/// Solved trajectory with cubic-Hermite dense output.
///
/// Nodes at delay-onset breakpoints are stored twice, once with the
/// left-sided and once with the right-sided derivative, so interpolation on
/// either side uses the correct one-sided slope.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    values: Vec<Complex64>,
    derivs: Vec<Complex64>,
    t_max: f64,
    initial: Complex64,
}

impl Trajectory {
    /// Dense-output value at `t`. Returns `0` for `t < 0` (the vacuum
    /// pre-history) and an error beyond the solved horizon; exact at nodes.
    pub fn value_at(&self, t: f64) -> Result<Complex64, DdeError> {
        if t < 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if t > self.t_max * (1.0 + 1e-12) {
            return Err(DdeError::OutOfRange { t, t_max: self.t_max });
        }
        let t = t.min(self.t_max);
        Ok(hermite_eval(&self.times, &self.values, &self.derivs, t))
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn initial(&self) -> Complex64 {
        self.initial
    }

    /// Grid times (breakpoints appear twice, with left/right derivatives).
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Dense-output evaluation of a solved trajectory; see [`Trajectory::value_at`].
pub fn evaluate_history(trajectory: &Trajectory, t: f64) -> Result<Complex64, DdeError> {
    trajectory.value_at(t)
}

fn hermite_eval(times: &[f64], values: &[Complex64], derivs: &[Complex64], t: f64) -> Complex64 {
    let idx = times.partition_point(|&x| x <= t);
    if idx == 0 {
        return values[0];
    }
    let i = idx - 1;
    if times[i] == t || idx == times.len() {
        return values[i];
    }
    let (t0, t1) = (times[i], times[idx]);
    let dt = t1 - t0;
    let th = (t - t0) / dt;
    let th2 = th * th;
    let th3 = th2 * th;
    let h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
    let h10 = th3 - 2.0 * th2 + th;
    let h01 = -2.0 * th3 + 3.0 * th2;
    let h11 = th3 - th2;
    values[i] * h00 + derivs[i] * (h10 * dt) + values[idx] * h01 + derivs[idx] * (h11 * dt)
}

/// All sums of 1..=`max_order` delays (with repetition) below `t_max`. These
/// are the points where the solution loses a derivative of smoothness.
fn delay_lattice(taus: &[f64], max_order: usize, t_max: f64, out: &mut Vec<f64>) {
    fn rec(taus: &[f64], start: usize, depth: usize, acc: f64, t_max: f64, out: &mut Vec<f64>) {
        for i in start..taus.len() {
            let s = acc + taus[i];
            if s < t_max {
                out.push(s);
                if depth > 1 {
                    rec(taus, i, depth - 1, s, t_max, out);
                }
            }
        }
    }
    rec(taus, 0, max_order, 0.0, t_max, out);
}

struct Rhs {
    /// Instantaneous coefficient: `-gamma` plus every folded (zero-delay) term.
    mu: Complex64,
    /// Delayed terms with the branch sign premultiplied into the coefficient.
    delayed: Vec<(Complex64, f64)>,
}

impl Rhs {
    fn eval(
        &self,
        active: usize,
        times: &[f64],
        values: &[Complex64],
        derivs: &[Complex64],
        s: f64,
        y: Complex64,
    ) -> Complex64 {
        let mut dy = self.mu * y;
        for &(a, tau) in &self.delayed[..active] {
            let arg = s - tau;
            if arg >= 0.0 {
                dy += a * hermite_eval(times, values, derivs, arg);
            }
        }
        dy
    }
}

/// Integrates `problem` over `[0, t_max]` by the method of steps.
pub fn solve_dde(problem: &DelayProblem, options: &SolverOptions) -> Result<Trajectory, DdeError> {
    options.validate()?;
    let h = base_step(problem, options);
    let traj = solve_with_step(problem, options.t_max, h)?;
    if options.richardson_check && options.t_max > 0.0 {
        let fine = solve_with_step(problem, options.t_max, h / 2.0)?;
        let dev = max_deviation(&traj, &fine, 1001);
        if dev > 1e-6 * problem.initial.norm().max(1e-300) {
            return Err(DdeError::InvalidOptions(format!(
                "step-halving check failed: deviation {dev:.3e} at h = {h:.3e}"
            )));
        }
    }
    Ok(traj)
}

/// The step implied by [`SolverOptions`] for this problem.
pub fn base_step(problem: &DelayProblem, options: &SolverOptions) -> f64 {
    let mut h = f64::INFINITY;
    let tau_min = problem
        .terms
        .iter()
        .map(|t| t.tau)
        .filter(|&t| t >= FOLD_THRESHOLD)
        .fold(f64::INFINITY, f64::min);
    if tau_min.is_finite() {
        h = h.min(tau_min / options.step_fraction_tau as f64);
    }
    if problem.gamma > 0.0 {
        h = h.min(1.0 / (problem.gamma * options.step_fraction_gamma as f64));
    }
    if options.t_max > 0.0 {
        h = h.min(options.t_max / 1000.0);
    }
    if let Some(cap) = options.max_step {
        h = h.min(cap);
    }
    if !h.is_finite() {
        // no rates, no delays, no horizon
        h = 1.0;
    }
    h
}

fn solve_with_step(problem: &DelayProblem, t_max: f64, h: f64) -> Result<Trajectory, DdeError> {
    let sign = problem.branch.sign();
    let mut mu = Complex64::new(-problem.gamma, 0.0);
    let mut delayed: Vec<(Complex64, f64)> = Vec::new();
    for term in &problem.terms {
        if term.tau < FOLD_THRESHOLD {
            mu += term.alpha * sign;
        } else {
            delayed.push((term.alpha * sign, term.tau));
        }
    }
    delayed.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());

    if t_max / h > MAX_STEPS as f64 {
        return Err(DdeError::StepUnderflow { t_max, h });
    }

    // Breakpoints: every delay-lattice point up to generation four, plus the
    // horizon. Points closer together than a sliver of a step are merged.
    let taus: Vec<f64> = delayed.iter().map(|d| d.1).collect();
    let mut breaks: Vec<f64> = Vec::new();
    delay_lattice(&taus, 4, t_max, &mut breaks);
    breaks.push(t_max);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let merge_tol = h * 1e-6;
    breaks.dedup_by(|a, b| (*a - *b).abs() <= merge_tol);
    // the horizon itself must survive merging
    *breaks.last_mut().unwrap() = t_max;

    let n_nodes_est = (t_max / h).ceil() as usize + breaks.len() + 2;
    let mut times: Vec<f64> = Vec::with_capacity(n_nodes_est);
    let mut values: Vec<Complex64> = Vec::with_capacity(n_nodes_est);
    let mut derivs: Vec<Complex64> = Vec::with_capacity(n_nodes_est);

    let rhs = Rhs { mu, delayed };
    let mut y = problem.initial;
    let mut seg_start = 0.0;

    // active terms for the first segment: only folded-scale delays (none,
    // since those were folded); terms become active at their breakpoint
    // a term activates at the breakpoint carrying (or absorbing) its delay
    let active_tol = (2.0 * merge_tol).max(1e-15);
    let active_count = |left: f64| {
        rhs.delayed
            .iter()
            .take_while(|&&(_, tau)| tau <= left + active_tol)
            .count()
    };

    let mut active = active_count(0.0);
    let d0 = rhs.eval(active, &times, &values, &derivs, 0.0, y);
    times.push(0.0);
    values.push(y);
    derivs.push(d0);

    if t_max == 0.0 {
        return Ok(Trajectory { times, values, derivs, t_max, initial: problem.initial });
    }

    for &seg_end in &breaks {
        if seg_end <= seg_start {
            continue;
        }
        let new_active = active_count(seg_start);
        if new_active != active || seg_start > 0.0 {
            // duplicate node with the right-sided derivative for this segment
            active = new_active;
            let d = rhs.eval(active, &times, &values, &derivs, seg_start, y);
            times.push(seg_start);
            values.push(y);
            derivs.push(d);
        }
        let span = seg_end - seg_start;
        let n_steps = (span / h).ceil().max(1.0) as usize;
        let hs = span / n_steps as f64;
        for i in 0..n_steps {
            let t0 = seg_start + i as f64 * hs;
            let t1 = if i + 1 == n_steps { seg_end } else { seg_start + (i + 1) as f64 * hs };
            let k1 = rhs.eval(active, &times, &values, &derivs, t0, y);
            let k2 = rhs.eval(active, &times, &values, &derivs, t0 + 0.5 * hs, y + k1 * (0.5 * hs));
            let k3 = rhs.eval(active, &times, &values, &derivs, t0 + 0.5 * hs, y + k2 * (0.5 * hs));
            let k4 = rhs.eval(active, &times, &values, &derivs, t1, y + k3 * hs);
            y += (k1 + (k2 + k3) * 2.0 + k4) * (hs / 6.0);
            if !y.re.is_finite() || !y.im.is_finite() {
                return Err(DdeError::NonFinite { t: t1 });
            }
            let d = rhs.eval(active, &times, &values, &derivs, t1, y);
            times.push(t1);
            values.push(y);
            derivs.push(d);
        }
        seg_start = seg_end;
    }

    Ok(Trajectory { times, values, derivs, t_max, initial: problem.initial })
}

/// Self-convergence estimate: solves at the options' step and at half that
/// step and reports the maximum pointwise deviation on a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub h: f64,
    pub max_deviation: f64,
    pub samples: usize,
}

pub fn convergence_report(
    problem: &DelayProblem,
    options: &SolverOptions,
) -> Result<ConvergenceReport, DdeError> {
    options.validate()?;
    if options.t_max <= 0.0 {
        return Ok(ConvergenceReport { h: 0.0, max_deviation: 0.0, samples: 0 });
    }
    let h = base_step(problem, options);
    let coarse = solve_with_step(problem, options.t_max, h)?;
    let fine = solve_with_step(problem, options.t_max, h / 2.0)?;
    let samples = 1001;
    Ok(ConvergenceReport { h, max_deviation: max_deviation(&coarse, &fine, samples), samples })
}

fn max_deviation(a: &Trajectory, b: &Trajectory, samples: usize) -> f64 {
    let t_max = a.t_max().min(b.t_max());
    (0..samples)
        .map(|i| {
            let t = t_max * i as f64 / (samples - 1) as f64;
            (a.value_at(t).unwrap() - b.value_at(t).unwrap()).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_complex::Complex64 as C64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn one(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn pure_exponential_decay() {
        let problem = DelayProblem {
            gamma: 0.03,
            terms: vec![],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(100.0)).unwrap();
        for &t in [0.0, 1.0, 13.7, 50.0, 100.0].iter() {
            let v = traj.value_at(t).unwrap();
            assert_relative_eq!(v.re, (-0.03 * t).exp(), max_relative = 1e-10);
            assert!(v.im.abs() < 1e-12);
        }
    }

    #[test]
    fn folded_pi_phase_freezes_the_amplitude() {
        // symmetric branch, tau -> 0, alpha = gamma e^{i pi}: local coefficient
        // cancels exactly and |C| stays at its initial value
        let gamma = 0.04;
        let problem = DelayProblem {
            gamma,
            terms: vec![DelayTerm { alpha: C64::from_polar(gamma, PI), tau: 0.0 }],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(200.0)).unwrap();
        for &t in [0.0, 50.0, 200.0].iter() {
            assert_relative_eq!(traj.value_at(t).unwrap().norm(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn pre_delay_segment_is_a_bare_exponential() {
        let gamma = 0.5;
        let tau = 2.0;
        let problem = DelayProblem {
            gamma,
            terms: vec![DelayTerm { alpha: C64::from_polar(gamma, 0.7), tau }],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(10.0)).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=200 {
            let t = tau * i as f64 / 200.0;
            let v = traj.value_at(t).unwrap();
            assert_relative_eq!(v.re, (-gamma * t).exp(), max_relative = 1e-10);
            // strictly decreasing envelope before the first delay
            if t < tau {
                assert!(v.norm() < prev);
                prev = v.norm();
            }
        }
        // the value at t = tau is the left limit (the amplitude is continuous)
        assert_relative_eq!(
            traj.value_at(tau).unwrap().re,
            (-gamma * tau).exp(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn history_conventions() {
        let problem = DelayProblem {
            gamma: 0.1,
            terms: vec![],
            branch: DickeBranch::Antisymmetric,
            initial: one(2.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(5.0)).unwrap();
        assert_eq!(traj.value_at(-1.0).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(traj.value_at(0.0).unwrap(), one(2.0));
        assert!(matches!(traj.value_at(5.1), Err(DdeError::OutOfRange { .. })));
        // exact at an interior node
        let i = traj.times().len() / 2;
        let (tn, vn) = (traj.times()[i], traj.values()[i]);
        assert_eq!(traj.value_at(tn).unwrap(), vn);
    }

    #[test]
    fn dense_output_midpoints_track_the_exponential() {
        let gamma = 1.0;
        let problem = DelayProblem {
            gamma,
            terms: vec![],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(3.0)).unwrap();
        for i in 0..traj.times().len() - 1 {
            let t = 0.5 * (traj.times()[i] + traj.times()[i + 1]);
            let v = traj.value_at(t).unwrap();
            assert_relative_eq!(v.re, (-gamma * t).exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn convergence_ratio_is_fourth_order() {
        let problem = DelayProblem {
            gamma: 1.0,
            terms: vec![],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        // horizon long enough that the t_max/1000 cap stays loose and the
        // steps are coarse enough for truncation error to dwarf roundoff
        let mut opts = SolverOptions::for_horizon(125.0);
        opts.step_fraction_gamma = 8;
        let r1 = convergence_report(&problem, &opts).unwrap();
        opts.step_fraction_gamma = 16;
        let r2 = convergence_report(&problem, &opts).unwrap();
        let ratio = r1.max_deviation / r2.max_deviation;
        assert!((12.0..20.0).contains(&ratio), "ratio = {ratio}");
    }

    #[test]
    fn convergence_at_defaults_is_tight() {
        // single mode, gamma*tau ~ 1
        let problem = DelayProblem {
            gamma: 1.0,
            terms: vec![DelayTerm { alpha: C64::from_polar(1.0, 0.3), tau: 1.0 }],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let r = convergence_report(&problem, &SolverOptions::for_horizon(8.0)).unwrap();
        assert!(r.max_deviation < 1e-8, "deviation = {}", r.max_deviation);
    }

    #[test]
    fn zero_horizon_report_is_empty() {
        let problem = DelayProblem {
            gamma: 1.0,
            terms: vec![],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let r = convergence_report(&problem, &SolverOptions::for_horizon(0.0)).unwrap();
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.samples, 0);
    }

    #[test]
    fn step_underflow_is_reported() {
        let problem = DelayProblem {
            gamma: 1.0,
            terms: vec![DelayTerm { alpha: one(1.0), tau: 1e-10 }],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        assert!(matches!(
            solve_dde(&problem, &SolverOptions::for_horizon(1000.0)),
            Err(DdeError::StepUnderflow { .. })
        ));
    }

    #[test]
    fn rejects_bad_options() {
        let problem = DelayProblem {
            gamma: 1.0,
            terms: vec![],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let mut opts = SolverOptions::for_horizon(1.0);
        opts.step_fraction_tau = 4;
        assert!(matches!(solve_dde(&problem, &opts), Err(DdeError::InvalidOptions(_))));
    }

    #[test]
    fn single_excitation_bound_on_a_delayed_problem() {
        let gamma = 0.6;
        let problem = DelayProblem {
            gamma,
            terms: vec![DelayTerm { alpha: C64::from_polar(gamma, PI), tau: 1.5 }],
            branch: DickeBranch::Symmetric,
            initial: one(1.0),
        };
        let traj = solve_dde(&problem, &SolverOptions::for_horizon(30.0)).unwrap();
        assert!(traj.max_abs() <= 1.0 + 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn linearity_and_conjugation(
            gamma in 0.05f64..2.0,
            gt in 0.05f64..4.0,
            phi in 0.0f64..(4.0 * PI),
            re0 in -1.0f64..1.0,
            im0 in -1.0f64..1.0,
        ) {
            let tau = gt / gamma;
            let initial = C64::new(re0, im0);
            prop_assume!(initial.norm() > 1e-3);
            let terms = vec![DelayTerm { alpha: C64::from_polar(gamma, phi), tau }];
            let problem = DelayProblem {
                gamma, terms: terms.clone(),
                branch: DickeBranch::Symmetric, initial,
            };
            let opts = SolverOptions::for_horizon(3.0 * tau);
            let base = solve_dde(&problem, &opts).unwrap();

            let doubled = solve_dde(
                &DelayProblem { initial: initial * 2.0, ..problem.clone() }, &opts).unwrap();
            let conj = solve_dde(&DelayProblem {
                gamma,
                terms: vec![DelayTerm { alpha: terms[0].alpha.conj(), tau }],
                branch: DickeBranch::Symmetric,
                initial: initial.conj(),
            }, &opts).unwrap();

            for i in 0..=40 {
                let t = 3.0 * tau * i as f64 / 40.0;
                let v = base.value_at(t).unwrap();
                prop_assert!((doubled.value_at(t).unwrap() - v * 2.0).norm() < 1e-12);
                prop_assert!((conj.value_at(t).unwrap() - v.conj()).norm() < 1e-12);
            }
            prop_assert!(base.max_abs() <= initial.norm() * (1.0 + 1e-9));
        }
    }
}
