//! Closed-form and series solutions of the Dicke-branch delay equations,
//! used as independent oracles for the [`crate::dde`] integrator.
//!
//! For a single delayed mode the amplitude is a finite sum of shifted
//! polynomial-times-exponential kernels, one per round trip of the emitted
//! photon; for two modes the kernels live on the lattice
//! `tau_nk = k tau_1 + (n-k) tau_2`. Terms whose time argument is not yet
//! positive are excluded (causality; the equations carry
//! `Theta(t - tau)` gates).
//!
//! Every term is assembled in log space (`exp(n ln|arg| - ln n! - gamma dt)`
//! with the phase tracked separately) and the terms are combined by pairwise
//! summation: for small `gamma tau` and late times the sums run to hundreds
//! of terms with large alternating intermediates.

use num_complex::Complex64;
use thiserror::Error;

use crate::dde::DickeBranch;
use crate::mode_physics::ModeParams;
use crate::FOLD_THRESHOLD;

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("expected {expected} mode(s), got {got}")]
    ModeCount { expected: usize, got: usize },
    #[error("delay {tau} is below the fold threshold; use the zero-delay closed form")]
    DelayTooSmall { tau: f64 },
    #[error("expected exactly one folded and one resolved delay (taus: {tau1}, {tau2})")]
    FoldMismatch { tau1: f64, tau2: f64 },
}

/// Inputs of the series kernels: initial amplitude, total rate, and the
/// per-mode coefficients `alpha_j = gamma_j e^{i phi_j}` with their delays.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesParams {
    pub initial: Complex64,
    /// Total decay rate `gamma = sum_j gamma_j`.
    pub gamma_total: f64,
    pub alphas: Vec<Complex64>,
    pub taus: Vec<f64>,
    pub branch: DickeBranch,
}

impl SeriesParams {
    pub fn from_modes(modes: &[ModeParams], branch: DickeBranch, initial: Complex64) -> Self {
        Self {
            initial,
            gamma_total: modes.iter().map(|p| p.gamma).sum(),
            alphas: modes.iter().map(|p| Complex64::from_polar(p.gamma, p.phi)).collect(),
            taus: modes.iter().map(|p| p.tau).collect(),
            branch,
        }
    }

    fn expect_modes(&self, n: usize) -> Result<(), SeriesError> {
        if self.alphas.len() != n || self.taus.len() != n {
            return Err(SeriesError::ModeCount { expected: n, got: self.alphas.len().max(self.taus.len()) });
        }
        Ok(())
    }
}

/// A series evaluation together with bookkeeping about the truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms_used: usize,
    pub max_term_magnitude: f64,
}

/// Which coefficient weights the two-mode lattice terms.
///
/// `Standard` is `n!/(k!(n-k)!)`, the unique weight under which the
/// geometric-expansion solution satisfies the two-mode delay equation.
/// `Transposed` is `k!/(n!(n-k)!)`; it is kept only so tests can demonstrate
/// that it leaves a large residual in that equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialConvention {
    Standard,
    Transposed,
}

fn cis(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, phase)
}

/// Pairwise (cascade) summation; deterministic and stable for alternating sums.
fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    match terms.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => terms[0],
        n => pairwise_sum(&terms[..n / 2]) + pairwise_sum(&terms[n / 2..]),
    }
}

/// `ln(n!)` for `n = 0..=n_max`.
fn ln_factorials(n_max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n_max + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for n in 1..=n_max {
        acc += (n as f64).ln();
        table.push(acc);
    }
    table
}

/// Single-mode round-trip series
/// `C(t) = C0 sum_n ((s alpha)^n / n!) (t - n tau)^n e^{-gamma (t - n tau)}`,
/// summed over the finitely many `n` with `t - n tau > 0`.
pub fn single_mode_series(params: &SeriesParams, t: f64) -> Result<SeriesValue, SeriesError> {
    params.expect_modes(1)?;
    let tau = params.taus[0];
    if tau < FOLD_THRESHOLD {
        return Err(SeriesError::DelayTooSmall { tau });
    }
    let a_eff = params.alphas[0] * params.branch.sign();
    let gamma = params.gamma_total;

    let mut terms = Vec::new();
    let mut max_mag = 0.0f64;
    let ln_a = a_eff.norm().ln();
    let arg_a = a_eff.arg();
    let mut ln_fact = 0.0;
    let mut n = 0usize;
    loop {
        let tn = t - n as f64 * tau;
        if n > 0 && tn <= 0.0 {
            break;
        }
        let term = if n == 0 {
            params.initial * (-gamma * t).exp()
        } else {
            ln_fact += (n as f64).ln();
            let log_mag = n as f64 * (ln_a + tn.ln()) - ln_fact - gamma * tn;
            params.initial * log_mag.exp() * cis(n as f64 * arg_a)
        };
        max_mag = max_mag.max(term.norm());
        terms.push(term);
        n += 1;
    }
    Ok(SeriesValue { value: pairwise_sum(&terms), terms_used: terms.len(), max_term_magnitude: max_mag })
}

/// Zero-delay closed form for one mode:
/// `C(t) = C0 exp[(-gamma + s alpha) t]`, i.e. a decay at rate
/// `gamma (1 - s cos phi)` with frequency pull `-s gamma sin phi`.
pub fn zero_delay_single_mode(params: &SeriesParams, t: f64) -> Result<Complex64, SeriesError> {
    params.expect_modes(1)?;
    let rate = Complex64::new(-params.gamma_total, 0.0) + params.alphas[0] * params.branch.sign();
    Ok(params.initial * (rate * t).exp())
}

/// Zero-delay closed form for two modes:
/// `C(t) = C0 exp[-(gamma_1 - s alpha_1) t - (gamma_2 - s alpha_2) t]`.
pub fn zero_delay_two_mode(params: &SeriesParams, t: f64) -> Result<Complex64, SeriesError> {
    params.expect_modes(2)?;
    let s = params.branch.sign();
    let rate =
        Complex64::new(-params.gamma_total, 0.0) + (params.alphas[0] + params.alphas[1]) * s;
    Ok(params.initial * (rate * t).exp())
}

/// Two modes with one delay folded to zero: the folded mode dresses the
/// local rate, the other keeps its round-trip series:
/// `C(t) = C0 sum_n ((s a_d)^n / n!) e^{-(gamma - s a_f)(t - n tau)} (t - n tau)^n`.
///
/// Accepts the folded mode in either slot.
pub fn partial_delay_two_mode(params: &SeriesParams, t: f64) -> Result<SeriesValue, SeriesError> {
    params.expect_modes(2)?;
    let (tau1, tau2) = (params.taus[0], params.taus[1]);
    let (folded, delayed, tau) = if tau1 < FOLD_THRESHOLD && tau2 >= FOLD_THRESHOLD {
        (params.alphas[0], params.alphas[1], tau2)
    } else if tau2 < FOLD_THRESHOLD && tau1 >= FOLD_THRESHOLD {
        (params.alphas[1], params.alphas[0], tau1)
    } else {
        return Err(SeriesError::FoldMismatch { tau1, tau2 });
    };
    let s = params.branch.sign();
    let a_eff = delayed * s;
    // complex dressed rate
    let rate = Complex64::new(params.gamma_total, 0.0) - folded * s;

    let mut terms = Vec::new();
    let mut max_mag = 0.0f64;
    let ln_a = a_eff.norm().ln();
    let arg_a = a_eff.arg();
    let mut ln_fact = 0.0;
    let mut n = 0usize;
    loop {
        let tn = t - n as f64 * tau;
        if n > 0 && tn <= 0.0 {
            break;
        }
        let term = if n == 0 {
            params.initial * (-rate * t).exp()
        } else {
            ln_fact += (n as f64).ln();
            let log_mag = n as f64 * (ln_a + tn.ln()) - ln_fact - rate.re * tn;
            params.initial * log_mag.exp() * cis(n as f64 * arg_a - rate.im * tn)
        };
        max_mag = max_mag.max(term.norm());
        terms.push(term);
        n += 1;
    }
    Ok(SeriesValue { value: pairwise_sum(&terms), terms_used: terms.len(), max_term_magnitude: max_mag })
}

/// Full two-mode lattice series
/// `C(t) = C0 sum_n sum_k binom(n,k) (s alpha_1)^k (s alpha_2)^{n-k}
///          ((t - tau_nk)^n / n!) e^{-gamma (t - tau_nk)}`
/// over lattice points `tau_nk = k tau_1 + (n-k) tau_2 < t`.
pub fn double_series_two_mode(params: &SeriesParams, t: f64) -> Result<SeriesValue, SeriesError> {
    double_series_two_mode_with(params, t, BinomialConvention::Standard)
}

/// Same lattice sum with a selectable coefficient convention; see
/// [`BinomialConvention`].
pub fn double_series_two_mode_with(
    params: &SeriesParams,
    t: f64,
    convention: BinomialConvention,
) -> Result<SeriesValue, SeriesError> {
    params.expect_modes(2)?;
    let (tau1, tau2) = (params.taus[0], params.taus[1]);
    if tau1 < FOLD_THRESHOLD {
        return Err(SeriesError::DelayTooSmall { tau: tau1 });
    }
    if tau2 < FOLD_THRESHOLD {
        return Err(SeriesError::DelayTooSmall { tau: tau2 });
    }
    let s = params.branch.sign();
    let a1 = params.alphas[0] * s;
    let a2 = params.alphas[1] * s;
    let gamma = params.gamma_total;
    let (ln_a1, arg_a1) = (a1.norm().ln(), a1.arg());
    let (ln_a2, arg_a2) = (a2.norm().ln(), a2.arg());

    let tau_min = tau1.min(tau2);
    let n_max = (t / tau_min).floor() as usize;
    let ln_fact = ln_factorials(n_max.max(1));

    let mut terms = Vec::new();
    let mut max_mag = 0.0f64;
    for n in 0..=n_max {
        for k in 0..=n {
            let lattice = k as f64 * tau1 + (n - k) as f64 * tau2;
            let dt = t - lattice;
            let term = if n == 0 {
                params.initial * (-gamma * t).exp()
            } else {
                if dt <= 0.0 {
                    continue;
                }
                let ln_coeff = match convention {
                    BinomialConvention::Standard => {
                        // binom(n,k)/n! = 1/(k!(n-k)!)
                        -ln_fact[k] - ln_fact[n - k]
                    }
                    BinomialConvention::Transposed => {
                        // k!/(n!(n-k)!) divided by the kernel's n!
                        ln_fact[k] - 2.0 * ln_fact[n] - ln_fact[n - k]
                    }
                };
                // 0 * ln 0 must read as 0, not NaN, for decoupled modes
                let pow = |count: usize, ln_v: f64| if count == 0 { 0.0 } else { count as f64 * ln_v };
                let log_mag = ln_coeff
                    + pow(k, ln_a1)
                    + pow(n - k, ln_a2)
                    + n as f64 * dt.ln()
                    - gamma * dt;
                let phase = k as f64 * arg_a1 + (n - k) as f64 * arg_a2;
                params.initial * log_mag.exp() * cis(phase)
            };
            max_mag = max_mag.max(term.norm());
            terms.push(term);
        }
    }
    Ok(SeriesValue { value: pairwise_sum(&terms), terms_used: terms.len(), max_term_magnitude: max_mag })
}
