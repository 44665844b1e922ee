//! Resolves a [`ScenarioConfig`] into concrete physics, solves it with the
//! requested methods, and cross-validates them.

use num_complex::Complex64;
use thiserror::Error;

use crate::dde::{solve_dde, DdeError, DelayProblem, DickeBranch, SolverOptions};
use crate::entanglement::{bare_from_dicke, concurrence, dicke_from_bare, population, AmplitudePair, DickePair};
use crate::mode_physics::{
    calibrate_coupling, list_coupled_modes, mode_params, AtomPairConfig, ModeParams, PhysicsError,
    WaveguideGeometry,
};
use crate::series::{
    double_series_two_mode, partial_delay_two_mode, single_mode_series, zero_delay_single_mode,
    zero_delay_two_mode, SeriesError, SeriesParams,
};
use crate::FOLD_THRESHOLD;

use super::config::{
    ConfigError, DistanceSpec, InitialState, Method, ModesSpec, ScenarioConfig, TimeSpec,
};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Dde(#[from] DdeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("no coupled mode propagates at omega_A = {omega_a}")]
    NoPropagatingModes { omega_a: f64 },
    #[error("series oracle undefined for {modes} modes (closed forms exist for 1 or 2)")]
    SeriesUnavailable { modes: usize },
    #[error("unknown figure preset \"{0}\"")]
    UnknownPreset(String),
    #[error("config has no [sweep] section")]
    NoSweep,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl RunError {
    /// Process exit code contract: 1 config/validation, 2 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Dde(_) | RunError::Series(_) => 2,
            _ => 1,
        }
    }
}

/// A config with every physical quantity made concrete.
#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub geometry: WaveguideGeometry,
    pub omega_a: f64,
    pub d: f64,
    pub coupling_scale: f64,
    pub modes: Vec<ModeParams>,
    /// Total decay rate `gamma = sum_j gamma_j`.
    pub gamma: f64,
    /// Transit delay of the reference (lowest-cutoff) mode.
    pub tau1: f64,
    /// Resonant wavelength of the reference mode.
    pub lambda1: f64,
    pub initial: DickePair,
    pub t_max: f64,
    pub samples: usize,
    pub solver: SolverOptions,
    pub method: Method,
    pub warnings: Vec<String>,
}

impl ResolvedScenario {
    /// The time unit used for the CSV `t_over_tau1` column: `tau_1`, or `1`
    /// when the atoms are co-located (`tau_1 = 0`).
    pub fn time_unit(&self) -> f64 {
        if self.tau1 > 0.0 {
            self.tau1
        } else {
            1.0
        }
    }
}

/// One method's sampled solution on the uniform output grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodTrajectory {
    pub method: &'static str,
    pub times: Vec<f64>,
    pub b1: Vec<Complex64>,
    pub b2: Vec<Complex64>,
    pub population: Vec<f64>,
    pub concurrence: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub resolved: ResolvedScenario,
    pub dde: Option<MethodTrajectory>,
    pub series: Option<MethodTrajectory>,
    /// Max pointwise amplitude deviation between methods; present iff both ran.
    pub max_deviation: Option<f64>,
}

impl RunReport {
    pub fn trajectories(&self) -> impl Iterator<Item = &MethodTrajectory> {
        self.dde.iter().chain(self.series.iter())
    }
}

/// Turns the symbolic config into concrete mode parameters, separation,
/// horizon, and initial Dicke amplitudes.
pub fn resolve(config: &ScenarioConfig) -> Result<ResolvedScenario, RunError> {
    let geometry = config.geometry;
    let omega_a = config.omega.frequency(&geometry);

    let mode_list = match &config.modes {
        ModesSpec::Auto => {
            let list = list_coupled_modes(&geometry, omega_a);
            if list.is_empty() {
                return Err(RunError::NoPropagatingModes { omega_a });
            }
            list
        }
        ModesSpec::Explicit(list) => list.clone(),
    };

    // reference mode: lowest cutoff among the propagating coupled modes,
    // fixing lambda_1 / tau_1 / phi_1 even when the mode set is an explicit
    // subset
    let reference = *list_coupled_modes(&geometry, omega_a)
        .first()
        .ok_or(RunError::NoPropagatingModes { omega_a })?;
    let ref_cutoff = crate::mode_physics::cutoff_frequency(&geometry, reference);
    let k1 = (omega_a * omega_a - ref_cutoff * ref_cutoff).sqrt();
    let lambda1 = 2.0 * std::f64::consts::PI / k1;

    let d = match config.distance {
        DistanceSpec::Length(d) => d,
        DistanceSpec::Lambda1(x) => x * lambda1,
        DistanceSpec::PhaseTarget { n, delta } => {
            (2.0 * std::f64::consts::PI * n as f64 + delta) / k1
        }
    };

    let coupling_scale = calibrate_coupling(config.coupling_d, &geometry, omega_a, reference)?;
    let atoms = AtomPairConfig { omega_a, d, coupling_scale };
    let modes: Vec<ModeParams> = mode_list
        .iter()
        .map(|&m| mode_params(&geometry, &atoms, m))
        .collect::<Result<_, _>>()?;

    let mut warnings = Vec::new();
    for p in &modes {
        if p.near_cutoff(omega_a) {
            warnings.push(format!(
                "{}: omega_A is within {:.1}% of cutoff; the linear dispersion \
                 expansion degrades there",
                p.mode,
                100.0 * p.cutoff_margin(omega_a)
            ));
        }
    }

    let gamma: f64 = modes.iter().map(|p| p.gamma).sum();
    let tau1 = modes[0].tau;
    let t_max = match config.time {
        TimeSpec::Tau1(x) => {
            if tau1 > 0.0 {
                x * tau1
            } else {
                warnings.push(format!(
                    "time.t_max_tau1 given but tau_1 = 0 (d = 0); using {x}/gamma instead"
                ));
                x / gamma
            }
        }
        TimeSpec::GammaInv(x) => x / gamma,
        TimeSpec::Absolute(x) => x,
    };

    let initial = match config.initial {
        InitialState::Symmetric => DickePair {
            cs: Complex64::new(1.0, 0.0),
            ca: Complex64::new(0.0, 0.0),
        },
        InitialState::Antisymmetric => DickePair {
            cs: Complex64::new(0.0, 0.0),
            ca: Complex64::new(1.0, 0.0),
        },
        InitialState::Bare(b1, b2) => dicke_from_bare(AmplitudePair { b1, b2 }),
    };

    let solver = SolverOptions {
        step_fraction_tau: config.solver.step_fraction_tau,
        step_fraction_gamma: config.solver.step_fraction_gamma,
        t_max,
        max_step: None,
        richardson_check: config.solver.richardson_check,
    };

    Ok(ResolvedScenario {
        geometry,
        omega_a,
        d,
        coupling_scale,
        modes,
        gamma,
        tau1,
        lambda1,
        initial,
        t_max,
        samples: config.samples,
        solver,
        method: config.method,
        warnings,
    })
}

fn output_grid(t_max: f64, samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|i| t_max * i as f64 / (samples - 1) as f64)
        .collect()
}

/// Dicke amplitudes of both branches along the grid.
struct BranchValues {
    cs: Vec<Complex64>,
    ca: Vec<Complex64>,
}

fn assemble(method: &'static str, times: Vec<f64>, branches: BranchValues) -> MethodTrajectory {
    let mut b1 = Vec::with_capacity(times.len());
    let mut b2 = Vec::with_capacity(times.len());
    let mut pop = Vec::with_capacity(times.len());
    let mut conc = Vec::with_capacity(times.len());
    for i in 0..times.len() {
        let bare = bare_from_dicke(DickePair { cs: branches.cs[i], ca: branches.ca[i] });
        b1.push(bare.b1);
        b2.push(bare.b2);
        pop.push(population(bare));
        conc.push(concurrence(bare));
    }
    MethodTrajectory { method, times, b1, b2, population: pop, concurrence: conc }
}

fn solve_branches_dde(
    scenario: &ResolvedScenario,
    grid: &[f64],
) -> Result<BranchValues, RunError> {
    let mut out = BranchValues {
        cs: vec![Complex64::new(0.0, 0.0); grid.len()],
        ca: vec![Complex64::new(0.0, 0.0); grid.len()],
    };
    for (branch, amp0, dst) in [
        (DickeBranch::Symmetric, scenario.initial.cs, &mut out.cs),
        (DickeBranch::Antisymmetric, scenario.initial.ca, &mut out.ca),
    ] {
        if amp0.norm() == 0.0 {
            continue; // the branch stays dark: zero history, zero source
        }
        let problem = DelayProblem::from_modes(&scenario.modes, branch, amp0);
        let traj = solve_dde(&problem, &scenario.solver)?;
        for (value, &t) in dst.iter_mut().zip(grid) {
            *value = traj.value_at(t)?;
        }
    }
    Ok(out)
}

fn solve_branches_series(
    scenario: &ResolvedScenario,
    grid: &[f64],
) -> Result<BranchValues, RunError> {
    let mut out = BranchValues {
        cs: vec![Complex64::new(0.0, 0.0); grid.len()],
        ca: vec![Complex64::new(0.0, 0.0); grid.len()],
    };
    let n_modes = scenario.modes.len();
    if n_modes == 0 || n_modes > 2 {
        return Err(RunError::SeriesUnavailable { modes: n_modes });
    }
    let folded = scenario
        .modes
        .iter()
        .filter(|p| p.tau < FOLD_THRESHOLD)
        .count();
    for (branch, amp0, dst) in [
        (DickeBranch::Symmetric, scenario.initial.cs, &mut out.cs),
        (DickeBranch::Antisymmetric, scenario.initial.ca, &mut out.ca),
    ] {
        if amp0.norm() == 0.0 {
            continue;
        }
        let params = SeriesParams::from_modes(&scenario.modes, branch, amp0);
        for (value, &t) in dst.iter_mut().zip(grid) {
            *value = match (n_modes, folded) {
                (1, 1) => zero_delay_single_mode(&params, t)?,
                (1, 0) => single_mode_series(&params, t)?.value,
                (2, 2) => zero_delay_two_mode(&params, t)?,
                (2, 1) => partial_delay_two_mode(&params, t)?.value,
                (2, 0) => double_series_two_mode(&params, t)?.value,
                _ => unreachable!(),
            };
        }
    }
    Ok(out)
}

/// Solves the scenario with every requested method. Pure computation; file
/// output lives in [`super::output`].
pub fn run_scenario(config: &ScenarioConfig) -> Result<RunReport, RunError> {
    let resolved = resolve(config)?;
    run_resolved(resolved)
}

fn run_resolved(resolved: ResolvedScenario) -> Result<RunReport, RunError> {
    let grid = output_grid(resolved.t_max, resolved.samples);
    let dde = if resolved.method.wants_dde() {
        let branches = solve_branches_dde(&resolved, &grid)?;
        Some(assemble("dde", grid.clone(), branches))
    } else {
        None
    };
    let series = if resolved.method.wants_series() {
        let branches = solve_branches_series(&resolved, &grid)?;
        Some(assemble("series", grid.clone(), branches))
    } else {
        None
    };
    let max_deviation = match (&dde, &series) {
        (Some(d), Some(s)) => Some(
            (0..grid.len())
                .map(|i| {
                    let db1 = (d.b1[i] - s.b1[i]).norm();
                    let db2 = (d.b2[i] - s.b2[i]).norm();
                    db1.max(db2)
                })
                .fold(0.0, f64::max),
        ),
        _ => None,
    };
    Ok(RunReport { resolved, dde, series, max_deviation })
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub report: RunReport,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Runs both methods regardless of the config's `method` and reports the
/// worst pointwise disagreement.
pub fn compare_methods(
    config: &ScenarioConfig,
    tolerance: f64,
) -> Result<CompareReport, RunError> {
    let mut resolved = resolve(config)?;
    resolved.method = Method::Both;
    let report = run_resolved(resolved)?;
    let max_deviation = report.max_deviation.expect("both methods ran");
    Ok(CompareReport { max_deviation, tolerance, report })
}
