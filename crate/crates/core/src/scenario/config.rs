//! Scenario configuration: a flat TOML file with dotted sections.
//!
//! ```toml
//! omega_a = "mid(11,31)"     # or an absolute frequency in c/a
//! coupling_d = 0.05          # gamma_1 lambda_1 / v_1
//! initial = "symmetric"      # "antisymmetric" | { b1 = [re, im], b2 = [re, im] }
//! modes = "auto"             # or [[1, 1], [3, 1]]
//! method = "both"            # "dde" | "series" | "both"
//!
//! [geometry]
//! a = 1.0
//! b = 0.5                    # defaults to a/2
//!
//! [distance]                 # exactly one key
//! phase = { n = 2, delta = 3.141592653589793 }   # phi_1 = 2 n pi + delta
//! # d = 1.5                  # in units of a
//! # lambda1 = 10.0           # in units of lambda_1
//!
//! [time]                     # exactly one t_max key
//! t_max_tau1 = 12.0          # horizon in units of tau_1
//! # t_max_gamma = 10.0       # in units of 1/gamma
//! # t_max = 50.0             # absolute, in a/c
//! samples = 2000
//!
//! [solver]
//! step_fraction_tau = 64
//! step_fraction_gamma = 200
//! ```

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::mode_physics::{ModeIndex, WaveguideGeometry};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaSpec {
    /// Transition frequency in units of `c/a`.
    Absolute(f64),
    /// Midpoint of two cutoff frequencies, e.g. `mid(11,31)`.
    Midpoint(ModeIndex, ModeIndex),
}

impl OmegaSpec {
    /// Parses the same forms the config file accepts: a plain number or a
    /// `mid(mn,mn)` tag.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let text = text.trim();
        if let Ok(x) = text.parse::<f64>() {
            if x > 0.0 && x.is_finite() {
                return Ok(OmegaSpec::Absolute(x));
            }
            return Err(ConfigError::Validation(format!(
                "omega_a must be positive and finite (got {x})"
            )));
        }
        parse_omega_tag(text)
    }

    /// Concrete transition frequency for a given geometry.
    pub fn frequency(&self, geom: &WaveguideGeometry) -> f64 {
        match *self {
            OmegaSpec::Absolute(x) => x,
            OmegaSpec::Midpoint(lo, hi) => {
                0.5 * (crate::mode_physics::cutoff_frequency(geom, lo)
                    + crate::mode_physics::cutoff_frequency(geom, hi))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistanceSpec {
    /// Separation in units of `a`.
    Length(f64),
    /// Separation in units of the reference wavelength `lambda_1`.
    Lambda1(f64),
    /// Target propagation phase `phi_1 = 2 n pi + delta`.
    PhaseTarget { n: u32, delta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModesSpec {
    /// Every coupled mode propagating at `omega_a`.
    Auto,
    Explicit(Vec<ModeIndex>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Symmetric,
    Antisymmetric,
    Bare(Complex64, Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dde,
    Series,
    Both,
}

impl Method {
    pub fn wants_dde(self) -> bool {
        matches!(self, Method::Dde | Method::Both)
    }
    pub fn wants_series(self) -> bool {
        matches!(self, Method::Series | Method::Both)
    }
    pub fn label(self) -> &'static str {
        match self {
            Method::Dde => "dde",
            Method::Series => "series",
            Method::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSpec {
    /// Horizon in units of `tau_1`.
    Tau1(f64),
    /// Horizon in units of `1/gamma`.
    GammaInv(f64),
    /// Absolute horizon in `a/c`.
    Absolute(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub step_fraction_tau: u32,
    pub step_fraction_gamma: u32,
    pub richardson_check: bool,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { step_fraction_tau: 64, step_fraction_gamma: 200, richardson_check: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// One of `coupling_d`, `distance.d`, `distance.lambda1`,
    /// `distance.phase.delta`, `distance.phase.n`.
    pub key: String,
    pub values: Vec<f64>,
}

/// A fully validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub geometry: WaveguideGeometry,
    pub omega: OmegaSpec,
    pub coupling_d: f64,
    pub distance: DistanceSpec,
    pub modes: ModesSpec,
    pub initial: InitialState,
    pub method: Method,
    pub time: TimeSpec,
    pub samples: usize,
    pub solver: SolverSettings,
    pub sweep: Option<SweepSpec>,
}

// ---------------------------------------------------------------------------
// raw serde layer

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    geometry: Option<RawGeometry>,
    omega_a: Option<OmegaRaw>,
    coupling_d: Option<f64>,
    distance: Option<RawDistance>,
    modes: Option<ModesRaw>,
    initial: Option<InitialRaw>,
    method: Option<String>,
    time: Option<RawTime>,
    solver: Option<RawSolver>,
    sweep: Option<RawSweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    a: Option<f64>,
    b: Option<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OmegaRaw {
    Number(f64),
    Tag(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDistance {
    d: Option<f64>,
    lambda1: Option<f64>,
    phase: Option<RawPhase>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPhase {
    n: u32,
    delta: Option<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModesRaw {
    Tag(String),
    List(Vec<[u32; 2]>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InitialRaw {
    Named(String),
    Bare { b1: [f64; 2], b2: [f64; 2] },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    t_max_tau1: Option<f64>,
    t_max_gamma: Option<f64>,
    t_max: Option<f64>,
    samples: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    step_fraction_tau: Option<u32>,
    step_fraction_gamma: Option<u32>,
    richardson_check: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    key: String,
    values: Vec<f64>,
}

fn parse_mode_token(tok: &str) -> Option<ModeIndex> {
    let tok = tok.trim();
    if tok.len() == 2 && tok.chars().all(|c| c.is_ascii_digit()) {
        let m = tok[..1].parse().ok()?;
        let n = tok[1..].parse().ok()?;
        Some(ModeIndex::new(m, n))
    } else {
        None
    }
}

fn parse_omega_tag(tag: &str) -> Result<OmegaSpec, ConfigError> {
    let inner = tag
        .strip_prefix("mid(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| {
            ConfigError::Validation(format!(
                "omega_a: expected a number or \"mid(mn,mn)\", got \"{tag}\""
            ))
        })?;
    let mut parts = inner.splitn(2, ',');
    let lo = parts.next().and_then(parse_mode_token);
    let hi = parts.next().and_then(parse_mode_token);
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok(OmegaSpec::Midpoint(lo, hi)),
        _ => Err(ConfigError::Validation(format!(
            "omega_a: cannot parse mode indices in \"{tag}\" (expected e.g. \"mid(11,31)\")"
        ))),
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let raw: Raw = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: Raw) -> Result<Self, ConfigError> {
        let mut missing = Vec::new();
        if raw.omega_a.is_none() {
            missing.push("omega_a");
        }
        if raw.coupling_d.is_none() {
            missing.push("coupling_d");
        }
        if raw.distance.is_none() {
            missing.push("distance (one of d | lambda1 | phase)");
        }
        if raw.initial.is_none() {
            missing.push("initial");
        }
        if raw.time.is_none() {
            missing.push("time (one of t_max_tau1 | t_max_gamma | t_max)");
        }
        if !missing.is_empty() {
            return Err(ConfigError::Validation(format!(
                "missing required keys: {}",
                missing.join(", ")
            )));
        }

        let geometry = match raw.geometry {
            None => WaveguideGeometry::default(),
            Some(g) => {
                let a = g.a.unwrap_or(1.0);
                let b = g.b.unwrap_or(a / 2.0);
                WaveguideGeometry::new(a, b).map_err(|e| {
                    ConfigError::Validation(format!("geometry: {e}"))
                })?
            }
        };

        let omega = match raw.omega_a.unwrap() {
            OmegaRaw::Number(x) if x > 0.0 => OmegaSpec::Absolute(x),
            OmegaRaw::Number(x) => {
                return Err(ConfigError::Validation(format!("omega_a must be > 0 (got {x})")))
            }
            OmegaRaw::Tag(tag) => parse_omega_tag(&tag)?,
        };

        let coupling_d = raw.coupling_d.unwrap();
        if !(coupling_d > 0.0) {
            return Err(ConfigError::Validation(format!(
                "coupling_d must be > 0 (got {coupling_d})"
            )));
        }

        let dist_raw = raw.distance.unwrap();
        let distance = match (dist_raw.d, dist_raw.lambda1, dist_raw.phase) {
            (Some(d), None, None) => {
                if d < 0.0 {
                    return Err(ConfigError::Validation(format!(
                        "distance.d must be >= 0 (got {d})"
                    )));
                }
                DistanceSpec::Length(d)
            }
            (None, Some(x), None) => {
                if x < 0.0 {
                    return Err(ConfigError::Validation(format!(
                        "distance.lambda1 must be >= 0 (got {x})"
                    )));
                }
                DistanceSpec::Lambda1(x)
            }
            (None, None, Some(p)) => {
                DistanceSpec::PhaseTarget { n: p.n, delta: p.delta.unwrap_or(0.0) }
            }
            (None, None, None) => {
                return Err(ConfigError::Validation(
                    "distance: one of d, lambda1, phase is required".into(),
                ))
            }
            _ => {
                return Err(ConfigError::Validation(
                    "distance: d, lambda1 and phase are mutually exclusive; give exactly one"
                        .into(),
                ))
            }
        };

        let modes = match raw.modes {
            None => ModesSpec::Auto,
            Some(ModesRaw::Tag(t)) if t == "auto" => ModesSpec::Auto,
            Some(ModesRaw::Tag(t)) => {
                return Err(ConfigError::Validation(format!(
                    "modes: expected \"auto\" or a list of [m, n] pairs, got \"{t}\""
                )))
            }
            Some(ModesRaw::List(list)) => {
                if list.is_empty() {
                    return Err(ConfigError::Validation("modes: list must not be empty".into()));
                }
                ModesSpec::Explicit(list.into_iter().map(|[m, n]| ModeIndex::new(m, n)).collect())
            }
        };

        let initial = match raw.initial.unwrap() {
            InitialRaw::Named(s) if s == "symmetric" => InitialState::Symmetric,
            InitialRaw::Named(s) if s == "antisymmetric" => InitialState::Antisymmetric,
            InitialRaw::Named(s) => {
                return Err(ConfigError::Validation(format!(
                    "initial: expected \"symmetric\", \"antisymmetric\" or bare amplitudes, got \"{s}\""
                )))
            }
            InitialRaw::Bare { b1, b2 } => {
                let b1 = Complex64::new(b1[0], b1[1]);
                let b2 = Complex64::new(b2[0], b2[1]);
                let norm = b1.norm_sqr() + b2.norm_sqr();
                if (norm - 1.0).abs() > 1e-12 {
                    return Err(ConfigError::Validation(format!(
                        "initial: |b1|^2 + |b2|^2 must equal 1 to 1e-12 (got {norm})"
                    )));
                }
                InitialState::Bare(b1, b2)
            }
        };

        let method = match raw.method.as_deref() {
            None | Some("dde") => Method::Dde,
            Some("series") => Method::Series,
            Some("both") => Method::Both,
            Some(other) => {
                return Err(ConfigError::Validation(format!(
                    "method: expected \"dde\", \"series\" or \"both\", got \"{other}\""
                )))
            }
        };

        let time_raw = raw.time.unwrap();
        let time = match (time_raw.t_max_tau1, time_raw.t_max_gamma, time_raw.t_max) {
            (Some(x), None, None) => TimeSpec::Tau1(x),
            (None, Some(x), None) => TimeSpec::GammaInv(x),
            (None, None, Some(x)) => TimeSpec::Absolute(x),
            (None, None, None) => {
                return Err(ConfigError::Validation(
                    "time: one of t_max_tau1, t_max_gamma, t_max is required".into(),
                ))
            }
            _ => {
                return Err(ConfigError::Validation(
                    "time: t_max_tau1, t_max_gamma and t_max are mutually exclusive".into(),
                ))
            }
        };
        match time {
            TimeSpec::Tau1(x) | TimeSpec::GammaInv(x) | TimeSpec::Absolute(x) => {
                if !(x > 0.0) {
                    return Err(ConfigError::Validation(format!(
                        "time: horizon must be > 0 (got {x})"
                    )));
                }
            }
        }
        let samples = time_raw.samples.unwrap_or(2000);
        if samples < 2 {
            return Err(ConfigError::Validation(format!(
                "time.samples must be >= 2 (got {samples})"
            )));
        }

        let solver = match raw.solver {
            None => SolverSettings::default(),
            Some(s) => SolverSettings {
                step_fraction_tau: s.step_fraction_tau.unwrap_or(64),
                step_fraction_gamma: s.step_fraction_gamma.unwrap_or(200),
                richardson_check: s.richardson_check.unwrap_or(false),
            },
        };
        if solver.step_fraction_tau < 8 || solver.step_fraction_gamma < 8 {
            return Err(ConfigError::Validation(
                "solver: step fractions must be >= 8".into(),
            ));
        }

        let sweep = match raw.sweep {
            None => None,
            Some(s) => {
                const KEYS: [&str; 5] = [
                    "coupling_d",
                    "distance.d",
                    "distance.lambda1",
                    "distance.phase.delta",
                    "distance.phase.n",
                ];
                if !KEYS.contains(&s.key.as_str()) {
                    return Err(ConfigError::Validation(format!(
                        "sweep.key: \"{}\" is not sweepable (supported: {})",
                        s.key,
                        KEYS.join(", ")
                    )));
                }
                if s.values.is_empty() {
                    return Err(ConfigError::Validation("sweep.values must not be empty".into()));
                }
                Some(SweepSpec { key: s.key, values: s.values })
            }
        };

        Ok(ScenarioConfig {
            geometry,
            omega,
            coupling_d,
            distance,
            modes,
            initial,
            method,
            time,
            samples,
            solver,
            sweep,
        })
    }

    /// Applies a sweep value to a copy of this config; the key was validated
    /// at load time.
    pub fn with_sweep_value(&self, key: &str, value: f64) -> Result<Self, ConfigError> {
        let mut out = self.clone();
        out.sweep = None;
        match key {
            "coupling_d" => out.coupling_d = value,
            "distance.d" => out.distance = DistanceSpec::Length(value),
            "distance.lambda1" => out.distance = DistanceSpec::Lambda1(value),
            "distance.phase.delta" => {
                let n = match self.distance {
                    DistanceSpec::PhaseTarget { n, .. } => n,
                    _ => 0,
                };
                out.distance = DistanceSpec::PhaseTarget { n, delta: value };
            }
            "distance.phase.n" => {
                let delta = match self.distance {
                    DistanceSpec::PhaseTarget { delta, .. } => delta,
                    _ => 0.0,
                };
                out.distance = DistanceSpec::PhaseTarget { n: value as u32, delta };
            }
            other => {
                return Err(ConfigError::Validation(format!("sweep.key \"{other}\" unsupported")))
            }
        }
        Ok(out)
    }

    /// Canonical TOML echo of the validated config (defaults applied).
    pub fn to_toml_string(&self) -> String {
        let mut s = String::new();
        match self.omega {
            OmegaSpec::Absolute(x) => writeln!(s, "omega_a = {x}").unwrap(),
            OmegaSpec::Midpoint(lo, hi) => writeln!(
                s,
                "omega_a = \"mid({}{},{}{})\"",
                lo.m, lo.n, hi.m, hi.n
            )
            .unwrap(),
        }
        writeln!(s, "coupling_d = {}", self.coupling_d).unwrap();
        match &self.modes {
            ModesSpec::Auto => writeln!(s, "modes = \"auto\"").unwrap(),
            ModesSpec::Explicit(list) => {
                let items: Vec<String> =
                    list.iter().map(|m| format!("[{}, {}]", m.m, m.n)).collect();
                writeln!(s, "modes = [{}]", items.join(", ")).unwrap();
            }
        }
        match self.initial {
            InitialState::Symmetric => writeln!(s, "initial = \"symmetric\"").unwrap(),
            InitialState::Antisymmetric => writeln!(s, "initial = \"antisymmetric\"").unwrap(),
            InitialState::Bare(b1, b2) => writeln!(
                s,
                "initial = {{ b1 = [{}, {}], b2 = [{}, {}] }}",
                b1.re, b1.im, b2.re, b2.im
            )
            .unwrap(),
        }
        writeln!(s, "method = \"{}\"", self.method.label()).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "[geometry]").unwrap();
        writeln!(s, "a = {}", self.geometry.a).unwrap();
        writeln!(s, "b = {}", self.geometry.b).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "[distance]").unwrap();
        match self.distance {
            DistanceSpec::Length(d) => writeln!(s, "d = {d}").unwrap(),
            DistanceSpec::Lambda1(x) => writeln!(s, "lambda1 = {x}").unwrap(),
            DistanceSpec::PhaseTarget { n, delta } => {
                writeln!(s, "phase = {{ n = {n}, delta = {delta} }}").unwrap()
            }
        }
        writeln!(s).unwrap();
        writeln!(s, "[time]").unwrap();
        match self.time {
            TimeSpec::Tau1(x) => writeln!(s, "t_max_tau1 = {x}").unwrap(),
            TimeSpec::GammaInv(x) => writeln!(s, "t_max_gamma = {x}").unwrap(),
            TimeSpec::Absolute(x) => writeln!(s, "t_max = {x}").unwrap(),
        }
        writeln!(s, "samples = {}", self.samples).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "[solver]").unwrap();
        writeln!(s, "step_fraction_tau = {}", self.solver.step_fraction_tau).unwrap();
        writeln!(s, "step_fraction_gamma = {}", self.solver.step_fraction_gamma).unwrap();
        writeln!(s, "richardson_check = {}", self.solver.richardson_check).unwrap();
        s
    }
}
