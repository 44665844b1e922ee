//! Per-mode physics of two z-oriented dipoles on the axis of a rectangular
//! hollow metallic waveguide.
//!
//! The atoms sit at `(a/2, b/2, z)`, so only TM modes with both indices odd
//! couple (the transverse mode function carries `sin(mπ/2)·sin(nπ/2)`).
//! Everything here is a pure function of the geometry, the atomic transition
//! frequency `ω_A`, the separation `d`, and a dimensionless dipole scale.
//!
//! Units: `c = 1`. Frequencies and rates are in `c/a`, times in `a/c`,
//! lengths in `a`.

use std::f64::consts::PI;

use thiserror::Error;

/// Fractional distance from cutoff, `(ω_A − Ω_j)/Ω_j`, below which the linear
/// dispersion expansion starts to degrade. Advisory only; see
/// [`ModeParams::cutoff_margin`].
pub const NEAR_CUTOFF_MARGIN: f64 = 0.05;

#[derive(Debug, Error, PartialEq)]
pub enum PhysicsError {
    #[error("waveguide cross-section must be positive (a = {a}, b = {b})")]
    InvalidGeometry { a: f64, b: f64 },
    #[error("mode TM{m}{n} is evanescent at omega_A = {omega_a} (cutoff {cutoff})")]
    Evanescent { m: u32, n: u32, omega_a: f64, cutoff: f64 },
    #[error("mode TM{m}{n} does not couple to centered z-oriented dipoles (even index)")]
    Decoupled { m: u32, n: u32 },
    #[error("coupling target must be positive (got {0})")]
    NonPositiveCoupling(f64),
    #[error("group velocity undefined: omega_A = {omega_a} is at or below cutoff {cutoff}")]
    BelowCutoff { omega_a: f64, cutoff: f64 },
}

/// Cross-section of the rectangular waveguide, width `a` by height `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideGeometry {
    pub a: f64,
    pub b: f64,
}

impl WaveguideGeometry {
    pub fn new(a: f64, b: f64) -> Result<Self, PhysicsError> {
        if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(PhysicsError::InvalidGeometry { a, b });
        }
        Ok(Self { a, b })
    }
}

impl Default for WaveguideGeometry {
    /// The `a = 2b` cross-section with `a = 1`.
    fn default() -> Self {
        Self { a: 1.0, b: 0.5 }
    }
}

/// Transverse index pair of a TM_mn guided mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex {
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub fn new(m: u32, n: u32) -> Self {
        Self { m, n }
    }

    /// Whether the mode function is nonzero at the waveguide axis
    /// (`x = a/2`, `y = b/2`): both indices must be odd.
    pub fn couples_to_centered_dipole(&self) -> bool {
        self.m % 2 == 1 && self.n % 2 == 1
    }

    pub fn label(&self) -> String {
        format!("TM{}{}", self.m, self.n)
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TM{}{}", self.m, self.n)
    }
}

/// The atom pair: transition frequency, separation along `z`, and the
/// dimensionless dipole scale `s` entering the coupling as `g_j = Ω_j · s`.
///
/// `s` is usually obtained from [`calibrate_coupling`] rather than set
/// directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomPairConfig {
    pub omega_a: f64,
    pub d: f64,
    pub coupling_scale: f64,
}

/// Derived quantities of one propagating TM mode at fixed `ω_A` and `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub mode: ModeIndex,
    /// Cutoff angular frequency `Ω_mn` (units `c/a`).
    pub cutoff: f64,
    /// Resonant wavenumber `k_0 = √(ω_A² − Ω²)` (units `1/a`).
    pub k0: f64,
    /// Group velocity at resonance, `v = k_0/ω_A` (units `c`).
    pub v: f64,
    /// Coupling amplitude `g = Ω · s` (units `(c/a)^{3/2}`).
    pub g: f64,
    /// Per-mode decay rate `γ = π g²/(v ω_A)` (units `c/a`).
    pub gamma: f64,
    /// Photon transit delay `τ = d/v` (units `a/c`).
    pub tau: f64,
    /// Propagation phase `φ = k_0 d`, stored unreduced (radians).
    pub phi: f64,
}

impl ModeParams {
    /// Resonant wavelength `λ = 2π/k_0`.
    pub fn lambda(&self) -> f64 {
        2.0 * PI / self.k0
    }

    /// Fractional distance of `ω_A` from this mode's cutoff.
    pub fn cutoff_margin(&self, omega_a: f64) -> f64 {
        (omega_a - self.cutoff) / self.cutoff
    }

    /// True when the linear dispersion expansion is close to breaking down
    /// (see [`NEAR_CUTOFF_MARGIN`]).
    pub fn near_cutoff(&self, omega_a: f64) -> bool {
        self.cutoff_margin(omega_a) < NEAR_CUTOFF_MARGIN
    }
}

/// Cutoff angular frequency `Ω_mn = √((mπ/a)² + (nπ/b)²)` (with `c = 1`).
pub fn cutoff_frequency(geom: &WaveguideGeometry, mode: ModeIndex) -> f64 {
    let kx = mode.m as f64 * PI / geom.a;
    let ky = mode.n as f64 * PI / geom.b;
    (kx * kx + ky * ky).sqrt()
}

/// All TM modes that couple to centered z-oriented dipoles (both indices odd)
/// and propagate at `omega_a`, sorted by ascending cutoff.
///
/// An empty list means `omega_a` lies below the lowest coupled cutoff; the
/// caller decides whether that is fatal.
pub fn list_coupled_modes(geom: &WaveguideGeometry, omega_a: f64) -> Vec<ModeIndex> {
    let mut modes = Vec::new();
    // (mπ/a)² < ω² bounds m; same per n.
    let m_max = (omega_a * geom.a / PI).ceil() as u32 + 1;
    let n_max = (omega_a * geom.b / PI).ceil() as u32 + 1;
    for m in (1..=m_max).step_by(2) {
        for n in (1..=n_max).step_by(2) {
            let mode = ModeIndex::new(m, n);
            if cutoff_frequency(geom, mode) < omega_a {
                modes.push(mode);
            }
        }
    }
    modes.sort_by(|x, y| {
        cutoff_frequency(geom, *x)
            .partial_cmp(&cutoff_frequency(geom, *y))
            .unwrap()
    });
    modes
}

/// Group velocity `v = √(ω_A² − Ω²)/ω_A` of a propagating mode at resonance.
pub fn group_velocity(omega_a: f64, cutoff: f64) -> Result<f64, PhysicsError> {
    if omega_a <= cutoff {
        return Err(PhysicsError::BelowCutoff { omega_a, cutoff });
    }
    Ok((omega_a * omega_a - cutoff * cutoff).sqrt() / omega_a)
}

/// Fully populated [`ModeParams`] for one coupled, propagating mode.
pub fn mode_params(
    geom: &WaveguideGeometry,
    atoms: &AtomPairConfig,
    mode: ModeIndex,
) -> Result<ModeParams, PhysicsError> {
    if !mode.couples_to_centered_dipole() {
        return Err(PhysicsError::Decoupled { m: mode.m, n: mode.n });
    }
    let cutoff = cutoff_frequency(geom, mode);
    if atoms.omega_a <= cutoff {
        return Err(PhysicsError::Evanescent {
            m: mode.m,
            n: mode.n,
            omega_a: atoms.omega_a,
            cutoff,
        });
    }
    let k0 = (atoms.omega_a * atoms.omega_a - cutoff * cutoff).sqrt();
    let v = k0 / atoms.omega_a;
    let g = cutoff * atoms.coupling_scale;
    let gamma = PI * g * g / (v * atoms.omega_a);
    Ok(ModeParams {
        mode,
        cutoff,
        k0,
        v,
        g,
        gamma,
        tau: atoms.d / v,
        phi: k0 * atoms.d,
    })
}

/// Dipole scale `s` such that the reference mode satisfies
/// `γ_ref · λ_ref / v_ref = target_d`, with `λ_ref = 2π/k_ref0`.
///
/// The figure captions parameterize the coupling by this dimensionless
/// combination; the remaining modes' rates then follow from
/// `γ_j/γ_ref = (Ω_j²/Ω_ref²)(v_ref/v_j)`.
pub fn calibrate_coupling(
    target_d: f64,
    geom: &WaveguideGeometry,
    omega_a: f64,
    reference_mode: ModeIndex,
) -> Result<f64, PhysicsError> {
    if !(target_d > 0.0) {
        return Err(PhysicsError::NonPositiveCoupling(target_d));
    }
    let cutoff = cutoff_frequency(geom, reference_mode);
    if omega_a <= cutoff {
        return Err(PhysicsError::Evanescent {
            m: reference_mode.m,
            n: reference_mode.n,
            omega_a,
            cutoff,
        });
    }
    let k0 = (omega_a * omega_a - cutoff * cutoff).sqrt();
    let v = k0 / omega_a;
    let lambda = 2.0 * PI / k0;
    let gamma_ref = target_d * v / lambda;
    // invert gamma = pi (cutoff s)^2 / (v omega_A)
    Ok((gamma_ref * v * omega_a / (PI * cutoff * cutoff)).sqrt())
}

/// Sum of per-mode decay rates, `γ = Σ_j γ_j`.
pub fn total_gamma(modes: &[ModeParams]) -> f64 {
    modes.iter().map(|p| p.gamma).sum()
}
