//! Entanglement dynamics of two identical two-level atoms coupled to the
//! transverse-magnetic guided modes of a rectangular hollow waveguide.
//!
//! The two atoms share a single excitation with the field. Tracing out the
//! field leaves a pair of scalar delay differential equations for the Dicke
//! amplitudes, one per symmetry branch. This crate provides
//!
//! - [`mode_physics`]: cutoffs, dispersion, group velocities, per-mode decay
//!   rates, transit delays, and propagation phases from the waveguide geometry,
//! - [`dde`]: a fixed-step method-of-steps integrator for scalar linear
//!   constant-coefficient DDEs with multiple delays and dense output,
//! - [`series`]: the closed-form and series solutions of those equations,
//!   used as independent cross-checks of the integrator,
//! - [`entanglement`]: Dicke/bare basis transforms, concurrence, population,
//! - [`scenario`]: configuration files, figure presets, CSV output, and the
//!   cross-validation harness behind the `wgqed` command-line tool.
//!
//! Units are dimensionless throughout: `c = 1`, the waveguide width `a = 1`
//! (unless overridden), so frequencies and rates carry units of `c/a`, times
//! `a/c`, and lengths `a`.
//!
//! ```
//! use wgqed::mode_physics::{WaveguideGeometry, ModeIndex, cutoff_frequency};
//!
//! let geom = WaveguideGeometry::default(); // a = 1, b = 1/2
//! let omega_11 = cutoff_frequency(&geom, ModeIndex::new(1, 1));
//! assert!((omega_11 - std::f64::consts::PI * 5f64.sqrt()).abs() < 1e-12);
//! ```

pub mod dde;
pub mod entanglement;
pub mod mode_physics;
pub mod scenario;
pub mod series;

/// Delays below this value (in units of `a/c`) are folded into the
/// instantaneous coefficient of the delay equation instead of being resolved
/// by the integrator or the series kernels.
pub const FOLD_THRESHOLD: f64 = 1e-12;

#[cfg(doctest)]
mod booktests {
    //! Runs the code blocks of the guide (`book/src/*.md`) as doctests so the
    //! narrative chapters stay in sync with the library.

    #[doc = include_str!("../../../book/src/model.md")]
    struct Model;
    #[doc = include_str!("../../../book/src/delay_equations.md")]
    struct DelayEquations;
    #[doc = include_str!("../../../book/src/series_solutions.md")]
    struct SeriesSolutions;
    #[doc = include_str!("../../../book/src/concurrence.md")]
    struct Concurrence;
}
