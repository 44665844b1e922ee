//! Bare/Dicke amplitude transforms and the observables derived from them.
//!
//! With a single excitation shared between the atoms and the field, the
//! reduced two-atom state is an X state and its concurrence collapses to
//! `C = max(0, 2|B1 B2*|)`. The Dicke amplitudes are
//! `Cs = (B1 + B2)/sqrt(2)` and `Ca = (B1 - B2)/sqrt(2)`; the transform is
//! unitary, so the excited-state population is preserved either way.
//!
//! The concurrence is always computed from the bare amplitudes. It is *not*
//! `max(0, |Cs|^2 - |Ca|^2)`: the cross term `2 Im(Cs Ca*)` survives in
//! `2|B1 B2*| = ||Cs|^2 - |Ca|^2 + 2i Im(Cs Ca*)|`.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Rotating-frame excited-state amplitudes of the two atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePair {
    pub b1: Complex64,
    pub b2: Complex64,
}

/// Amplitudes of the symmetric and antisymmetric Dicke states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickePair {
    pub cs: Complex64,
    pub ca: Complex64,
}

pub fn dicke_from_bare(pair: AmplitudePair) -> DickePair {
    DickePair {
        cs: (pair.b1 + pair.b2) * FRAC_1_SQRT_2,
        ca: (pair.b1 - pair.b2) * FRAC_1_SQRT_2,
    }
}

pub fn bare_from_dicke(pair: DickePair) -> AmplitudePair {
    AmplitudePair {
        b1: (pair.cs + pair.ca) * FRAC_1_SQRT_2,
        b2: (pair.cs - pair.ca) * FRAC_1_SQRT_2,
    }
}

/// Concurrence of the single-excitation X state, `max(0, 2|B1 B2*|)`.
///
/// The clamp is redundant for a modulus but mirrors the general X-state
/// formula, which a mixed-state extension would need.
pub fn concurrence(pair: AmplitudePair) -> f64 {
    (2.0 * (pair.b1 * pair.b2.conj()).norm()).max(0.0)
}

/// Probability that the excitation is still in the atoms, `|B1|^2 + |B2|^2`.
pub fn population(pair: AmplitudePair) -> f64 {
    pair.b1.norm_sqr() + pair.b2.norm_sqr()
}
