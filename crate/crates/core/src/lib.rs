//! Continuous Wigner-like quasi-probability functions for ensembles of
//! spin-half particles.
//!
//! A state of `N` spins is mapped into the Hilbert space of two uncoupled
//! harmonic oscillators by a map `Ω` that intertwines the collective spin
//! operators with their Jordan–Schwinger realisation. The oscillator
//! Wigner function of the image is a function on ℝ⁴. Operators that commute
//! with `S²` are constant along the fibres of the Hopf map ℝ⁴ → ℝ³, giving a
//! reduced function on ℝ³, and integrating out the radius gives a function
//! on the sphere.
//!
//! The crate is organised bottom-up:
//!
//! * [`spin_core`]: collective spin operators and the `(k, l, m)` eigenbasis.
//! * [`omega_map`]: the Jordan–Schwinger operators, the map `Ω` and pushed
//!   densities on the truncated two-mode Fock space.
//! * [`moyal`]: Moyal functions, the 4D Wigner function and a
//!   position-space integration oracle.
//! * [`reduced_space`]: Hopf coordinates and the ℝ³ function.
//! * [`sphere`]: the spherical function, by radial quadrature and in
//!   closed form.
//! * [`states`]: builders for Fock, coherent, cat, mixed and squeezed states.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod moyal;
pub mod omega_map;
pub mod quadrature;
pub mod reduced_space;
pub mod sphere;
pub mod spin_core;
pub mod states;

pub use error::{Error, Result};
pub use moyal::{laguerre, moyal_1d, oracle_wigner_integral, wigner_4d, PhasePoint4};
pub use omega_map::{
    construct_omega, jordan_schwinger, push_density, push_operator, push_state, FockBasis, OmegaMap, OscillatorDensity,
};
pub use reduced_space::{check_fiber_invariance, hopf_forward, hopf_section, reduced_wigner, PhasePoint3};
pub use sphere::{
    hypergeom_terminating, radial_integral, sphere_normalization, ws_analytic, ws_numeric, LmDensity, SphPoint,
};
pub use spin_core::{
    build_collective_spin, decompose_angular_basis, ladder, total_spin_squared, AngularBasis, Axis, HalfInt,
    LadderDirection, SpinOperator, SpinState, SpinSystem,
};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
