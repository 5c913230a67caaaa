//! Deformed fermion oscillator algebras and the thermodynamics of the
//! exclusion-obeying deformed Fermi gas.
//!
//! The crate has four layers:
//!
//! * [`laurent`] — exact Laurent polynomials in the deformation variable `q`
//!   over arbitrary-precision rationals, the symbolic ground truth for every
//!   algebraic identity here;
//! * [`basic`] — the validated deformation parameter and the fermionic and
//!   bosonic basic numbers `[n]`, `[n]_B` with their factorials and q -> 1
//!   limits;
//! * [`fock`] — finite matrix representations of the two deformed oscillator
//!   algebras, their eigenvalue recurrences and closed forms, state norms,
//!   the deformed-oscillator spectrum, and an exact two-level trace oracle;
//! * [`jackson`] — the fermionic and bosonic Jackson derivatives with their
//!   shift operators and limit behaviour;
//! * [`thermo`] — distribution functions, generalized Fermi-Dirac functions,
//!   the equation of state, virial coefficients, entropy, and the chemical
//!   potential of the deformed gas.
//!
//! [`selftest`] packages the cross-module invariants as a deterministic,
//! named check suite.

pub mod basic;
pub mod fock;
pub mod jackson;
pub mod laurent;
pub mod selftest;
pub mod thermo;

pub use basic::{
    basic_boson, basic_factorial, basic_fermion, fermi_limit_basic, BasicKind, Deformation,
    DeformationError,
};
pub use fock::{
    algebra_identities_exact, algebra_residual, build_rep, build_state_norm, closed_form,
    exact_trace_occupation, number_operator_relations, oscillator_spectrum, solve_recurrence, AlgebraKind,
    EigenSeq, FockError, FockRep,
};
pub use jackson::{
    jd_apply, jd_apply_pointwise, limit_check, shift_op, ConvergenceReport, DerivKind, JdError,
    PolyFunc, ShiftSign,
};
pub use laurent::LaurentPoly;
pub use thermo::{
    chemical_potential, chemical_potential_with_multiplicity, density, entropy_per_particle, f_nu,
    f_nu_integral, f_nu_ln, f_nu_series, grand_potential, internal_energy, log_partition,
    occupation_arcsin, occupation, occupation_series_oracle, pressure, solve_fugacity,
    solve_log_fugacity, sommerfeld_f32, thermal_wavelength_cubed, virial_coefficients, EvalMethod,
    GasState, MuMethod, SeriesResult, ThermoError,
};
