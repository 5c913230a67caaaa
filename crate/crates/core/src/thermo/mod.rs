//! Thermostatistics of the exclusion-obeying deformed Fermi gas.
//!
//! Everything is in reduced units `k = h = m = 1`, so the thermal wavelength
//! is `lambda^3 = (2 pi T)^{-3/2}` and all state functions are built from the
//! generalized Fermi-Dirac functions at the shifted fugacity `y = q^-1 z`.
//! That single combination is the only way `q` and `z` enter, which is why
//! the virial coefficients show no deformation.

pub mod fermi_fn;
pub mod virial;

pub use fermi_fn::{f_nu, f_nu_integral, f_nu_ln, f_nu_series, EvalMethod, SeriesResult};
pub use virial::virial_coefficients;

use crate::basic::Deformation;
use thiserror::Error;

/// Absolute tolerance used by the state functions when evaluating `f_nu`.
pub const DEFAULT_TOL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermoError {
    #[error("invalid gas state: {what} = {value}")]
    InvalidState { what: &'static str, value: f64 },
    #[error("f_nu argument must be positive and finite, got {0}")]
    NonpositiveArgument(f64),
    #[error("the alternating series diverges for y = {0} > 1; use the integral route")]
    SeriesDiverges(f64),
    #[error("tolerance {tol} not reached: best estimate {best} +- {err} after {terms} steps")]
    ToleranceNotReached {
        tol: f64,
        best: f64,
        err: f64,
        terms: usize,
    },
    #[error("could not bracket a fugacity with n lambda^3 = {0}")]
    BracketingFailed(f64),
    #[error("Sommerfeld expansion rejected at T/E_F = {0} > 0.3")]
    SommerfeldOutOfRange(f64),
}

/// `lambda^3 = (2 pi T)^{-3/2}` in reduced units.
pub fn thermal_wavelength_cubed(t: f64) -> f64 {
    (2.0 * std::f64::consts::PI * t).powf(-1.5)
}

/// A grand-canonical state point `(q, T, z, lambda^3)`.
///
/// The occupation functions read only `q` and `T` from the state; the gas
/// functions additionally use `z` through `y = q^-1 z` and the wavelength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasState {
    q: Deformation,
    t: f64,
    z: f64,
    lambda3: f64,
}

impl GasState {
    /// State at temperature `t` and fugacity `z`, wavelength from `t`.
    pub fn new(q: Deformation, t: f64, z: f64) -> Result<Self, ThermoError> {
        if !t.is_finite() || t <= 0.0 {
            return Err(ThermoError::InvalidState {
                what: "temperature",
                value: t,
            });
        }
        Self::with_lambda3(q, t, z, thermal_wavelength_cubed(t))
    }

    /// State with the cubed thermal wavelength supplied directly.
    pub fn with_lambda3(q: Deformation, t: f64, z: f64, lambda3: f64) -> Result<Self, ThermoError> {
        if !t.is_finite() || t <= 0.0 {
            return Err(ThermoError::InvalidState {
                what: "temperature",
                value: t,
            });
        }
        if !z.is_finite() || z <= 0.0 {
            return Err(ThermoError::InvalidState {
                what: "fugacity",
                value: z,
            });
        }
        if !lambda3.is_finite() || lambda3 <= 0.0 {
            return Err(ThermoError::InvalidState {
                what: "lambda3",
                value: lambda3,
            });
        }
        Ok(Self { q, t, z, lambda3 })
    }

    /// State from the chemical potential, `z = e^{mu/T}`.
    pub fn from_chemical_potential(q: Deformation, t: f64, mu: f64) -> Result<Self, ThermoError> {
        if !t.is_finite() || t <= 0.0 {
            return Err(ThermoError::InvalidState {
                what: "temperature",
                value: t,
            });
        }
        Self::new(q, t, (mu / t).exp())
    }

    pub fn q(&self) -> Deformation {
        self.q
    }

    pub fn temperature(&self) -> f64 {
        self.t
    }

    pub fn fugacity(&self) -> f64 {
        self.z
    }

    pub fn lambda3(&self) -> f64 {
        self.lambda3
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    /// The universal argument `y = q^-1 z` of every gas function.
    pub fn y(&self) -> f64 {
        self.z / self.q.value()
    }
}

/// The simplified distribution `n = q^-1 / (e^{beta(E - mu)} + q^-1)` the gas
/// thermodynamics is built on.
pub fn occupation(state: &GasState, e_minus_mu: f64) -> f64 {
    let qinv = state.q.inverse();
    qinv / ((state.beta() * e_minus_mu).exp() + qinv)
}

/// The arcsin form `n = (2/pi) arcsin sqrt(g)` with
/// `g = q^-1 / (e^{beta(E - mu)} + q^-1)`; `g` lies in (0, 1] so the arcsin
/// is always defined.
pub fn occupation_arcsin(state: &GasState, e_minus_mu: f64) -> f64 {
    let qinv = state.q.inverse();
    let g = qinv / ((state.beta() * e_minus_mu).exp() + qinv);
    std::f64::consts::FRAC_2_PI * g.sqrt().asin()
}

/// Taylor expansion of `(2/pi) arcsin sqrt(g)` in powers of `sqrt(g)`, to
/// `order` terms: an independent cross-check of the arcsin occupation.
///
/// Coefficients follow the arcsin series `c_0 = 1`,
/// `c_k = c_{k-1} (2k-1)^2 / (2k (2k+1))`.
pub fn occupation_series_oracle(g: f64, order: usize) -> f64 {
    assert!(g > 0.0 && g < 1.0, "g must lie in (0, 1), got {g}");
    assert!(order >= 1, "need at least one term");
    let root = g.sqrt();
    let mut coeff = 1.0;
    let mut power = root;
    let mut sum = 0.0;
    for k in 1..=order {
        sum += coeff * power;
        let kk = k as f64;
        coeff *= (2.0 * kk - 1.0).powi(2) / (2.0 * kk * (2.0 * kk + 1.0));
        power *= g;
    }
    std::f64::consts::FRAC_2_PI * sum
}

/// Discrete-mode log partition function
/// `ln Z = sum_i ln(1 + q^-1 z e^{-beta E_i})`.
pub fn log_partition(state: &GasState, energies: &[f64]) -> f64 {
    let qinv = state.q.inverse();
    let beta = state.beta();
    energies
        .iter()
        .map(|e| (qinv * state.z * (-beta * e).exp()).ln_1p())
        .sum()
}

/// Grand potential per unit volume,
/// `-(T/lambda^3) [ln(1 + q^-1 z)] - (T/lambda^3) f_{5/2}(q^-1 z)`,
/// with the zero-momentum term included only when flagged (the thermodynamic
/// limit drops it).
pub fn grand_potential(state: &GasState, include_ground_mode: bool) -> Result<f64, ThermoError> {
    let bulk = state.t / state.lambda3 * f_nu(2.5, state.y(), DEFAULT_TOL)?.value;
    Ok(if include_ground_mode {
        -(state.t / state.lambda3) * state.y().ln_1p() - bulk
    } else {
        -bulk
    })
}

/// Pressure `P = (T/lambda^3) f_{5/2}(q^-1 z)`.
pub fn pressure(state: &GasState) -> Result<f64, ThermoError> {
    Ok(state.t / state.lambda3 * f_nu(2.5, state.y(), DEFAULT_TOL)?.value)
}

/// Mean density `n/V = (1/lambda^3) f_{3/2}(q^-1 z)`.
pub fn density(state: &GasState) -> Result<f64, ThermoError> {
    Ok(f_nu(1.5, state.y(), DEFAULT_TOL)?.value / state.lambda3)
}

/// Internal energy `U = (3/2) P V`, computed as exactly that product.
pub fn internal_energy(state: &GasState, volume: f64) -> Result<f64, ThermoError> {
    if !volume.is_finite() || volume <= 0.0 {
        return Err(ThermoError::InvalidState {
            what: "volume",
            value: volume,
        });
    }
    Ok(1.5 * pressure(state)? * volume)
}

/// Entropy per particle
/// `S/Nk = (5/2) f_{5/2}(q^-1 z) / f_{3/2}(q^-1 z) - ln z`.
pub fn entropy_per_particle(state: &GasState) -> Result<f64, ThermoError> {
    let y = state.y();
    let f52 = f_nu(2.5, y, DEFAULT_TOL)?.value;
    let f32v = f_nu(1.5, y, DEFAULT_TOL)?.value;
    Ok(2.5 * f52 / f32v - state.z.ln())
}

/// Solve `f_{3/2}(y) = target` for `L = ln y` on the strictly increasing map.
///
/// Illinois-damped false position after bracket expansion; the returned `L`
/// has relative density residual below 1e-11.
pub fn solve_log_fugacity(target_nlambda3: f64) -> Result<f64, ThermoError> {
    if !target_nlambda3.is_finite() || target_nlambda3 <= 0.0 {
        return Err(ThermoError::NonpositiveArgument(target_nlambda3));
    }
    let target = target_nlambda3;
    let ftol = target.max(1.0) * 1e-13;
    let g = |l: f64| -> Result<f64, ThermoError> { Ok(f_nu_ln(1.5, l, ftol)?.value - target) };

    // classical guess ln(target), degenerate guess (3 sqrt(pi)/4 target)^{2/3}
    let degenerate = (0.75 * std::f64::consts::PI.sqrt() * target).powf(2.0 / 3.0);
    let mut lo = target.ln().min(0.0) - 3.0;
    let mut hi = (target.ln() + 3.0).max(degenerate + 3.0).max(3.0);
    let mut glo = g(lo)?;
    let mut ghi = g(hi)?;
    for _ in 0..80 {
        if glo < 0.0 {
            break;
        }
        lo -= 8.0;
        glo = g(lo)?;
    }
    for _ in 0..80 {
        if ghi > 0.0 {
            break;
        }
        hi += hi.abs().max(8.0);
        ghi = g(hi)?;
    }
    if glo.is_nan() || ghi.is_nan() || glo >= 0.0 || ghi <= 0.0 {
        return Err(ThermoError::BracketingFailed(target));
    }

    let mut side = 0i8;
    for _ in 0..200 {
        let mid = if ghi != glo {
            hi - ghi * (hi - lo) / (ghi - glo)
        } else {
            0.5 * (lo + hi)
        };
        let mid = if mid <= lo || mid >= hi {
            0.5 * (lo + hi)
        } else {
            mid
        };
        let gm = g(mid)?;
        if gm.abs() <= target * 1e-11 || (hi - lo).abs() < 1e-14 * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if gm < 0.0 {
            lo = mid;
            glo = gm;
            if side == -1 {
                ghi *= 0.5; // Illinois damping
            }
            side = -1;
        } else {
            hi = mid;
            ghi = gm;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
    }
    Err(ThermoError::ToleranceNotReached {
        tol: target * 1e-11,
        best: 0.5 * (lo + hi),
        err: (hi - lo).abs(),
        terms: 200,
    })
}

/// Fugacity `z` with `f_{3/2}(q^-1 z) = target`. Since the equation fixes
/// only `y = q^-1 z`, the solution scales exactly as `z(q) = q z(1)`.
pub fn solve_fugacity(target_nlambda3: f64, q: Deformation) -> Result<f64, ThermoError> {
    let l = solve_log_fugacity(target_nlambda3)?;
    let z = q.value() * l.exp();
    if !z.is_finite() {
        return Err(ThermoError::InvalidState {
            what: "fugacity",
            value: z,
        });
    }
    Ok(z)
}

/// How to compute the chemical potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuMethod {
    /// Invert the density equation at the density fixed by the Fermi energy.
    Exact,
    /// `mu = E_F - T ln q^-1`.
    Sommerfeld0,
    /// `mu = -T ln q^-1 + E_F (1 - (pi^2/12)(T/E_F)^2)`.
    Sommerfeld2,
}

/// Chemical potential at temperature `t` for the gas whose `T = 0` chemical
/// potential (at `q = 1`) is the Fermi energy `e_f`; multiplicity 1.
pub fn chemical_potential(
    t: f64,
    e_f: f64,
    q: Deformation,
    method: MuMethod,
) -> Result<f64, ThermoError> {
    chemical_potential_with_multiplicity(t, e_f, q, method, 1.0)
}

/// Same with an explicit mode-multiplicity factor scaling the target density
/// at fixed `e_f` (so `g != 1` moves the degenerate limit to `g^{2/3} E_F`).
pub fn chemical_potential_with_multiplicity(
    t: f64,
    e_f: f64,
    q: Deformation,
    method: MuMethod,
    multiplicity: f64,
) -> Result<f64, ThermoError> {
    if !t.is_finite() || t <= 0.0 {
        return Err(ThermoError::InvalidState {
            what: "temperature",
            value: t,
        });
    }
    if !e_f.is_finite() || e_f <= 0.0 {
        return Err(ThermoError::InvalidState {
            what: "fermi_energy",
            value: e_f,
        });
    }
    if !multiplicity.is_finite() || multiplicity <= 0.0 {
        return Err(ThermoError::InvalidState {
            what: "multiplicity",
            value: multiplicity,
        });
    }
    let ln_qinv = -q.value().ln();
    match method {
        MuMethod::Exact => {
            // n lambda^3 = g (4 / 3 sqrt(pi)) (E_F / T)^{3/2}
            let target =
                multiplicity * 4.0 / (3.0 * std::f64::consts::PI.sqrt()) * (e_f / t).powf(1.5);
            let l = solve_log_fugacity(target)?;
            // mu = T ln z = T (ln q + ln y)
            Ok(t * (q.value().ln() + l))
        }
        MuMethod::Sommerfeld0 | MuMethod::Sommerfeld2 => {
            let ratio = t / e_f;
            if ratio > 0.3 {
                return Err(ThermoError::SommerfeldOutOfRange(ratio));
            }
            let correction = if method == MuMethod::Sommerfeld2 {
                1.0 - std::f64::consts::PI.powi(2) / 12.0 * ratio * ratio
            } else {
                1.0
            };
            Ok(-t * ln_qinv + e_f * correction)
        }
    }
}

/// Degenerate expansion of `f_{3/2}` in the argument `nu_arg = ln(q^-1 z) > 1`:
/// `(4 / 3 sqrt(pi)) nu_arg^{3/2} (1 + (pi^2/8) nu_arg^{-2} [order >= 2])`.
pub fn sommerfeld_f32(nu_arg: f64, order: u32) -> f64 {
    assert!(
        nu_arg > 1.0,
        "expansion argument must exceed 1, got {nu_arg}"
    );
    assert!(order == 0 || order == 2, "order must be 0 or 2");
    let pi = std::f64::consts::PI;
    let correction = if order >= 2 {
        1.0 + pi * pi / 8.0 / (nu_arg * nu_arg)
    } else {
        1.0
    };
    4.0 / (3.0 * pi.sqrt()) * nu_arg.powf(1.5) * correction
}
