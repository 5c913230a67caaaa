//! Deformed Jackson derivatives and the q-shift operators.
//!
//! The fermionic derivative acts as `D f(x) = (f(q^-1 x) - f(-q x)) / (x (q + q^-1))`,
//! i.e. on monomials `x^n -> [n] x^{n-1}` with the fermionic basic number.
//! The bosonic one, `(f(q x) - f(q^-1 x)) / (x (q - q^-1))`, maps
//! `x^n -> [n]_B x^{n-1}` and is kept for contrast; it tends to the ordinary
//! derivative as q -> 1, while the fermionic coefficients tend to the 0/1
//! values of the exclusion sector (on polynomials of degree <= 1 the two
//! notions coincide for every q).

use crate::basic::{basic_boson, basic_fermion, fermi_limit_basic, Deformation};
use num::ToPrimitive;
use thiserror::Error;

/// Dense real-coefficient polynomial indexed by power of x.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PolyFunc {
    coeffs: Vec<f64>,
}

impl PolyFunc {
    /// `coeffs[n]` multiplies `x^n`; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(n: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Multiply by x (shift every power up by one).
    pub fn times_x(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::default();
        }
        let mut coeffs = vec![0.0];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Largest absolute coefficient difference, padding with zeros.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0.0);
                let b = other.coeffs.get(i).copied().unwrap_or(0.0);
                (a - b).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Which derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivKind {
    Fermionic,
    Bosonic,
    Ordinary,
}

/// Argument rescaling realized by `q^N`, `q^-N` and `(-q)^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftSign {
    /// `f(x) -> f(q x)`
    Plus,
    /// `f(x) -> f(q^-1 x)`
    Minus,
    /// `f(x) -> f(-q x)`
    Negated,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JdError {
    #[error("bosonic Jackson derivative is singular at q = 1; use the ordinary kind")]
    BosonicAtUnity,
    #[error("pointwise difference quotient is singular at x = 0; use the polynomial path")]
    PointAtZero,
    #[error("the ordinary derivative has no literal difference quotient; use jd_apply")]
    NoPointwiseForOrdinary,
}

/// Apply `q^N`, `q^-N` or `(-q)^N`: coefficient rescaling `x^n -> (s)^n x^n`
/// with `s = q, q^-1, -q`.
///
/// Scale factors are built by a running product, so `shift(x f) = s x shift(f)`
/// holds bit for bit.
pub fn shift_op(sign: ShiftSign, f: &PolyFunc, q: Deformation) -> PolyFunc {
    let s = match sign {
        ShiftSign::Plus => q.value(),
        ShiftSign::Minus => q.inverse(),
        ShiftSign::Negated => -q.value(),
    };
    let mut factor = 1.0;
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let out = c * factor;
            factor *= s;
            out
        })
        .collect();
    PolyFunc::new(coeffs)
}

/// Deformed derivative on polynomial coefficients: `x^n -> K_n x^{n-1}` with
/// `K_n = [n]`, `[n]_B` or `n` according to the kind. The division by x is
/// exact here: the constant term of the shifted difference vanishes
/// identically.
pub fn jd_apply(kind: DerivKind, f: &PolyFunc, q: Deformation) -> Result<PolyFunc, JdError> {
    if kind == DerivKind::Bosonic && q.value() == 1.0 {
        return Err(JdError::BosonicAtUnity);
    }
    let qv = q.value();
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| {
            let k = match kind {
                DerivKind::Fermionic => basic_fermion(n as u32).eval_f64(qv),
                DerivKind::Bosonic => basic_boson(n as u32).eval_f64(qv),
                DerivKind::Ordinary => n as f64,
            };
            c * k
        })
        .collect();
    Ok(PolyFunc::new(coeffs))
}

/// Literal difference quotient at a point `x != 0`:
/// `(f(q^-1 x) - f(-q x)) / (x (q + q^-1))` for the fermionic kind,
/// `(f(q x) - f(q^-1 x)) / (x (q - q^-1))` for the bosonic kind.
pub fn jd_apply_pointwise<F>(kind: DerivKind, f: F, x: f64, q: Deformation) -> Result<f64, JdError>
where
    F: Fn(f64) -> f64,
{
    if x == 0.0 {
        return Err(JdError::PointAtZero);
    }
    let qv = q.value();
    match kind {
        DerivKind::Fermionic => Ok((f(x / qv) - f(-qv * x)) / (x * (qv + 1.0 / qv))),
        DerivKind::Bosonic => {
            if qv == 1.0 {
                return Err(JdError::BosonicAtUnity);
            }
            Ok((f(qv * x) - f(x / qv)) / (x * (qv - 1.0 / qv)))
        }
        DerivKind::Ordinary => Err(JdError::NoPointwiseForOrdinary),
    }
}

/// One `(epsilon, distance)` pair per requested epsilon, plus the fitted
/// convergence order when at least two distances are nonzero.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub kind: DerivKind,
    pub distances: Vec<(f64, f64)>,
    /// Least-squares slope of `ln(distance)` against `ln(epsilon)`.
    pub estimated_order: Option<f64>,
}

/// The q -> 1 limit target of each derivative kind, as a coefficient map.
///
/// Bosonic and ordinary kinds tend to the ordinary derivative. The fermionic
/// coefficients tend to `(1 - (-1)^n)/2` — the exclusion-sector values — so
/// the limit agrees with the ordinary derivative exactly on degree <= 1.
fn limit_target(kind: DerivKind, f: &PolyFunc) -> PolyFunc {
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| match kind {
            DerivKind::Fermionic => c * fermi_limit_basic(n as u32).to_f64().unwrap(),
            DerivKind::Bosonic | DerivKind::Ordinary => c * n as f64,
        })
        .collect();
    PolyFunc::new(coeffs)
}

/// Measure how fast `jd_apply` at `q = 1 - eps` approaches its q -> 1 limit.
///
/// The fermionic distances shrink linearly in eps when an even-degree term is
/// present; the bosonic ones shrink quadratically (the bosonic basic number
/// is symmetric under q -> q^-1).
pub fn limit_check(kind: DerivKind, f: &PolyFunc, eps_list: &[f64]) -> ConvergenceReport {
    assert!(
        eps_list.iter().all(|&e| e > 0.0 && e < 0.5),
        "epsilons must lie in (0, 0.5)"
    );
    let target = limit_target(kind, f);
    let distances: Vec<(f64, f64)> = eps_list
        .iter()
        .map(|&eps| {
            let q = Deformation::new(1.0 - eps).unwrap();
            let d = jd_apply(kind, f, q).expect("q < 1 is regular for every kind");
            (eps, d.max_coeff_distance(&target))
        })
        .collect();
    let pts: Vec<(f64, f64)> = distances
        .iter()
        .filter(|(_, d)| *d > 0.0)
        .map(|(e, d)| (e.ln(), d.ln()))
        .collect();
    let estimated_order = if pts.len() >= 2 {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        (denom.abs() > 1e-30).then(|| (n * sxy - sx * sy) / denom)
    } else {
        None
    };
    ConvergenceReport {
        kind,
        distances,
        estimated_order,
    }
}
