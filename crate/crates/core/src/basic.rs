//! The deformation parameter and the fermionic/bosonic basic numbers.
//!
//! The fermionic basic number `[n] = (q^-n - (-1)^n q^n) / (q + q^-1)` is
//! built as the alternating geometric sum it equals, so the division never
//! happens and every value stays an exact Laurent polynomial. The bosonic
//! `[n]_B = (q^n - q^-n) / (q - q^-1)` is the symmetric sum, kept here as a
//! contrast object.

use crate::laurent::LaurentPoly;
use num::{BigRational, One, Zero};
use thiserror::Error;

/// Validated deformation parameter `q` in `(0, 1]`.
///
/// `q = 0` is rejected: every deformed formula contains `q^-1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Deformation(f64);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeformationError {
    #[error("deformation parameter must lie in (0, 1], got {0}")]
    OutOfRange(f64),
}

impl Deformation {
    pub fn new(q: f64) -> Result<Self, DeformationError> {
        if q.is_finite() && q > 0.0 && q <= 1.0 {
            Ok(Self(q))
        } else {
            Err(DeformationError::OutOfRange(q))
        }
    }

    /// The undeformed limit `q = 1`.
    pub const ONE: Deformation = Deformation(1.0);

    pub fn value(self) -> f64 {
        self.0
    }

    /// `q^-1`, finite by construction.
    pub fn inverse(self) -> f64 {
        1.0 / self.0
    }
}

/// Which family of basic numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasicKind {
    Fermion,
    Boson,
}

/// Fermionic basic number `[n]` as an exact Laurent polynomial.
///
/// Alternating geometric sum `q^{-n+1} - q^{-n+3} + ... -(-1)^n q^{n-1}`;
/// `[0] = 0`, `[1] = 1`, `[2] = q^-1 - q`.
pub fn basic_fermion(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..n as i64 {
        let exp = -(n as i64) + 1 + 2 * k;
        let sign = if k % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        p = &p + &LaurentPoly::monomial(exp, sign);
    }
    p
}

/// Bosonic basic number `[n]_B = q^{n-1} + q^{n-3} + ... + q^{-(n-1)}`.
pub fn basic_boson(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for k in 0..n as i64 {
        let exp = n as i64 - 1 - 2 * k;
        p = &p + &LaurentPoly::q_power(exp);
    }
    p
}

/// Basic factorial `[n]! = [n] [n-1] ... [1]`, with `[0]! = 1`.
pub fn basic_factorial(n: u32, kind: BasicKind) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for m in 1..=n {
        let factor = match kind {
            BasicKind::Fermion => basic_fermion(m),
            BasicKind::Boson => basic_boson(m),
        };
        p = &p * &factor;
    }
    p
}

/// Value of the fermionic basic number at `q = 1`: `0` for even `n`, `1` for
/// odd `n`. Equals `basic_fermion(n)` evaluated at `q = 1`.
pub fn fermi_limit_basic(n: u32) -> BigRational {
    if n.is_multiple_of(2) {
        BigRational::zero()
    } else {
        BigRational::one()
    }
}
