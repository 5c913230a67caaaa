//! Exact Laurent polynomials in the deformation variable `q` with
//! arbitrary-precision rational coefficients.
//!
//! All deformed eigenvalues and basic numbers in this crate are Laurent
//! polynomials in `q`, so keeping them exact makes every algebraic identity
//! checkable with zero tolerance. Floating-point enters only at evaluation.

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial `sum_e c_e q^e` with integer exponents of either sign
/// and exact rational coefficients.
///
/// Canonical form: no zero coefficient is ever stored, so structural equality
/// is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    /// A constant from an integer, convenient in tests and recurrences.
    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    /// The single term `c * q^exp`.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp` with unit coefficient.
    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms
            .get(&exp)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by the monomial `q^exp` (pure exponent shift).
    pub fn mul_q_power(&self, exp: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e + exp, c.clone()))
            .collect();
        Self { terms }
    }

    /// Substitute `q -> q^{-1}`, i.e. negate every exponent.
    pub fn invert_q(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        Self { terms }
    }

    /// Exact value at a rational point `q != 0`.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        assert!(!q.is_zero(), "Laurent polynomial evaluated at q = 0");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(q, *e);
        }
        acc
    }

    /// Floating-point value at `q > 0`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * q.powi(*e as i32))
            .sum()
    }
}

/// `q^e` for a rational base and integer exponent of either sign.
pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = BigRational::one();
    let mut sq = base;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &sq;
        }
        n >>= 1;
        if n > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, &-c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul<&BigRational> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &BigRational) -> LaurentPoly {
        if rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * rhs)).collect();
        LaurentPoly { terms }
    }
}

/// Renders in ascending exponent order, e.g. `q^-1 - q` or `q^-2 + 1 + q^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let p = &LaurentPoly::q_power(2) - &LaurentPoly::q_power(2);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let q = LaurentPoly::monomial(5, BigRational::zero());
        assert!(q.is_zero());
    }

    #[test]
    fn arithmetic_is_exact() {
        // (q^-1 - q) * (q^-1 + q) = q^-2 - q^2
        let a = &LaurentPoly::q_power(-1) - &LaurentPoly::q_power(1);
        let b = &LaurentPoly::q_power(-1) + &LaurentPoly::q_power(1);
        let prod = &a * &b;
        let expect = &LaurentPoly::q_power(-2) - &LaurentPoly::q_power(2);
        assert_eq!(prod, expect);
    }

    #[test]
    fn eval_examples() {
        // p = q^-1 - q at q = 0.5 -> 1.5
        let p = &LaurentPoly::q_power(-1) - &LaurentPoly::q_power(1);
        assert_eq!(p.eval_f64(0.5), 1.5);
        assert_eq!(p.eval_rational(&rat(1, 2)), rat(3, 2));
        // zero polynomial evaluates to 0 anywhere
        assert_eq!(LaurentPoly::zero().eval_f64(0.77), 0.0);
        // q^-2 at 0.5 -> 4
        assert_eq!(LaurentPoly::q_power(-2).eval_f64(0.5), 4.0);
        assert_eq!(
            LaurentPoly::q_power(-2).eval_rational(&rat(1, 2)),
            rat(4, 1)
        );
    }

    #[test]
    fn rational_pow_negative_exponents() {
        let q = rat(2, 3);
        assert_eq!(rational_pow(&q, -2), rat(9, 4));
        assert_eq!(rational_pow(&q, 0), rat(1, 1));
        assert_eq!(rational_pow(&q, 3), rat(8, 27));
    }

    #[test]
    fn inversion_negates_exponents() {
        let p = &LaurentPoly::q_power(-1) - &LaurentPoly::q_power(1);
        let inv = p.invert_q();
        let expect = &LaurentPoly::q_power(1) - &LaurentPoly::q_power(-1);
        assert_eq!(inv, expect);
    }

    #[test]
    fn display_matches_convention() {
        let p = &LaurentPoly::q_power(-1) - &LaurentPoly::q_power(1);
        assert_eq!(p.to_string(), "q^-1 - q");
        let b3 = &(&LaurentPoly::q_power(-2) + &LaurentPoly::one()) + &LaurentPoly::q_power(2);
        assert_eq!(b3.to_string(), "q^-2 + 1 + q^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let c = LaurentPoly::monomial(2, rat(-3, 2));
        assert_eq!(c.to_string(), "-3/2*q^2");
    }
}
