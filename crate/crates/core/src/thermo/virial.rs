//! Virial coefficients of the deformed gas by exact power-series reversion.
//!
//! Both `P lambda^3 / T` and `n lambda^3` are power series in `y = q^-1 z`
//! whose coefficients `(-1)^{r+1} r^{-nu}` live in the quadratic field
//! Q(sqrt 2, sqrt 3) for orders up to 4. The reversion and the composition are
//! done exactly over that field, so the coefficients carry no numerical
//! reversion noise, and the deformation parameter never appears: the virial
//! coefficients are q-independent by construction.

use crate::basic::Deformation;
use num::{BigRational, One, ToPrimitive, Zero};

/// Element of Q(sqrt 2, sqrt 3) on the basis {1, sqrt2, sqrt3, sqrt6}.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Surd {
    c: [BigRational; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl Surd {
    pub(crate) fn zero() -> Self {
        Self {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub(crate) fn from_rat(r: BigRational) -> Self {
        let mut s = Self::zero();
        s.c[0] = r;
        s
    }

    pub(crate) fn one() -> Self {
        Self::from_rat(BigRational::one())
    }

    /// `r * sqrt2^i2 * sqrt3^i3` on the basis slot for (i2, i3) in {0,1}^2.
    fn term(slot: usize, r: BigRational) -> Self {
        let mut s = Self::zero();
        s.c[slot] = r;
        s
    }

    pub(crate) fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.c[i] = &self.c[i] + &o.c[i];
        }
        out
    }

    pub(crate) fn sub(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            out.c[i] = &self.c[i] - &o.c[i];
        }
        out
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        let a = &self.c;
        let b = &o.c;
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        let mut out = Self::zero();
        // basis products: s2*s2 = 2, s3*s3 = 3, s2*s3 = s6, s6*s2 = 2 s3,
        // s6*s3 = 3 s2, s6*s6 = 6
        out.c[0] = &a[0] * &b[0]
            + &two * &(&a[1] * &b[1])
            + &three * &(&a[2] * &b[2])
            + &six * &(&a[3] * &b[3]);
        out.c[1] = &a[0] * &b[1] + &a[1] * &b[0] + &three * &(&a[2] * &b[3] + &a[3] * &b[2]);
        out.c[2] = &a[0] * &b[2] + &a[2] * &b[0] + &two * &(&a[1] * &b[3] + &a[3] * &b[1]);
        out.c[3] = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        out
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    pub(crate) fn to_f64(&self) -> f64 {
        self.c[0].to_f64().unwrap()
            + self.c[1].to_f64().unwrap() * 2.0f64.sqrt()
            + self.c[2].to_f64().unwrap() * 3.0f64.sqrt()
            + self.c[3].to_f64().unwrap() * 6.0f64.sqrt()
    }
}

/// Truncated power series `sum_k c[k] w^k`, k <= 4.
type Series5 = [Surd; 5];

fn series_zero() -> Series5 {
    [
        Surd::zero(),
        Surd::zero(),
        Surd::zero(),
        Surd::zero(),
        Surd::zero(),
    ]
}

fn series_mul(a: &Series5, b: &Series5) -> Series5 {
    let mut out = series_zero();
    for i in 0..5 {
        for j in 0..5 - i {
            if a[i].is_zero() || b[j].is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

/// `f(g(w))` truncated at order 4; both must have zero constant term.
fn series_compose(f: &Series5, g: &Series5) -> Series5 {
    debug_assert!(f[0].is_zero() && g[0].is_zero());
    let mut out = series_zero();
    let mut g_pow = series_zero();
    g_pow[0] = Surd::one();
    for coeff in f.iter().skip(1) {
        g_pow = series_mul(&g_pow, g);
        if coeff.is_zero() {
            continue;
        }
        for k in 0..5 {
            out[k] = out[k].add(&coeff.mul(&g_pow[k]));
        }
    }
    out
}

/// `(-1)^{r+1} r^{-nu_half/2}` for r = 1..4 as exact surds, for
/// `nu_half ∈ {3, 5}` (i.e. nu = 3/2 or 5/2).
fn fd_series(nu_half: u32) -> Series5 {
    // r^{-3/2}: 1, sqrt2/4, sqrt3/9, 1/8   r^{-5/2}: 1, sqrt2/8, sqrt3/27, 1/32
    let coeffs: [Surd; 4] = match nu_half {
        3 => [
            Surd::one(),
            Surd::term(1, rat(1, 4)),
            Surd::term(2, rat(1, 9)),
            Surd::from_rat(rat(1, 8)),
        ],
        5 => [
            Surd::one(),
            Surd::term(1, rat(1, 8)),
            Surd::term(2, rat(1, 27)),
            Surd::from_rat(rat(1, 32)),
        ],
        _ => unreachable!("only nu = 3/2 and 5/2 appear in the equation of state"),
    };
    let mut s = series_zero();
    for (r, c) in coeffs.into_iter().enumerate() {
        let signed = if r % 2 == 0 { c } else { Surd::zero().sub(&c) };
        s[r + 1] = signed;
    }
    s
}

/// Invert `w = y + b2 y^2 + b3 y^3 + b4 y^4` to `y(w)` by fixed-point
/// iteration; each pass gains one order, four passes are exact at order 4.
fn series_revert(b: &Series5) -> Series5 {
    debug_assert!(b[0].is_zero() && b[1] == Surd::one());
    let mut w = series_zero();
    w[1] = Surd::one();
    let mut y = w.clone();
    for _ in 0..4 {
        // y <- w - (b(y) - y)
        let by = series_compose(b, &y);
        let mut next = w.clone();
        for k in 0..5 {
            next[k] = next[k].sub(&by[k]).add(&y[k]);
        }
        y = next;
    }
    y
}

/// Exact virial coefficients `a_1 ..= a_4` of `Pv/kT = sum a_k (lambda^3/v)^{k-1}`.
pub(crate) fn virial_exact() -> [Surd; 4] {
    let density = fd_series(3); // n lambda^3 as a series in y
    let pressure = fd_series(5); // P lambda^3 / T as a series in y
    let y_of_w = series_revert(&density);
    let p_of_w = series_compose(&pressure, &y_of_w);
    // Pv/kT = (P lambda^3/T) / (n lambda^3), i.e. drop one power of w
    [
        p_of_w[1].clone(),
        p_of_w[2].clone(),
        p_of_w[3].clone(),
        p_of_w[4].clone(),
    ]
}

/// Virial coefficients `a_1 ..= a_order` as floats, `2 <= order <= 4`.
///
/// The deformation parameter enters the equation of state only through
/// `y = q^-1 z`, which the reversion eliminates, so the result does not
/// depend on `q`; the argument is kept to make that explicit at call sites.
pub fn virial_coefficients(order: usize, q: Deformation) -> Vec<f64> {
    assert!(
        (2..=4).contains(&order),
        "virial order must be 2..=4, got {order}"
    );
    let _ = q;
    virial_exact()
        .iter()
        .take(order)
        .map(Surd::to_f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::fermi_fn::f_nu_series;

    #[test]
    fn surd_field_arithmetic() {
        let s2 = Surd::term(1, rat(1, 1));
        let s3 = Surd::term(2, rat(1, 1));
        assert_eq!(s2.mul(&s2), Surd::from_rat(rat(2, 1)));
        assert_eq!(s3.mul(&s3), Surd::from_rat(rat(3, 1)));
        let s6 = s2.mul(&s3);
        assert_eq!(s6, Surd::term(3, rat(1, 1)));
        assert_eq!(s6.mul(&s6), Surd::from_rat(rat(6, 1)));
        assert!((s6.to_f64() - 6.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reversion_round_trips_exactly() {
        let density = fd_series(3);
        let y_of_w = series_revert(&density);
        let identity = series_compose(&density, &y_of_w);
        assert!(identity[0].is_zero());
        assert_eq!(identity[1], Surd::one());
        for (k, residue) in identity.iter().enumerate().skip(2) {
            assert!(residue.is_zero(), "order {k} residue {residue:?}");
        }
    }

    #[test]
    fn closed_form_coefficients() {
        let a = virial_exact();
        assert_eq!(a[0], Surd::one());
        // a2 = 2^{-5/2} = sqrt2 / 8
        assert_eq!(a[1], Surd::term(1, rat(1, 8)));
        // a3 = 1/8 - 2 * 3^{-5/2} = 1/8 - (2/27) sqrt3
        let a3 = Surd::from_rat(rat(1, 8)).sub(&Surd::term(2, rat(2, 27)));
        assert_eq!(a[2], a3);
        assert!((a[1].to_f64() - 2.0f64.powf(-2.5)).abs() < 1e-15);
        assert!((a[2].to_f64() - (0.125 - 2.0 * 3.0f64.powf(-2.5))).abs() < 1e-15);
        // a4 frozen from the exact reversion, checked against the equation of
        // state below
        assert!(
            (a[3].to_f64() - 1.1128932846657391e-4).abs() < 1e-15,
            "{}",
            a[3].to_f64()
        );
    }

    #[test]
    fn q_argument_does_not_matter() {
        let a1 = virial_coefficients(4, Deformation::new(0.3).unwrap());
        let a2 = virial_coefficients(4, Deformation::ONE);
        assert_eq!(a1, a2);
    }

    /// The compressibility ratio straight from the equation of state at a
    /// given `w = n lambda^3`.
    fn eos_ratio(w: f64) -> f64 {
        // solve f_{3/2}(y) = w by bisection on the exact series
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f_nu_series(1.5, mid, 1e-16).unwrap().value < w {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        f_nu_series(2.5, 0.5 * (lo + hi), 1e-16).unwrap().value / w
    }

    /// Independent route: compare the polynomial against the actual equation
    /// of state at small density, where the truncation error is ~ a5 w^4.
    #[test]
    fn matches_equation_of_state_numerically() {
        let a = virial_coefficients(4, Deformation::ONE);
        for w in [1e-3, 1e-2] {
            let ratio = eos_ratio(w);
            let poly: f64 = a
                .iter()
                .enumerate()
                .map(|(k, ak)| ak * w.powi(k as i32))
                .sum();
            assert!(
                (ratio - poly).abs() < 1e-10,
                "w = {w}: eos {ratio} vs virial {poly}"
            );
        }
        // pin a4 itself: the cubic-order residue of the ratio, with the a5
        // contamination removed by linear extrapolation in w
        let measure = |w: f64| (eos_ratio(w) - (a[0] + a[1] * w + a[2] * w * w)) / (w * w * w);
        let (w1, w2) = (0.006, 0.012);
        let (m1, m2) = (measure(w1), measure(w2));
        let a4_extrap = m1 + (m1 - m2) * w1 / (w2 - w1);
        assert!(
            (a4_extrap - a[3]).abs() < 3e-6,
            "a4 from eos {a4_extrap} vs reversion {}",
            a[3]
        );
    }
}
