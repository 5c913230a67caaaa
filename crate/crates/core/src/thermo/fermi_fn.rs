//! The generalized Fermi-Dirac functions `f_nu(y) = sum_r (-1)^{r+1} y^r / r^nu`.
//!
//! Three evaluation routes, exposed separately so they can cross-check each
//! other:
//!   * alternating series — converges for `y <= 1`, error bounded by the
//!     first omitted term;
//!   * quadrature of `f_nu(y) = (1/Gamma(nu)) ∫ t^{nu-1} / (y^-1 e^t + 1) dt`,
//!     valid for every `y > 0` and parametrized by `ln y` so the degenerate
//!     regime needs no exponentials of large arguments;
//!   * the degenerate (Sommerfeld) expansion in powers of `(ln y)^-2`, used
//!     far into the degenerate regime where quadrature is wasteful.

use super::ThermoError;

/// Value with an error estimate and the work spent producing it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    /// Series terms or integrand evaluations.
    pub terms_used: usize,
    pub method: EvalMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMethod {
    Series,
    Integral,
    Sommerfeld,
}

/// Below this fugacity argument the alternating series is the default route.
const SERIES_CUTOFF: f64 = 0.95;
/// Beyond this `ln y` the Sommerfeld expansion is more accurate than
/// quadrature (next omitted term ~ L^-6).
const ASYMPTOTIC_CUTOFF_LN: f64 = 300.0;

const MAX_SERIES_TERMS: usize = 200_000;
const MAX_QUAD_EVALS: usize = 400_000;

/// Evaluate `f_nu(y)` choosing the route by the size of `y`.
pub fn f_nu(nu: f64, y: f64, tol: f64) -> Result<SeriesResult, ThermoError> {
    assert!(nu > 0.0, "nu must be positive");
    if !y.is_finite() || y <= 0.0 {
        return Err(ThermoError::NonpositiveArgument(y));
    }
    if y <= SERIES_CUTOFF {
        f_nu_series(nu, y, tol)
    } else {
        f_nu_ln(nu, y.ln(), tol)
    }
}

/// Evaluate `f_nu(e^L)` given `L = ln y`; safe arbitrarily deep into the
/// degenerate regime.
pub fn f_nu_ln(nu: f64, ln_y: f64, tol: f64) -> Result<SeriesResult, ThermoError> {
    assert!(nu > 0.0, "nu must be positive");
    if !ln_y.is_finite() {
        return Err(ThermoError::NonpositiveArgument(ln_y));
    }
    if ln_y <= SERIES_CUTOFF.ln() {
        f_nu_series(nu, ln_y.exp(), tol)
    } else if ln_y <= ASYMPTOTIC_CUTOFF_LN {
        f_nu_integral_ln(nu, ln_y, tol)
    } else {
        Ok(f_nu_asymptotic(nu, ln_y))
    }
}

/// Alternating-series route. The terms `y^r / r^nu` decrease strictly for
/// `y <= 1`, so the absolute error is bounded by the first omitted term.
pub fn f_nu_series(nu: f64, y: f64, tol: f64) -> Result<SeriesResult, ThermoError> {
    assert!(nu > 0.0, "nu must be positive");
    if !y.is_finite() || y <= 0.0 {
        return Err(ThermoError::NonpositiveArgument(y));
    }
    if y > 1.0 {
        return Err(ThermoError::SeriesDiverges(y));
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut y_pow = 1.0f64;
    for r in 1..=MAX_SERIES_TERMS {
        y_pow *= y;
        let mag = y_pow / (r as f64).powf(nu);
        let term = if r % 2 == 1 { mag } else { -mag };
        let t = sum + (term + comp);
        comp = (term + comp) - (t - sum);
        sum = t;
        let next = y_pow * y / ((r + 1) as f64).powf(nu);
        if next < tol {
            return Ok(SeriesResult {
                value: sum,
                abs_err_estimate: next,
                terms_used: r,
                method: EvalMethod::Series,
            });
        }
    }
    let next = y_pow * y / ((MAX_SERIES_TERMS + 1) as f64).powf(nu);
    Err(ThermoError::ToleranceNotReached {
        tol,
        best: sum,
        err: next,
        terms: MAX_SERIES_TERMS,
    })
}

/// Quadrature route for any `y > 0`.
pub fn f_nu_integral(nu: f64, y: f64, tol: f64) -> Result<SeriesResult, ThermoError> {
    if !y.is_finite() || y <= 0.0 {
        return Err(ThermoError::NonpositiveArgument(y));
    }
    f_nu_integral_ln(nu, y.ln(), tol)
}

/// Quadrature of `(1/Gamma(nu)) ∫_0^∞ t^{nu-1} / (e^{t-L} + 1) dt` after the
/// substitution `t = u^p`, which removes the fractional-power singularity at
/// the origin (`p = 2` suffices for `nu >= 1/2`).
fn f_nu_integral_ln(nu: f64, ln_y: f64, tol: f64) -> Result<SeriesResult, ThermoError> {
    assert!(nu > 0.0, "nu must be positive");
    let l = ln_y;
    let p = if nu >= 0.5 { 2.0 } else { 2.0 / nu };
    // integrand decays like e^{-(u^p - L)}; 45 e-foldings past the edge
    let u_max = (l.max(0.0) + 45.0).powf(1.0 / p);
    let g = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let t = u.powf(p);
        p * u.powf(p * nu - 1.0) / ((t - l).exp() + 1.0)
    };
    // coarse magnitude estimate to scale the absolute tolerance
    let coarse = simpson_panel(&g, 0.0, u_max);
    let tol_abs = tol * coarse.abs().max(1.0);
    let mut evals = 3usize;
    let (raw, err) = adaptive_simpson(&g, 0.0, u_max, tol_abs, &mut evals)?;
    let gam = gamma(nu);
    Ok(SeriesResult {
        value: raw / gam,
        abs_err_estimate: err / gam,
        terms_used: evals,
        method: EvalMethod::Integral,
    })
}

/// Degenerate expansion `f_nu(e^L) = L^nu/Gamma(nu+1) [1 + c1 L^-2 + c2 L^-4]`
/// with `c1 = nu(nu-1) pi^2/6` and `c2 = nu(nu-1)(nu-2)(nu-3) 7 pi^4/360`.
fn f_nu_asymptotic(nu: f64, l: f64) -> SeriesResult {
    let pi = std::f64::consts::PI;
    let c1 = nu * (nu - 1.0) * pi * pi / 6.0;
    let c2 = nu * (nu - 1.0) * (nu - 2.0) * (nu - 3.0) * 7.0 * pi.powi(4) / 360.0;
    let c3 =
        nu * (nu - 1.0) * (nu - 2.0) * (nu - 3.0) * (nu - 4.0) * (nu - 5.0) * 31.0 * pi.powi(6)
            / 15_120.0;
    let lead = l.powf(nu) / gamma(nu + 1.0);
    let value = lead * (1.0 + c1 / (l * l) + c2 / l.powi(4));
    let err = lead * (c3.abs() / l.powi(6) + (-l).exp());
    SeriesResult {
        value,
        abs_err_estimate: err,
        terms_used: 3,
        method: EvalMethod::Sommerfeld,
    }
}

/// Three-point Simpson rule over one panel.
fn simpson_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

/// Classic adaptive Simpson with Richardson correction.
fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol_abs: f64,
    evals: &mut usize,
) -> Result<(f64, f64), ThermoError> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
        evals: &mut usize,
    ) -> Result<(f64, f64), ThermoError> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        *evals += 2;
        if *evals > MAX_QUAD_EVALS {
            return Err(ThermoError::ToleranceNotReached {
                tol,
                best: whole,
                err: f64::INFINITY,
                terms: *evals,
            });
        }
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
        }
        let (lv, le) = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals)?;
        let (rv, re) = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals)?;
        Ok((lv + rv, le + re))
    }

    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    *evals += 3;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol_abs, 48, evals)
}

/// Lanczos approximation (g = 7, 9 coefficients), accurate to ~1e-15 relative
/// over the arguments used here.
pub fn gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    #[allow(clippy::excessive_precision)]
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let pi = std::f64::consts::PI;
    if x < 0.5 {
        // reflection
        return pi / ((pi * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    (2.0 * pi).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_integers() {
        let sp = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5) - sp).abs() < 1e-14);
        assert!((gamma(1.5) - 0.5 * sp).abs() < 1e-15);
        assert!((gamma(2.5) - 0.75 * sp).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
    }

    #[test]
    fn small_y_two_term_expansion() {
        // f_{5/2}(0.01) = 0.01 - 0.0001 * 2^{-5/2} + O(1e-7)
        let r = f_nu(2.5, 0.01, 1e-14).unwrap();
        let two_term = 0.01 - 0.0001 * 2.0f64.powf(-2.5);
        assert!((r.value - two_term).abs() < 1e-7);
        assert_eq!(r.method, EvalMethod::Series);
        assert!(r.abs_err_estimate < 1e-14);
    }

    #[test]
    fn vanishes_at_zero_argument() {
        let r = f_nu(1.5, 1e-280, 1e-14).unwrap();
        assert!(r.value.abs() < 1e-279);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            f_nu(1.5, 0.0, 1e-10),
            Err(ThermoError::NonpositiveArgument(_))
        ));
        assert!(matches!(
            f_nu(1.5, -2.0, 1e-10),
            Err(ThermoError::NonpositiveArgument(_))
        ));
        assert!(matches!(
            f_nu_series(1.5, 1.2, 1e-10),
            Err(ThermoError::SeriesDiverges(_))
        ));
    }

    #[test]
    fn budget_exhaustion_carries_best_estimate() {
        // at y = 1 the series converges far too slowly for this tolerance;
        // the error must still hand back a usable partial sum
        match f_nu_series(1.5, 1.0, 1e-12) {
            Err(ThermoError::ToleranceNotReached { best, terms, .. }) => {
                assert_eq!(terms, 200_000);
                // eta(3/2) = 0.7651470246254080
                assert!((best - 0.7651470246254080).abs() < 1e-8, "{best}");
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn series_and_integral_agree() {
        for nu in [1.5, 2.5] {
            for y in [0.1, 0.5, 0.9] {
                let s = f_nu_series(nu, y, 1e-14).unwrap();
                let i = f_nu_integral(nu, y, 1e-13).unwrap();
                assert!(
                    (s.value - i.value).abs() < 1e-10,
                    "nu={nu} y={y}: {} vs {}",
                    s.value,
                    i.value
                );
            }
        }
    }

    #[test]
    fn dispatcher_is_continuous_at_the_series_cutoff() {
        // just above the cutoff the dispatcher goes to quadrature; the series
        // is still valid there and both must agree
        let auto = f_nu(1.5, 0.96, 1e-13).unwrap();
        assert_eq!(auto.method, EvalMethod::Integral);
        let series = f_nu_series(1.5, 0.96, 1e-14).unwrap();
        assert!((auto.value - series.value).abs() < 1e-10);
        let below = f_nu(1.5, 0.94, 1e-13).unwrap();
        assert_eq!(below.method, EvalMethod::Series);
    }

    #[test]
    fn eta_function_at_unit_argument() {
        // f_nu(1) = (1 - 2^{1-nu}) zeta(nu); for nu = 5/2:
        // 0.8671998890121841 (Dirichlet eta at 5/2)
        let i = f_nu_integral(2.5, 1.0, 1e-13).unwrap();
        assert!((i.value - 0.8671998890121841).abs() < 1e-10, "{}", i.value);
    }

    #[test]
    fn integral_matches_asymptotics_at_crossover() {
        for nu in [1.5, 2.5] {
            let l = 295.0;
            let a = f_nu_asymptotic(nu, l);
            let i = f_nu_integral_ln(nu, l, 1e-13).unwrap();
            assert!(
                ((a.value - i.value) / i.value).abs() < 1e-11,
                "nu={nu}: {} vs {}",
                a.value,
                i.value
            );
        }
        // the dispatcher switches route at the cutoff, and both routes agree
        // at the same argument on either side of it
        let lo = f_nu_ln(1.5, 299.999, 1e-13).unwrap();
        assert_eq!(lo.method, EvalMethod::Integral);
        let lo_somm = f_nu_asymptotic(1.5, 299.999);
        assert!(((lo.value - lo_somm.value) / lo.value).abs() < 1e-11);
        let hi = f_nu_ln(1.5, 300.001, 1e-13).unwrap();
        assert_eq!(hi.method, EvalMethod::Sommerfeld);
        let hi_quad = f_nu_integral_ln(1.5, 300.001, 1e-13).unwrap();
        assert!(((hi.value - hi_quad.value) / hi.value).abs() < 1e-11);
    }

    #[test]
    fn degenerate_regime_values() {
        // at ln y = 10 the order-2 Sommerfeld form is good to ~1e-4 relative
        let i = f_nu_integral_ln(1.5, 10.0, 1e-13).unwrap();
        let pi = std::f64::consts::PI;
        let somm = 4.0 / (3.0 * pi.sqrt()) * 10.0f64.powf(1.5) * (1.0 + pi * pi / 800.0);
        assert!(((i.value - somm) / i.value).abs() < 1e-3);
        assert!(((i.value - somm) / i.value).abs() > 1e-6); // the difference is real
    }
}
