//! Table builders for each subcommand and the sweep-specification parser.

use crate::table::{Cell, Table};
use qfermi::{
    basic_boson, basic_factorial, basic_fermion, build_state_norm, chemical_potential, density,
    entropy_per_particle, exact_trace_occupation, f_nu, f_nu_integral, f_nu_series,
    internal_energy, jd_apply, jd_apply_pointwise, occupation_arcsin, occupation, pressure,
    oscillator_spectrum, solve_recurrence, virial_coefficients, AlgebraKind, BasicKind, Deformation,
    DerivKind, GasState, LaurentPoly, MuMethod, PolyFunc, ThermoError,
};
use std::str::FromStr;

/// Usage errors exit with code 2, numeric failures with code 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

pub fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

pub fn deformation(q: f64) -> Result<Deformation, CliError> {
    Deformation::new(q).map_err(|e| usage(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepVar {
    T,
    Z,
    E,
    Q,
    N,
}

/// `VAR:MIN:MAX:POINTS[:log]`, e.g. `z:0.01:10:50:log`.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 && parts.len() != 5 {
            return Err(format!("expected VAR:MIN:MAX:POINTS[:log], got `{s}`"));
        }
        let variable = match parts[0] {
            "T" | "t" => SweepVar::T,
            "z" => SweepVar::Z,
            "E" | "e" => SweepVar::E,
            "q" => SweepVar::Q,
            "n" => SweepVar::N,
            other => return Err(format!("unknown sweep variable `{other}`")),
        };
        let min: f64 = parts[1]
            .parse()
            .map_err(|_| format!("bad sweep minimum `{}`", parts[1]))?;
        let max: f64 = parts[2]
            .parse()
            .map_err(|_| format!("bad sweep maximum `{}`", parts[2]))?;
        let points: usize = parts[3]
            .parse()
            .map_err(|_| format!("bad point count `{}`", parts[3]))?;
        let log = match parts.get(4) {
            None => false,
            Some(&"log") => true,
            Some(&"linear") => false,
            Some(other) => return Err(format!("unknown scale `{other}`")),
        };
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(format!("sweep needs min < max, got {min} >= {max}"));
        }
        if points < 2 {
            return Err(format!("sweep needs at least 2 points, got {points}"));
        }
        if log && min <= 0.0 {
            return Err(format!("log scale needs min > 0, got {min}"));
        }
        Ok(SweepSpec {
            variable,
            min,
            max,
            points,
            log,
        })
    }
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                // endpoints land exactly on the requested bounds
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let frac = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.min.ln() + (self.max.ln() - self.min.ln()) * frac).exp()
                } else {
                    self.min + (self.max - self.min) * frac
                }
            })
            .collect()
    }
}

/// `betas`: eigenvalue sequence of one algebra, symbolic and/or numeric.
pub fn cmd_betas(
    algebra: AlgebraKind,
    n_max: u32,
    q: Option<f64>,
    exact: bool,
) -> Result<Table, CliError> {
    if q.is_none() && !exact {
        return Err(usage(
            "provide --q for numeric values and/or --exact for symbolic ones",
        ));
    }
    let q = q.map(deformation).transpose()?;
    let seq = solve_recurrence(algebra, n_max as usize + 1);
    let mut columns = vec!["n"];
    if exact {
        columns.push("laurent");
    }
    if q.is_some() {
        columns.push("value");
    }
    let mut table = Table::new(&columns);
    for (n, poly) in seq.values.iter().enumerate() {
        let mut row = vec![Cell::Int(n as i64)];
        if exact {
            row.push(Cell::Text(poly.to_string()));
        }
        if let Some(d) = q {
            row.push(Cell::Num(poly.eval_f64(d.value())));
        }
        table.push(row);
    }
    Ok(table)
}

/// `basic`: fermionic/bosonic basic numbers or factorials with their q -> 1
/// values.
pub fn cmd_basic(
    kind: BasicKind,
    n_max: u32,
    q: Option<f64>,
    exact: bool,
    factorial: bool,
) -> Result<Table, CliError> {
    if q.is_none() && !exact {
        return Err(usage(
            "provide --q for numeric values and/or --exact for symbolic ones",
        ));
    }
    let q = q.map(deformation).transpose()?;
    let mut columns = vec!["n"];
    if exact {
        columns.push("laurent");
    }
    if q.is_some() {
        columns.push("value");
    }
    columns.push("limit_q1");
    let mut table = Table::new(&columns);
    for n in 0..=n_max {
        let poly: LaurentPoly = if factorial {
            basic_factorial(n, kind)
        } else {
            basic_number(kind, n)
        };
        let mut row = vec![Cell::Int(n as i64)];
        if exact {
            row.push(Cell::Text(poly.to_string()));
        }
        if let Some(d) = q {
            row.push(Cell::Num(poly.eval_f64(d.value())));
        }
        row.push(Cell::Num(poly.eval_f64(1.0)));
        table.push(row);
    }
    Ok(table)
}

fn basic_number(kind: BasicKind, n: u32) -> LaurentPoly {
    match kind {
        BasicKind::Fermion => basic_fermion(n),
        BasicKind::Boson => basic_boson(n),
    }
}

/// `spectrum`: deformed-oscillator levels and the ladder state norms.
pub fn cmd_spectrum(n_max: u32, q: f64, hbar_omega: f64) -> Result<Table, CliError> {
    let d = deformation(q)?;
    if !hbar_omega.is_finite() || hbar_omega <= 0.0 {
        return Err(usage(format!(
            "--hbar-omega must be positive, got {hbar_omega}"
        )));
    }
    let levels = oscillator_spectrum(n_max, d, hbar_omega);
    let mut table = Table::new(&["n", "energy", "state_norm2"]);
    for (n, e) in levels.iter().enumerate() {
        let norm = build_state_norm(AlgebraKind::B, n as u32).eval_f64(d.value());
        table.push(vec![Cell::Int(n as i64), Cell::Num(*e), Cell::Num(norm)]);
    }
    Ok(table)
}

/// `jd`: apply a deformed derivative to polynomial coefficients, or compare
/// the pointwise difference quotient against the coefficient route at `x`.
pub fn cmd_jd(kind: DerivKind, coeffs: &[f64], q: f64, at: Option<f64>) -> Result<Table, CliError> {
    let d = deformation(q)?;
    let f = PolyFunc::new(coeffs.to_vec());
    let deriv = jd_apply(kind, &f, d).map_err(|e| usage(e.to_string()))?;
    match at {
        None => {
            let mut table = Table::new(&["power", "input_coeff", "deriv_coeff"]);
            let rows = f.coeffs().len().max(deriv.coeffs().len());
            for i in 0..rows {
                table.push(vec![
                    Cell::Int(i as i64),
                    Cell::Num(f.coeffs().get(i).copied().unwrap_or(0.0)),
                    Cell::Num(deriv.coeffs().get(i).copied().unwrap_or(0.0)),
                ]);
            }
            Ok(table)
        }
        Some(x) => {
            let pointwise =
                jd_apply_pointwise(kind, |u| f.eval(u), x, d).map_err(|e| usage(e.to_string()))?;
            let mut table = Table::new(&["x", "pointwise", "coefficient_route"]);
            table.push(vec![
                Cell::Num(x),
                Cell::Num(pointwise),
                Cell::Num(deriv.eval(x)),
            ]);
            Ok(table)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FermiMethod {
    Auto,
    Series,
    Integral,
}

/// `fermifn`: evaluate `f_nu` at a list of arguments.
pub fn cmd_fermifn(
    nu: f64,
    y_list: &[f64],
    tol: f64,
    method: FermiMethod,
) -> Result<Table, CliError> {
    if !nu.is_finite() || nu <= 0.0 {
        return Err(usage(format!("--nu must be positive, got {nu}")));
    }
    if !tol.is_finite() || tol <= 0.0 || tol >= 1.0 {
        return Err(usage(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let mut table = Table::new(&["nu", "y", "value", "abs_err", "terms", "method"]);
    for &y in y_list {
        let result = match method {
            FermiMethod::Auto => f_nu(nu, y, tol),
            FermiMethod::Series => f_nu_series(nu, y, tol),
            FermiMethod::Integral => f_nu_integral(nu, y, tol),
        };
        match result {
            Ok(r) => table.push(vec![
                Cell::Num(nu),
                Cell::Num(y),
                Cell::Num(r.value),
                Cell::Num(r.abs_err_estimate),
                Cell::Int(r.terms_used as i64),
                Cell::Text(format!("{:?}", r.method).to_lowercase()),
            ]),
            Err(_) => table.push(vec![
                Cell::Num(nu),
                Cell::Num(y),
                Cell::Text("ERROR".into()),
                Cell::Text("ERROR".into()),
                Cell::Int(0),
                Cell::Text("ERROR".into()),
            ]),
        }
    }
    Ok(table)
}

/// `dist`: the three occupation curves over an energy sweep.
pub fn cmd_dist(q: f64, t: f64, mu: f64, sweep: &SweepSpec) -> Result<Table, CliError> {
    let d = deformation(q)?;
    if sweep.variable != SweepVar::E {
        return Err(usage("dist sweeps over E (use --sweep E:...)"));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(usage(format!("--t must be positive, got {t}")));
    }
    let state = GasState::new(d, t, 1.0).map_err(|e| usage(e.to_string()))?;
    let mut table = Table::new(&["q", "E", "beta_eps", "n", "n_arcsin", "n_trace"]);
    for e in sweep.values() {
        let x = e - mu;
        table.push(vec![
            Cell::Num(q),
            Cell::Num(e),
            Cell::Num(x / t),
            Cell::Num(occupation(&state, x)),
            Cell::Num(occupation_arcsin(&state, x)),
            Cell::Num(exact_trace_occupation(d, x / t)),
        ]);
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Pressure,
    InternalEnergy,
    Entropy,
    Density,
    ChemicalPotential,
}

impl Quantity {
    fn column(self) -> &'static str {
        match self {
            Quantity::Pressure => "P",
            Quantity::InternalEnergy => "U_over_V",
            Quantity::Entropy => "S_over_Nk",
            Quantity::Density => "n_over_V",
            Quantity::ChemicalPotential => "mu",
        }
    }

    fn eval(self, state: &GasState) -> Result<f64, ThermoError> {
        match self {
            Quantity::Pressure => pressure(state),
            Quantity::InternalEnergy => internal_energy(state, 1.0),
            Quantity::Entropy => entropy_per_particle(state),
            Quantity::Density => density(state),
            Quantity::ChemicalPotential => unreachable!("mu handled separately"),
        }
    }
}

/// `thermo`: one thermodynamic quantity over a sweep in `z`, `T` or `q`.
/// Reduced units `k = h = m = 1` throughout.
pub fn cmd_thermo(
    q: f64,
    quantity: Quantity,
    sweep: &SweepSpec,
    t_fixed: f64,
    z_fixed: f64,
    fermi_energy: f64,
) -> Result<Table, CliError> {
    if quantity == Quantity::ChemicalPotential {
        if sweep.variable != SweepVar::T {
            return Err(usage("--quantity mu sweeps over T (use --sweep T:...)"));
        }
        return cmd_mu(q, fermi_energy, sweep);
    }
    let mut table = Table::new(&["q", "T", "z", "y", quantity.column()]);
    let mut push_point = |qv: f64, t: f64, z: f64| -> Result<(), CliError> {
        let d = deformation(qv)?;
        let state = GasState::new(d, t, z).map_err(|e| usage(e.to_string()))?;
        let value_cell = match quantity.eval(&state) {
            Ok(v) => Cell::Num(v),
            Err(_) => Cell::Text("ERROR".into()),
        };
        table.push(vec![
            Cell::Num(qv),
            Cell::Num(t),
            Cell::Num(z),
            Cell::Num(state.y()),
            value_cell,
        ]);
        Ok(())
    };
    match sweep.variable {
        SweepVar::Z => {
            for z in sweep.values() {
                push_point(q, t_fixed, z)?;
            }
        }
        SweepVar::T => {
            for t in sweep.values() {
                push_point(q, t, z_fixed)?;
            }
        }
        SweepVar::Q => {
            for qv in sweep.values() {
                push_point(qv, t_fixed, z_fixed)?;
            }
        }
        _ => return Err(usage("thermo sweeps over z, T or q")),
    }
    Ok(table)
}

/// `mu`: chemical potential against temperature for all three methods.
pub fn cmd_mu(q: f64, fermi_energy: f64, sweep: &SweepSpec) -> Result<Table, CliError> {
    let d = deformation(q)?;
    if sweep.variable != SweepVar::T {
        return Err(usage("mu sweeps over T (use --sweep T:...)"));
    }
    if !fermi_energy.is_finite() || fermi_energy <= 0.0 {
        return Err(usage(format!(
            "--fermi-energy must be positive, got {fermi_energy}"
        )));
    }
    let mut table = Table::new(&[
        "q",
        "T",
        "t_over_ef",
        "mu_exact",
        "mu_sommerfeld0",
        "mu_sommerfeld2",
    ]);
    for t in sweep.values() {
        let exact = chemical_potential(t, fermi_energy, d, MuMethod::Exact);
        let s0 = chemical_potential(t, fermi_energy, d, MuMethod::Sommerfeld0);
        let s2 = chemical_potential(t, fermi_energy, d, MuMethod::Sommerfeld2);
        let somm_cell = |r: Result<f64, ThermoError>| match r {
            Ok(v) => Cell::Num(v),
            Err(ThermoError::SommerfeldOutOfRange(_)) => Cell::Text("NA".into()),
            Err(_) => Cell::Text("ERROR".into()),
        };
        let exact_cell = match exact {
            Ok(v) => Cell::Num(v),
            Err(_) => Cell::Text("ERROR".into()),
        };
        table.push(vec![
            Cell::Num(q),
            Cell::Num(t),
            Cell::Num(t / fermi_energy),
            exact_cell,
            somm_cell(s0),
            somm_cell(s2),
        ]);
    }
    Ok(table)
}

/// `virial`: coefficients per q plus a trailing cross-q deviation row.
pub fn cmd_virial(q_list: &[f64], order: usize) -> Result<Table, CliError> {
    if !(2..=4).contains(&order) {
        return Err(usage(format!("--order must be 2..=4, got {order}")));
    }
    if q_list.is_empty() {
        return Err(usage("--q-list needs at least one value"));
    }
    let names: Vec<String> = (1..=order).map(|k| format!("a{k}")).collect();
    let mut columns = vec!["q".to_string()];
    columns.extend(names);
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);
    let mut all: Vec<Vec<f64>> = Vec::new();
    for &qv in q_list {
        let d = deformation(qv)?;
        let coeffs = virial_coefficients(order, d);
        let mut row = vec![Cell::Num(qv)];
        row.extend(coeffs.iter().map(|&c| Cell::Num(c)));
        table.push(row);
        all.push(coeffs);
    }
    let mut deviation_row = vec![Cell::Text("max_deviation".into())];
    for k in 0..order {
        let lo = all.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min);
        let hi = all.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max);
        deviation_row.push(Cell::Num(hi - lo));
    }
    table.push(deviation_row);
    Ok(table)
}

/// `selftest`: run the named invariant suite; the report is plain text.
pub fn cmd_selftest(inject_failure: bool) -> (String, bool) {
    let outcomes = qfermi::selftest::run(inject_failure);
    let mut out = String::new();
    for c in &outcomes {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} - {}\n", c.name, c.detail));
    }
    let passed = outcomes.iter().filter(|c| c.passed).count();
    let all_ok = passed == outcomes.len();
    out.push_str(&format!("{passed}/{} invariants passed\n", outcomes.len()));
    (out, all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s: SweepSpec = "z:0.1:10:5:log".parse().unwrap();
        assert_eq!(s.variable, SweepVar::Z);
        assert!(s.log);
        assert_eq!(s.values().len(), 5);
        assert!("z:5:1:10".parse::<SweepSpec>().is_err()); // min >= max
        assert!("z:0.1:10:1".parse::<SweepSpec>().is_err()); // too few points
        assert!("z:-1:10:5:log".parse::<SweepSpec>().is_err()); // log needs min > 0
        assert!("w:0:1:5".parse::<SweepSpec>().is_err()); // unknown variable
    }

    #[test]
    fn betas_examples() {
        // algebra A at q = 0.5: 0, 1, 0, 4, 0, 16
        let t = cmd_betas(AlgebraKind::A, 5, Some(0.5), false).unwrap();
        let values: Vec<f64> = t
            .rows
            .iter()
            .map(|r| match &r[1] {
                Cell::Num(v) => *v,
                _ => panic!(),
            })
            .collect();
        assert_eq!(values, vec![0.0, 1.0, 0.0, 4.0, 0.0, 16.0]);
        // algebra B symbolic row n = 2 prints q^-1 - q
        let t = cmd_betas(AlgebraKind::B, 2, None, true).unwrap();
        match &t.rows[2][1] {
            Cell::Text(s) => assert_eq!(s, "q^-1 - q"),
            _ => panic!(),
        }
        // vacuum-only table
        let t = cmd_betas(AlgebraKind::A, 0, Some(0.5), false).unwrap();
        assert_eq!(t.rows.len(), 1);
        // no --q and no --exact is a usage error
        assert!(matches!(
            cmd_betas(AlgebraKind::A, 3, None, false),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn virial_table_shape() {
        let t = cmd_virial(&[0.3, 0.7, 1.0], 3).unwrap();
        assert_eq!(t.rows.len(), 4);
        match &t.rows[3][0] {
            Cell::Text(s) => assert_eq!(s, "max_deviation"),
            _ => panic!(),
        }
        for cell in &t.rows[3][1..] {
            match cell {
                Cell::Num(v) => assert!(*v < 1e-8),
                _ => panic!(),
            }
        }
    }

    #[test]
    fn selftest_report() {
        let (report, ok) = cmd_selftest(false);
        assert!(ok, "{report}");
        assert!(report.contains("PASS basic.fermion_recurrence_exact"));
        let (report, ok) = cmd_selftest(true);
        assert!(!ok);
        assert!(report.contains("FAIL injected.failure_hook"));
    }

    #[test]
    fn thermo_mu_delegates_to_temperature_sweep() {
        let sweep: SweepSpec = "T:0.001:0.01:3".parse().unwrap();
        let t = cmd_thermo(0.5, Quantity::ChemicalPotential, &sweep, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(t.columns[3], "mu_exact");
        // near T = 0 the exact column approaches the Fermi energy
        match &t.rows[0][3] {
            Cell::Num(v) => assert!((v - 1.0).abs() < 0.01, "{v}"),
            other => panic!("{other:?}"),
        }
        // and a z-sweep for mu is rejected
        let bad: SweepSpec = "z:0.1:1:3".parse().unwrap();
        assert!(matches!(
            cmd_thermo(0.5, Quantity::ChemicalPotential, &bad, 1.0, 1.0, 1.0),
            Err(CliError::Usage(_))
        ));
    }
}
