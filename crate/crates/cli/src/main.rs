//! Command-line front end: every operation family as one subcommand emitting
//! a CSV or JSON table (reduced units k = h = m = 1 throughout).
//!
//! Exit codes: 0 success, 1 self-test or numeric failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use qfermi::{AlgebraKind, BasicKind, DerivKind};
use qfermi_cli::commands::{
    self, cmd_basic, cmd_betas, cmd_dist, cmd_fermifn, cmd_jd, cmd_mu, cmd_selftest, cmd_spectrum,
    cmd_thermo, cmd_virial, CliError, FermiMethod, Quantity, SweepSpec,
};
use qfermi_cli::table::{Cell, Table};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qfermi",
    version,
    about = "Deformed-fermion algebras, Jackson derivatives and gas thermodynamics",
    long_about = "Tables for deformed-fermion oscillator algebras and the thermodynamics of \
                  the exclusion-obeying deformed Fermi gas. All thermodynamic quantities are \
                  in reduced units k = h = m = 1; the thermal wavelength is derived from the \
                  temperature as lambda^3 = (2 pi T)^(-3/2)."
)]
struct Cli {
    /// Output format for tables
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Significant digits for numeric cells
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(3..=17))]
    precision: u8,

    /// Write output to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

impl From<AlgebraArg> for AlgebraKind {
    fn from(a: AlgebraArg) -> Self {
        match a {
            AlgebraArg::A => AlgebraKind::A,
            AlgebraArg::B => AlgebraKind::B,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasicArg {
    Fermion,
    Boson,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DerivArg {
    Fermionic,
    Bosonic,
    Ordinary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Series,
    Integral,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuantityArg {
    #[value(name = "P")]
    P,
    #[value(name = "U")]
    U,
    #[value(name = "S")]
    S,
    #[value(name = "n")]
    N,
    #[value(name = "mu")]
    Mu,
}

#[derive(Subcommand)]
enum Command {
    /// Number-operator eigenvalue sequence of one deformed algebra
    Betas {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        /// Largest occupation number n to print
        #[arg(long)]
        n_max: u32,
        /// Deformation parameter in (0, 1] for the numeric column
        #[arg(long)]
        q: Option<f64>,
        /// Add the exact Laurent-polynomial column
        #[arg(long)]
        exact: bool,
    },
    /// Fermionic and bosonic basic numbers and factorials
    Basic {
        #[arg(long, value_enum)]
        kind: BasicArg,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        exact: bool,
        /// Print [n]! instead of [n]
        #[arg(long)]
        factorial: bool,
    },
    /// Deformed-oscillator energy levels and ladder-state norms
    Spectrum {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar_omega: f64,
    },
    /// Apply a Jackson derivative to polynomial coefficients
    Jd {
        #[arg(long, value_enum)]
        kind: DerivArg,
        /// Comma-separated coefficients c0,c1,... of sum c_k x^k
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        q: f64,
        /// Also evaluate the literal difference quotient at this point
        #[arg(long)]
        at: Option<f64>,
    },
    /// Generalized Fermi-Dirac function f_nu at a list of arguments
    Fermifn {
        #[arg(long)]
        nu: f64,
        /// Comma-separated arguments y = q^-1 z
        #[arg(long)]
        y_list: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Occupation curves: simplified, arcsin and exact-trace forms
    Dist {
        #[arg(long)]
        q: f64,
        /// Temperature (reduced units)
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Chemical potential
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        /// Energy sweep, e.g. E:-2:2:81
        #[arg(long)]
        sweep: String,
    },
    /// One thermodynamic quantity over a sweep in z, T or q
    Thermo {
        #[arg(long)]
        q: f64,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// Sweep spec VAR:MIN:MAX:POINTS[:log], e.g. z:0.01:10:40:log
        #[arg(long)]
        sweep: String,
        /// Fixed temperature for z and q sweeps
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Fixed fugacity for T and q sweeps
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        /// Fermi energy used by --quantity mu
        #[arg(long, default_value_t = 1.0)]
        fermi_energy: f64,
    },
    /// Virial coefficients per deformation value, with a cross-q deviation row
    Virial {
        /// Comma-separated deformation values
        #[arg(long)]
        q_list: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
    },
    /// Chemical potential against temperature by all three methods
    Mu {
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1.0)]
        fermi_energy: f64,
        /// Temperature sweep, e.g. T:0.01:0.5:50
        #[arg(long)]
        sweep: String,
    },
    /// Run the full invariant suite and print pass/fail per invariant
    Selftest {
        #[arg(long, hide = true)]
        inject_failure: bool,
    },
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| commands::usage(format!("bad {what} entry `{p}`")))
        })
        .collect()
}

fn parse_sweep(s: &str) -> Result<SweepSpec, CliError> {
    s.parse().map_err(commands::usage)
}

fn table_has_errors(table: &Table) -> bool {
    table
        .rows
        .iter()
        .flatten()
        .any(|c| matches!(c, Cell::Text(t) if t == "ERROR"))
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let precision = cli.precision as usize;
    let render = |table: Table| -> (String, u8) {
        let code = if table_has_errors(&table) { 1 } else { 0 };
        let text = match cli.format {
            Format::Csv => table.to_csv(precision),
            Format::Json => table.to_json(precision),
        };
        (text, code)
    };
    Ok(match cli.command {
        Command::Betas {
            algebra,
            n_max,
            q,
            exact,
        } => render(cmd_betas(algebra.into(), n_max, q, exact)?),
        Command::Basic {
            kind,
            n_max,
            q,
            exact,
            factorial,
        } => {
            let kind = match kind {
                BasicArg::Fermion => BasicKind::Fermion,
                BasicArg::Boson => BasicKind::Boson,
            };
            render(cmd_basic(kind, n_max, q, exact, factorial)?)
        }
        Command::Spectrum {
            n_max,
            q,
            hbar_omega,
        } => render(cmd_spectrum(n_max, q, hbar_omega)?),
        Command::Jd {
            kind,
            coeffs,
            q,
            at,
        } => {
            let kind = match kind {
                DerivArg::Fermionic => DerivKind::Fermionic,
                DerivArg::Bosonic => DerivKind::Bosonic,
                DerivArg::Ordinary => DerivKind::Ordinary,
            };
            let coeffs = parse_f64_list(&coeffs, "--coeffs")?;
            render(cmd_jd(kind, &coeffs, q, at)?)
        }
        Command::Fermifn {
            nu,
            y_list,
            tol,
            method,
        } => {
            let ys = parse_f64_list(&y_list, "--y-list")?;
            let method = match method {
                MethodArg::Auto => FermiMethod::Auto,
                MethodArg::Series => FermiMethod::Series,
                MethodArg::Integral => FermiMethod::Integral,
            };
            render(cmd_fermifn(nu, &ys, tol, method)?)
        }
        Command::Dist { q, t, mu, sweep } => render(cmd_dist(q, t, mu, &parse_sweep(&sweep)?)?),
        Command::Thermo {
            q,
            quantity,
            sweep,
            t,
            z,
            fermi_energy,
        } => {
            let quantity = match quantity {
                QuantityArg::P => Quantity::Pressure,
                QuantityArg::U => Quantity::InternalEnergy,
                QuantityArg::S => Quantity::Entropy,
                QuantityArg::N => Quantity::Density,
                QuantityArg::Mu => Quantity::ChemicalPotential,
            };
            render(cmd_thermo(
                q,
                quantity,
                &parse_sweep(&sweep)?,
                t,
                z,
                fermi_energy,
            )?)
        }
        Command::Virial { q_list, order } => {
            let qs = parse_f64_list(&q_list, "--q-list")?;
            render(cmd_virial(&qs, order)?)
        }
        Command::Mu {
            q,
            fermi_energy,
            sweep,
        } => render(cmd_mu(q, fermi_energy, &parse_sweep(&sweep)?)?),
        Command::Selftest { inject_failure } => {
            let (report, all_ok) = cmd_selftest(inject_failure);
            (report, if all_ok { 0 } else { 1 })
        }
    })
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Numeric(format!("writing standard output: {e}"))),
        Some(path) => std::fs::write(path, text)
            .map_err(|e| commands::usage(format!("writing {}: {e}", path.display()))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, code)) => {
            if let Err(e) = emit(&text, out.as_deref()) {
                eprintln!("{e}");
                return ExitCode::from(2);
            }
            if code != 0 {
                eprintln!("one or more rows failed; see ERROR markers");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Numeric(_) => ExitCode::from(1),
            }
        }
    }
}
