use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use su11::numeric::{fd_spectrum, refinement_ratios, Verifier};
use su11::opalg::{commutator, ParameterSet};
use su11::report::{parse_operator_expression, print_operator, render_report, run_suite, CaseConfig, Check, Format, SuiteConfig};
use su11::systems::{build_generators, factorization_residuals, factorize_system, Direction, SystemKind, Variable};

/// Build and verify su(1,1) ladder operators for radial Schrödinger problems.
#[derive(Parser)]
#[command(name = "su11", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symbolic operator algebra.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Solve the factorization ansatz and check both identities.
    Factorize {
        #[arg(long, value_parser = parse_kind)]
        system: SystemKind,
    },
    /// Numeric ladder checks on the closed-form eigenfunctions.
    #[command(subcommand)]
    Ladder(LadderCommand),
    /// Finite-difference spectrum of G3 against the closed-form levels.
    Spectrum {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 2000)]
        points: usize,
        #[arg(long, default_value_t = 5)]
        levels: usize,
    },
    /// Batch verification suites.
    #[command(subcommand)]
    Suite(SuiteCommand),
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Check the su(1,1) commutation relations with symbolic parameters.
    Verify {
        #[arg(long, value_parser = parse_kind)]
        system: Option<SystemKind>,
    },
    /// Print the canonical form of [A, B].
    Commutator { a: String, b: String },
}

#[derive(Subcommand)]
enum LadderCommand {
    /// Raise and lower U_0 … U_nmax and compare with the predicted coefficients.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run a suite; without --config the built-in default suite is used.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override nmax in every case.
        #[arg(long)]
        nmax: Option<u32>,
        /// Override the checks of every case (comma separated).
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Option<Vec<Check>>,
    },
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long, value_parser = parse_kind)]
    system: SystemKind,
    #[arg(long)]
    dim: u32,
    #[arg(long = "l")]
    ell: u32,
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long = "C")]
    c: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
}

impl SystemArgs {
    fn case(&self) -> CaseConfig {
        let mut case = CaseConfig::new(self.system, self.dim, self.ell);
        case.a = self.a;
        case.b = self.b;
        case.c = self.c;
        case.xi = self.xi;
        case
    }
}

fn parse_kind(s: &str) -> Result<SystemKind, String> {
    s.parse().map_err(|e: su11::systems::SystemError| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn algebra_verify(system: Option<SystemKind>) -> Result<bool, String> {
    let kinds: Vec<SystemKind> = system.map_or(SystemKind::ALL.to_vec(), |k| vec![k]);
    let mut all = true;
    for kind in kinds {
        for variable in [Variable::X, Variable::R] {
            let Ok(g) = build_generators(kind, variable) else { continue };
            let residuals = g.closure_residuals().map_err(|e| e.to_string())?;
            let pass = residuals.iter().all(|r| r.is_zero());
            all &= pass;
            println!("{:<16} {variable}: [G+,G3] = -G+, [G-,G3] = G-, [G+,G-] = -2G3 ... {}", kind.name(), verdict(pass));
            for r in residuals.iter().filter(|r| !r.is_zero()) {
                println!("    residual {}", print_operator(r));
            }
        }
    }
    Ok(all)
}

fn factorize(kind: SystemKind) -> Result<bool, String> {
    let params = ParameterSet::standard();
    let show = |c: &su11::opalg::Coefficient| print_operator(&su11::opalg::DiffOperator::scalar(params.clone(), c.clone()));
    for s in factorize_system(kind).map_err(|e| e.to_string())? {
        println!(
            "{:?}: a = {}, b = {}, c = {}, f = {}, g = {}",
            s.branch,
            show(&s.a),
            show(&s.b),
            show(&s.c),
            show(&s.f),
            show(&s.g)
        );
    }
    let r = factorization_residuals(kind).map_err(|e| e.to_string())?;
    println!("raising-first identity residual:  {}", print_operator(&r.raising_first));
    println!("lowering-first identity residual: {}", print_operator(&r.lowering_first));
    Ok(r.is_zero())
}

fn ladder_verify(args: &SystemArgs, nmax: u32, tol: f64) -> Result<bool, String> {
    let spec = args.case().spec()?;
    let verifier = Verifier::new(&spec, nmax).map_err(|e| e.to_string())?;
    println!("{spec}");
    println!("{:>3} {:>5} {:>22} {:>22} {:>10} {:>5}", "n", "dir", "predicted", "measured", "residual", "");
    let mut all = true;
    for n in 0..=nmax {
        for direction in [Direction::Raise, Direction::Lower] {
            let r = verifier.ladder(n, direction, tol).map_err(|e| e.to_string())?;
            all &= r.pass;
            println!(
                "{:>3} {:>5} {:>22.15} {:>22.15} {:>10.2e} {:>5}",
                n,
                direction.name(),
                r.predicted,
                r.measured,
                r.residual,
                verdict(r.pass)
            );
        }
    }
    Ok(all)
}

fn spectrum(args: &SystemArgs, xmax: Option<f64>, points: usize, levels: usize) -> Result<bool, String> {
    let case = args.case();
    let spec = case.spec()?;
    let xmax = xmax.unwrap_or_else(|| case.grid.xmax_for(spec.kind()));
    let report = fd_spectrum(&spec, xmax, points, levels).map_err(|e| e.to_string())?;
    let ratios = refinement_ratios(&spec, xmax, points, levels).map_err(|e| e.to_string())?;
    println!("{spec}, xmax = {xmax}, {points} points, h = {:.3e}", report.spacing);
    println!("{:>3} {:>20} {:>20} {:>10} {:>8}", "n", "finite difference", "predicted", "rel. err", "ratio");
    let tol = case.tolerances.spectrum;
    let (lo, hi) = su11::report::REFINEMENT_RATIO;
    let mut all = true;
    for i in 0..levels {
        let pass = report.relative_error[i] <= tol && (lo..=hi).contains(&ratios[i]);
        all &= pass;
        println!(
            "{:>3} {:>20.12} {:>20.12} {:>10.2e} {:>8.3} {}",
            i,
            report.eigenvalues[i],
            report.predicted[i],
            report.relative_error[i],
            ratios[i],
            verdict(pass)
        );
    }
    Ok(all)
}

fn suite(
    config: Option<PathBuf>,
    format: Option<Format>,
    out: Option<PathBuf>,
    nmax: Option<u32>,
    checks: Option<Vec<Check>>,
) -> Result<bool, String> {
    let mut config = match &config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            SuiteConfig::from_toml(&text).map_err(|e| e.to_string())?
        }
        None => SuiteConfig::default_suite(),
    };
    if format.is_some() {
        config.format = format;
    }
    for case in &mut config.cases {
        if let Some(n) = nmax {
            case.nmax = n;
        }
        if let Some(c) = &checks {
            case.checks = c.clone();
        }
    }
    let report = run_suite(&config).map_err(|e| e.to_string())?;
    let bytes = render_report(&report, config.format.unwrap_or(Format::Json));
    match out {
        Some(path) => fs::write(&path, &bytes).map_err(|e| format!("{}: {e}", path.display()))?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?,
    }
    eprintln!("{} passed, {} failed", report.summary.passed, report.summary.failed);
    Ok(report.pass())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Algebra(AlgebraCommand::Verify { system }) => algebra_verify(system),
        Command::Algebra(AlgebraCommand::Commutator { a, b }) => {
            let params = ParameterSet::standard();
            let a = parse_operator_expression(&a, &params).map_err(|e| e.to_string())?;
            let b = parse_operator_expression(&b, &params).map_err(|e| e.to_string())?;
            println!("{}", print_operator(&commutator(&a, &b).map_err(|e| e.to_string())?));
            Ok(true)
        }
        Command::Factorize { system } => factorize(system),
        Command::Ladder(LadderCommand::Verify { system, nmax, tol }) => ladder_verify(&system, nmax, tol),
        Command::Spectrum { system, xmax, points, levels } => spectrum(&system, xmax, points, levels),
        Command::Suite(SuiteCommand::Run { config, format, out, nmax, checks }) => {
            suite(config, format, out, nmax, checks)
        }
    }
}

fn main() -> ExitCode {
    // clap itself exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
