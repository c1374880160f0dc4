use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::numeric::{self, LadderReport, SpectrumReport, Verifier, WeightKind};
use crate::opalg::{DiffOperator, ParameterSet};
use crate::systems::{
    build_generators, casimir, casimir_constant, factorization_residuals, factorize_system, Direction, Potential,
    Sign, SystemKind, SystemSpec, Variable,
};

use super::expr::print_operator;

/// Bounds accepted for the grid-halving error ratio of a second-order scheme.
pub const REFINEMENT_RATIO: (f64, f64) = (3.0, 5.0);

/// Largest radial number a case may ask for.
pub const MAX_NMAX: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Algebra,
    Casimir,
    Factorization,
    Ladder,
    Adjoint,
    Spectrum,
}

impl Check {
    pub const ALL: [Check; 6] =
        [Check::Algebra, Check::Casimir, Check::Factorization, Check::Ladder, Check::Adjoint, Check::Spectrum];

    pub fn name(self) -> &'static str {
        match self {
            Check::Algebra => "algebra",
            Check::Casimir => "casimir",
            Check::Factorization => "factorization",
            Check::Ladder => "ladder",
            Check::Adjoint => "adjoint",
            Check::Spectrum => "spectrum",
        }
    }

    /// Heading used by the markdown report.
    pub fn label(self) -> &'static str {
        match self {
            Check::Algebra => "su(1,1) closure",
            Check::Casimir => "Casimir invariant",
            Check::Factorization => "Schrödinger factorization",
            Check::Ladder => "Ladder action",
            Check::Adjoint => "Adjointness of G+ and G-",
            Check::Spectrum => "Finite-difference spectrum of G3",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub ladder: f64,
    /// Lowering the ground state.
    pub ground: f64,
    pub adjoint: f64,
    pub casimir: f64,
    /// Relative error of the finite-difference levels.
    pub spectrum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { ladder: 1e-8, ground: 1e-10, adjoint: 1e-10, casimir: 1e-8, spectrum: 1e-3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    /// Defaults to 12 for oscillator-type and 60 for hydrogen-type systems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xmax: Option<f64>,
    pub points: usize,
    pub levels: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { xmax: None, points: 2000, levels: 5 }
    }
}

impl Grid {
    pub fn xmax_for(&self, kind: SystemKind) -> f64 {
        self.xmax.unwrap_or(if kind.is_oscillator_type() { 12.0 } else { 60.0 })
    }
}

fn default_nmax() -> u32 {
    8
}

fn default_checks() -> Vec<Check> {
    Check::ALL.to_vec()
}

/// One system and the checks to run on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub kind: SystemKind,
    #[serde(rename = "N", alias = "dim")]
    pub dim: u32,
    #[serde(alias = "l")]
    pub ell: u32,
    /// Radial numbers `0..=nmax` are checked.
    #[serde(default = "default_nmax")]
    pub nmax: u32,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default = "default_checks")]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub grid: Grid,
}

impl CaseConfig {
    pub fn new(kind: SystemKind, dim: u32, ell: u32) -> Self {
        CaseConfig {
            kind,
            dim,
            ell,
            nmax: default_nmax(),
            a: None,
            b: None,
            c: None,
            xi: None,
            checks: default_checks(),
            tolerances: Tolerances::default(),
            grid: Grid::default(),
        }
    }

    /// Missing constants take the defaults `ξ = 1`, `A = ½` (pseudo-harmonic),
    /// `A′ = −1` (Mie), `B = C = 0`.
    pub fn spec(&self) -> Result<SystemSpec, String> {
        let potential = match self.kind {
            SystemKind::Oscillator => {
                if self.a.is_some() || self.b.is_some() || self.c.is_some() || self.xi.is_some() {
                    return Err("the oscillator takes no potential constants".into());
                }
                Potential::Oscillator
            }
            SystemKind::Hydrogen => {
                if self.a.is_some() || self.b.is_some() || self.c.is_some() {
                    return Err("the hydrogen atom takes only `xi`".into());
                }
                Potential::Hydrogen { xi: self.xi.unwrap_or(1.0) }
            }
            SystemKind::PseudoHarmonic | SystemKind::Mie => {
                if self.xi.is_some() {
                    return Err("`xi` belongs to the hydrogen atom; use `A`".into());
                }
                let a = self.a.unwrap_or(if self.kind == SystemKind::Mie { -1.0 } else { 0.5 });
                let (b, c) = (self.b.unwrap_or(0.0), self.c.unwrap_or(0.0));
                if self.kind == SystemKind::Mie {
                    Potential::Mie { a, b, c }
                } else {
                    Potential::PseudoHarmonic { a, b, c }
                }
            }
        };
        SystemSpec::new(self.dim, self.ell, potential).map_err(|e| e.to_string())
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.spec() {
            out.push(e);
        }
        if self.nmax > MAX_NMAX {
            out.push(format!("nmax = {} exceeds {MAX_NMAX}", self.nmax));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("ladder", t.ladder),
            ("ground", t.ground),
            ("adjoint", t.adjoint),
            ("casimir", t.casimir),
            ("spectrum", t.spectrum),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("tolerance `{name}` must be positive, got {v}"));
            }
        }
        if self.checks.contains(&Check::Spectrum) {
            let g = &self.grid;
            if g.points < numeric::MIN_POINTS {
                out.push(format!("grid.points = {} is below {}", g.points, numeric::MIN_POINTS));
            }
            if g.levels == 0 || g.levels > g.points {
                out.push(format!("grid.levels = {} must lie in 1..={}", g.levels, g.points));
            }
            if let Some(x) = g.xmax {
                if !(x > 0.0 && x.is_finite()) {
                    out.push(format!("grid.xmax must be positive, got {x}"));
                }
            }
        }
        out
    }

    /// `<kind>-N<dim>-l<ell>`, with `-B<b>` when an inverse-square term is set.
    pub fn label(&self) -> String {
        let mut s = format!("{}-N{}-l{}", self.kind, self.dim, self.ell);
        if let Some(b) = self.b {
            s.push_str(&format!("-B{b}"));
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(rename = "case")]
    pub cases: Vec<CaseConfig>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot parse suite config: {0}")]
    Parse(String),
    #[error("invalid suite config:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<SuiteConfig, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// All four kinds, `N ∈ {2, 3, 5, 10}`, `ℓ ∈ {0, 1, 2}`, `n ≤ 8`, with
    /// `B ∈ {0, 1}` for the inverse-square potentials.
    ///
    /// For `N = 2` the finite-difference check is left out: with `κ ∈ {0, 1}`
    /// the Dirichlet scheme loses its second-order convergence at the origin.
    pub fn default_suite() -> SuiteConfig {
        let mut cases = Vec::new();
        for kind in SystemKind::ALL {
            for dim in [2, 3, 5, 10] {
                for ell in 0..=2 {
                    let couplings: &[Option<f64>] = match kind {
                        SystemKind::PseudoHarmonic | SystemKind::Mie => &[Some(0.0), Some(1.0)],
                        _ => &[None],
                    };
                    for &b in couplings {
                        let mut case = CaseConfig::new(kind, dim, ell);
                        case.b = b;
                        if dim == 2 {
                            case.checks.retain(|&c| c != Check::Spectrum);
                        }
                        cases.push(case);
                    }
                }
            }
        }
        SuiteConfig { format: None, cases }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let violations: Vec<String> = self
            .cases
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.violations().into_iter().map(move |v| format!("case {i} ({}): {v}", c.label())))
            .collect();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(violations))
        }
    }
}

/// What a check was run on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseInputs {
    pub kind: SystemKind,
    #[serde(rename = "N")]
    pub dim: u32,
    pub ell: u32,
    /// Radial number of the worst entry, when the check is per-state.
    pub n: Option<u32>,
    pub nmax: u32,
    pub potential: Potential,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub label: String,
    pub predicted: Option<f64>,
    pub measured: Option<f64>,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "lowercase")]
pub enum Details {
    Entries(Vec<Entry>),
    Ladder(Vec<LadderReport>),
    Spectrum { report: SpectrumReport, refinement_ratios: Vec<f64> },
    Error(String),
}

/// One (case, check) outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub check: Check,
    pub inputs: CaseInputs,
    pub predicted: Option<f64>,
    pub measured: Option<f64>,
    /// `None` when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub details: Details,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub config: SuiteConfig,
    pub cases: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Validate every case, then run them concurrently. Results keep the config's
/// case order and the fixed check order within a case; failures never stop
/// the run.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let cases: Vec<CheckResult> = config
        .cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| run_case(i, case))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        summary: Summary { passed, failed: cases.len() - passed },
        cases,
    })
}

fn run_case(index: usize, case: &CaseConfig) -> Vec<CheckResult> {
    let spec = case.spec().expect("validated");
    let mut checks = case.checks.clone();
    checks.sort();
    checks.dedup();
    let needs_verifier = checks.iter().any(|c| matches!(c, Check::Casimir | Check::Ladder | Check::Adjoint));
    let verifier = if needs_verifier { Some(Verifier::new(&spec, case.nmax).map_err(|e| e.to_string())) } else { None };
    let id = format!("c{index:03}-{}", case.label());
    checks
        .into_iter()
        .map(|check| {
            let inputs = CaseInputs {
                kind: spec.kind(),
                dim: spec.dim(),
                ell: spec.ell(),
                n: None,
                nmax: case.nmax,
                potential: *spec.potential(),
            };
            let outcome = match check {
                Check::Algebra => algebra_check(&spec),
                Check::Factorization => factorization_check(&spec),
                Check::Casimir => with_verifier(&verifier, |v| casimir_check(v, case)),
                Check::Ladder => with_verifier(&verifier, |v| ladder_check(v, case)),
                Check::Adjoint => with_verifier(&verifier, |v| adjoint_check(v, case)),
                Check::Spectrum => spectrum_check(&spec, case),
            };
            let tolerance = match check {
                Check::Algebra | Check::Factorization => 0.0,
                Check::Casimir => case.tolerances.casimir,
                Check::Ladder => case.tolerances.ladder,
                Check::Adjoint => case.tolerances.adjoint,
                Check::Spectrum => case.tolerances.spectrum,
            };
            match outcome {
                Ok(o) => CheckResult {
                    id: format!("{id}-{check}"),
                    check,
                    inputs: CaseInputs { n: o.n, ..inputs },
                    predicted: o.predicted,
                    measured: o.measured,
                    residual: Some(o.residual),
                    tolerance,
                    pass: o.pass,
                    details: o.details,
                },
                Err(message) => CheckResult {
                    id: format!("{id}-{check}"),
                    check,
                    inputs,
                    predicted: None,
                    measured: None,
                    residual: None,
                    tolerance,
                    pass: false,
                    details: Details::Error(message),
                },
            }
        })
        .collect()
}

struct Outcome {
    n: Option<u32>,
    predicted: Option<f64>,
    measured: Option<f64>,
    residual: f64,
    pass: bool,
    details: Details,
}

fn with_verifier<F>(verifier: &Option<Result<Verifier, String>>, f: F) -> Result<Outcome, String>
where
    F: FnOnce(&Verifier) -> Result<Outcome, String>,
{
    match verifier.as_ref().expect("built for numeric checks") {
        Ok(v) => f(v),
        Err(e) => Err(e.clone()),
    }
}

fn symbolic_entry(label: String, residual: &DiffOperator) -> Entry {
    Entry { label, predicted: Some(0.0), measured: Some(residual.len() as f64), residual: residual.len() as f64, pass: residual.is_zero() }
}

fn symbolic_outcome(entries: Vec<Entry>) -> Outcome {
    let residual = entries.iter().map(|e| e.residual).sum::<f64>();
    Outcome {
        n: None,
        predicted: Some(0.0),
        measured: Some(residual),
        residual,
        pass: entries.iter().all(|e| e.pass),
        details: Details::Entries(entries),
    }
}

const CLOSURE_LABELS: [&str; 3] = ["[G+,G3] + G+", "[G-,G3] - G-", "[G+,G-] + 2 G3"];

/// Closure with symbolic parameters, in every supported variable, and with
/// this case's values bound. Residuals count nonzero terms.
fn algebra_check(spec: &SystemSpec) -> Result<Outcome, String> {
    let mut entries = Vec::new();
    for variable in [Variable::X, Variable::R] {
        let Ok(g) = build_generators(spec.kind(), variable) else { continue };
        let bound = g.specialize(spec).map_err(|e| e.to_string())?;
        for (scope, triple) in [("symbolic", &g), ("bound", &bound)] {
            let residuals = triple.closure_residuals().map_err(|e| e.to_string())?;
            for (label, r) in CLOSURE_LABELS.iter().zip(&residuals) {
                entries.push(symbolic_entry(format!("{variable} {scope}: {label}"), r));
            }
        }
    }
    Ok(symbolic_outcome(entries))
}

fn factorization_check(spec: &SystemSpec) -> Result<Outcome, String> {
    let kind = spec.kind();
    let solutions = factorize_system(kind).map_err(|e| e.to_string())?;
    let residuals = factorization_residuals(kind).map_err(|e| e.to_string())?;
    let params = ParameterSet::standard();
    let mut entries: Vec<Entry> = solutions
        .iter()
        .map(|s| {
            let show = |c: &crate::opalg::Coefficient| print_operator(&DiffOperator::scalar(params.clone(), c.clone()));
            Entry {
                label: format!(
                    "{:?} branch: a = {}, b = {}, c = {}, f = {}, g = {}",
                    s.branch,
                    show(&s.a),
                    show(&s.b),
                    show(&s.c),
                    show(&s.f),
                    show(&s.g)
                ),
                predicted: None,
                measured: None,
                residual: 0.0,
                pass: true,
            }
        })
        .collect();
    if solutions.len() != 2 {
        entries.push(Entry {
            label: format!("expected two branches, found {}", solutions.len()),
            predicted: Some(2.0),
            measured: Some(solutions.len() as f64),
            residual: 1.0,
            pass: false,
        });
    }
    entries.push(symbolic_entry("raising-first identity".into(), &residuals.raising_first));
    entries.push(symbolic_entry("lowering-first identity".into(), &residuals.lowering_first));
    Ok(symbolic_outcome(entries))
}

fn casimir_check(v: &Verifier, case: &CaseConfig) -> Result<Outcome, String> {
    let spec = v.spec();
    let kind = spec.kind();
    let params = ParameterSet::standard();
    let constant = DiffOperator::scalar(params, casimir_constant(kind));
    let plus = casimir(kind, Sign::Plus).map_err(|e| e.to_string())?;
    let minus = casimir(kind, Sign::Minus).map_err(|e| e.to_string())?;
    let mut entries = vec![
        symbolic_entry("C(+) - C(-)".into(), &plus.try_sub(&minus).map_err(|e| e.to_string())?),
        symbolic_entry("C(+) - c Id".into(), &plus.try_sub(&constant).map_err(|e| e.to_string())?),
    ];
    let symbolic_ok = entries.iter().all(|e| e.pass);
    let c = numeric::casimir_value(spec);
    let tol = case.tolerances.casimir;
    let mut worst: Option<(u32, f64)> = None;
    for n in 0..=case.nmax {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = v.casimir(n, sign).map_err(|e| e.to_string())?;
            entries.push(Entry {
                label: format!("n = {n}, sign {}", if sign == Sign::Plus { "+" } else { "-" }),
                predicted: Some(c),
                measured: None,
                residual: r,
                pass: r <= tol,
            });
            if worst.map_or(true, |(_, w)| r > w) {
                worst = Some((n, r));
            }
        }
    }
    let (n, residual) = worst.unwrap_or((0, 0.0));
    Ok(Outcome {
        n: Some(n),
        predicted: Some(c),
        measured: None,
        residual,
        pass: symbolic_ok && entries.iter().all(|e| e.pass),
        details: Details::Entries(entries),
    })
}

fn ladder_check(v: &Verifier, case: &CaseConfig) -> Result<Outcome, String> {
    let mut reports = Vec::new();
    for n in 0..=case.nmax {
        for direction in [Direction::Raise, Direction::Lower] {
            let tol = if n == 0 && direction == Direction::Lower {
                case.tolerances.ground
            } else {
                case.tolerances.ladder
            };
            reports.push(v.ladder(n, direction, tol).map_err(|e| e.to_string())?);
        }
    }
    let score = |r: &LadderReport| (r.measured - r.predicted).abs().max(r.residual);
    let worst = reports
        .iter()
        .max_by(|a, b| score(a).total_cmp(&score(b)))
        .expect("at least n = 0");
    Ok(Outcome {
        n: Some(worst.n),
        predicted: Some(worst.predicted),
        measured: Some(worst.measured),
        residual: score(worst),
        pass: reports.iter().all(|r| r.pass),
        details: Details::Ladder(reports),
    })
}

fn adjoint_check(v: &Verifier, case: &CaseConfig) -> Result<Outcome, String> {
    let tol = case.tolerances.adjoint;
    let weight = WeightKind::for_kind(v.spec().kind());
    let mut entries = Vec::new();
    let mut worst = (0, 0.0);
    for m in 0..=case.nmax {
        for n in 0..=case.nmax {
            let r = v.adjointness(m, n, weight).map_err(|e| e.to_string())?;
            if r > worst.1 {
                worst = (n, r);
            }
            entries.push(Entry { label: format!("m = {m}, n = {n}"), predicted: Some(0.0), measured: Some(r), residual: r, pass: r <= tol });
        }
    }
    Ok(Outcome {
        n: Some(worst.0),
        predicted: Some(0.0),
        measured: Some(worst.1),
        residual: worst.1,
        pass: entries.iter().all(|e| e.pass),
        details: Details::Entries(entries),
    })
}

fn spectrum_check(spec: &SystemSpec, case: &CaseConfig) -> Result<Outcome, String> {
    let g = &case.grid;
    let xmax = g.xmax_for(spec.kind());
    let report = numeric::fd_spectrum(spec, xmax, g.points, g.levels).map_err(|e| e.to_string())?;
    let ratios = numeric::refinement_ratios(spec, xmax, g.points, g.levels).map_err(|e| e.to_string())?;
    let (lo, hi) = REFINEMENT_RATIO;
    let (worst, residual) = report
        .relative_error
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one level");
    let pass = residual <= case.tolerances.spectrum && ratios.iter().all(|r| (lo..=hi).contains(r));
    Ok(Outcome {
        n: Some(worst as u32),
        predicted: Some(report.predicted[worst]),
        measured: Some(report.eigenvalues[worst]),
        residual,
        pass,
        details: Details::Spectrum { report, refinement_ratios: ratios },
    })
}

/// Group results by check, in check order.
pub fn by_check(report: &Report) -> BTreeMap<Check, Vec<&CheckResult>> {
    let mut out: BTreeMap<Check, Vec<&CheckResult>> = BTreeMap::new();
    for c in &report.cases {
        out.entry(c.check).or_default().push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_case(kind: SystemKind, checks: &[Check]) -> CaseConfig {
        let mut case = CaseConfig::new(kind, 3, 1);
        case.nmax = 3;
        case.checks = checks.to_vec();
        case
    }

    #[test]
    fn empty_suite_passes() {
        let report = run_suite(&SuiteConfig::default()).unwrap();
        assert!(report.cases.is_empty() && report.pass());
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            format = "csv"
            [[case]]
            kind = "mie"
            N = 3
            ell = 1
            nmax = 4
            B = 1.0
            checks = ["ladder", "spectrum"]
            tolerances = { spectrum = 1e-4 }
            grid = { points = 400 }
        "#;
        let config = SuiteConfig::from_toml(text).unwrap();
        assert_eq!(config.format, Some(Format::Csv));
        let case = &config.cases[0];
        assert_eq!((case.kind, case.dim, case.nmax, case.b), (SystemKind::Mie, 3, 4, Some(1.0)));
        assert_eq!(case.tolerances.spectrum, 1e-4);
        assert_eq!(case.tolerances.ladder, 1e-8);
        assert_eq!(SuiteConfig::from_toml(&config.to_toml()).unwrap(), config);
        assert!(SuiteConfig::from_toml("[[case]]\nkind = \"mie\"\nN = 3\nell = 0\nbogus = 1").is_err());
    }

    #[test]
    fn all_violations_are_listed() {
        let mut bad = CaseConfig::new(SystemKind::Hydrogen, 1, 0);
        bad.tolerances.ladder = 0.0;
        let mut worse = CaseConfig::new(SystemKind::Oscillator, 3, 0);
        worse.a = Some(1.0);
        worse.grid.points = 10;
        let config = SuiteConfig { format: None, cases: vec![bad, worse] };
        match run_suite(&config) {
            Err(ConfigError::Invalid(v)) => assert_eq!(v.len(), 4, "{v:?}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tight_spectrum_tolerance_fails_only_spectrum() {
        let mut case = small_case(SystemKind::Oscillator, &[Check::Ladder, Check::Spectrum]);
        case.tolerances.spectrum = 1e-20;
        case.grid.points = 400;
        let report = run_suite(&SuiteConfig { format: None, cases: vec![case] }).unwrap();
        let pass: Vec<(Check, bool)> = report.cases.iter().map(|c| (c.check, c.pass)).collect();
        assert_eq!(pass, vec![(Check::Ladder, true), (Check::Spectrum, false)]);
        assert_eq!(report.summary, Summary { passed: 1, failed: 1 });
    }

    #[test]
    fn every_check_passes_on_a_small_case() {
        for kind in SystemKind::ALL {
            let mut case = small_case(kind, &Check::ALL);
            case.b = matches!(kind, SystemKind::PseudoHarmonic | SystemKind::Mie).then_some(1.0);
            let report = run_suite(&SuiteConfig { format: None, cases: vec![case] }).unwrap();
            for c in &report.cases {
                assert!(c.pass, "{}: {:?}", c.id, c.details);
            }
            assert_eq!(report.cases.len(), 6);
        }
    }
}
