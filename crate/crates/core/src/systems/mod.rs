//! The four radial systems and their su(1,1) structure.
//!
//! Every system reduces to one of two dimensionless radial equations. The
//! oscillator and pseudo-harmonic oscillator share
//!
//! ```text
//! (−x² D² + x⁴ − 2λ x²) U = −(κ² − ¼) U,
//! ```
//!
//! and the hydrogen atom and Mie-type potential share
//!
//! ```text
//! (−x² D² − 2ξK x + ξ² x²) U = −(κ² − ¼) U,
//! ```
//!
//! with κ replaced by β or γ when an inverse-square term `B/r²` is present
//! and (λ, K, ξ) by (Λ, Σ, ζ). Units are ħ = m = 1, ω = 1 for the oscillator.

mod factorize;
mod generators;
mod spec;

pub use factorize::{
    factorization_residuals, factorize_system, schrodinger_factorize, Branch, FactorizationError,
    FactorizationResiduals, FactorizationSolution,
};
pub use generators::{
    build_generators, build_hamiltonian_form, casimir, casimir_constant, eigen_constant,
    schrodinger_operators, GeneratorTriple, Sign, Variable,
};
pub use spec::{Potential, SystemKind, SystemSpec};


use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::opalg::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(u32),
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("coupling {name} = {value} does not admit bound states")]
    Coupling { name: &'static str, value: f64 },
    #[error("inverse-square term is over-attractive: (2l+N-2)^2 + 8B = {radicand} < 0")]
    OverAttractive { radicand: f64 },
    #[error("unknown system kind `{0}`")]
    UnknownKind(String),
    #[error("{kind} generators are not available in the {variable} variable")]
    UnsupportedVariable { kind: SystemKind, variable: Variable },
    #[error("level parameter is irrational for {0}; keep it symbolic")]
    IrrationalLevel(SystemSpec),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Raise => "raise",
            Direction::Lower => "lower",
        }
    }
}

/// Angular index κ, β or γ of a system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularIndex {
    pub symbol: &'static str,
    pub value: f64,
    /// Exact square of `value`.
    #[serde(skip)]
    pub squared: num_rational::BigRational,
}

/// κ = ℓ + (N−2)/2 for the oscillator and hydrogen atom,
/// β = ½√((2ℓ+N−2)² + 8B) and γ = ½√((2ℓ+N−2)² + 8B') otherwise.
pub fn angular_index(spec: &SystemSpec) -> AngularIndex {
    let value = match spec.kind() {
        SystemKind::Oscillator | SystemKind::Hydrogen => spec.kappa(),
        SystemKind::PseudoHarmonic | SystemKind::Mie => 0.5 * spec.index_radicand().sqrt(),
    };
    AngularIndex {
        symbol: spec.kind().index_symbol(),
        value,
        squared: spec.index_squared_exact(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelParams {
    pub n: u32,
    pub index: f64,
    /// λ_n, K_n, Λ_n or Σ_n.
    pub value: f64,
    /// Physical energy E_n.
    pub energy: f64,
}

/// Level parameter of the `n`-th radial state.
///
/// λ_n = 2n + κ + 1, K_n = n + κ + ½, Λ_n = 2n + β + 1, Σ_n = n + γ + ½.
pub fn level(spec: &SystemSpec, n: u32) -> LevelParams {
    let index = angular_index(spec).value;
    let n_f = f64::from(n);
    let value = if spec.kind().is_oscillator_type() {
        2.0 * n_f + index + 1.0
    } else {
        n_f + index + 0.5
    };
    let energy = match *spec.potential() {
        Potential::Oscillator => value,
        Potential::Hydrogen { xi } => -xi * xi / (2.0 * value * value),
        Potential::PseudoHarmonic { a, c, .. } => c + (2.0 * a).sqrt() * value,
        Potential::Mie { a, c, .. } => c - a * a / (2.0 * value * value),
    };
    LevelParams { n, index, value, energy }
}

/// Radial-ladder matrix element `⟨n±1| G± |n⟩`.
///
/// Oscillator-type: ½√((v−κ+1)(v+κ+1)) up, ½√((v−κ−1)(v+κ−1)) down.
/// Hydrogen-type: √((v−κ+½)(v+κ+½)) up, √((v−κ−½)(v+κ−½)) down.
///
/// `v − κ` is `2n + 1` or `n + ½`, so the factors are formed from `n` and the
/// index directly; lowering the ground state gives exactly zero.
pub fn ladder_coefficient(spec: &SystemSpec, n: u32, direction: Direction) -> f64 {
    let index = angular_index(spec).value;
    let m = f64::from(match direction {
        Direction::Raise => n + 1,
        Direction::Lower => n,
    });
    if spec.kind().is_oscillator_type() {
        // (v − κ ± 1)(v + κ ± 1) = 2m · (2m + 2κ)
        0.5 * (2.0 * m * (2.0 * m + 2.0 * index)).sqrt()
    } else {
        // (v − κ ± ½)(v + κ ± ½) = m · (m + 2κ)
        (m * (m + 2.0 * index)).sqrt()
    }
}

/// Principal quantum number ν = 2n + ℓ.
pub fn principal_number(n: u32, ell: u32) -> u32 {
    2 * n + ell
}
