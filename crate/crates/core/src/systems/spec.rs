use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SystemError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    Oscillator,
    Hydrogen,
    #[serde(alias = "pseudo_harmonic", alias = "ph")]
    PseudoHarmonic,
    Mie,
}

impl SystemKind {
    pub const ALL: [SystemKind; 4] =
        [SystemKind::Oscillator, SystemKind::Hydrogen, SystemKind::PseudoHarmonic, SystemKind::Mie];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Oscillator => "oscillator",
            SystemKind::Hydrogen => "hydrogen",
            SystemKind::PseudoHarmonic => "pseudo-harmonic",
            SystemKind::Mie => "mie",
        }
    }

    /// Oscillator-type systems use the `x²` ansatz and the plain `dx` inner
    /// product; hydrogen-type systems use `x` and `dx/x`.
    pub fn is_oscillator_type(self) -> bool {
        matches!(self, SystemKind::Oscillator | SystemKind::PseudoHarmonic)
    }

    /// Symbol carrying the squared angular index.
    pub fn index_symbol(self) -> &'static str {
        match self {
            SystemKind::Oscillator | SystemKind::Hydrogen => "k2",
            SystemKind::PseudoHarmonic => "b2",
            SystemKind::Mie => "g2",
        }
    }

    /// Symbol carrying the level parameter λ, K, Λ or Σ.
    pub fn level_symbol(self) -> &'static str {
        match self {
            SystemKind::Oscillator => "lam",
            SystemKind::Hydrogen => "K",
            SystemKind::PseudoHarmonic => "Lam",
            SystemKind::Mie => "Sig",
        }
    }

    pub fn coupling_symbol(self) -> Option<&'static str> {
        match self {
            SystemKind::Hydrogen => Some("xi"),
            SystemKind::Mie => Some("zeta"),
            _ => None,
        }
    }

    /// Power of `x` in the first-order factorization ansatz.
    pub fn ansatz_power(self) -> i32 {
        if self.is_oscillator_type() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemKind {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "oscillator" | "osc" | "harmonic" => Ok(SystemKind::Oscillator),
            "hydrogen" | "hyd" | "coulomb" => Ok(SystemKind::Hydrogen),
            "pseudo-harmonic" | "pseudo_harmonic" | "pseudoharmonic" | "ph" => {
                Ok(SystemKind::PseudoHarmonic)
            }
            "mie" | "mie-type" => Ok(SystemKind::Mie),
            _ => Err(SystemError::UnknownKind(s.to_string())),
        }
    }
}

/// Potential constants in units ħ = m = 1.
///
/// The oscillator has ω = 1. The hydrogen atom carries its coupling
/// ξ = m e²/ħ² (1 for e = 1). `PseudoHarmonic` is `A r² + B/r² + C` and
/// `Mie` is `A'/r + B'/r² + C'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Potential {
    Oscillator,
    Hydrogen { xi: f64 },
    PseudoHarmonic { a: f64, b: f64, c: f64 },
    Mie { a: f64, b: f64, c: f64 },
}

impl Potential {
    pub fn kind(&self) -> SystemKind {
        match self {
            Potential::Oscillator => SystemKind::Oscillator,
            Potential::Hydrogen { .. } => SystemKind::Hydrogen,
            Potential::PseudoHarmonic { .. } => SystemKind::PseudoHarmonic,
            Potential::Mie { .. } => SystemKind::Mie,
        }
    }

    /// Strength of the inverse-square term, zero when absent.
    pub fn inverse_square(&self) -> f64 {
        match *self {
            Potential::PseudoHarmonic { b, .. } | Potential::Mie { b, .. } => b,
            _ => 0.0,
        }
    }
}

/// A validated radial problem: dimension `N ≥ 2`, angular momentum `ℓ`, and potential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemSpec {
    dim: u32,
    ell: u32,
    potential: Potential,
}

impl SystemSpec {
    pub fn new(dim: u32, ell: u32, potential: Potential) -> Result<Self, SystemError> {
        if dim < 2 {
            return Err(SystemError::Dimension(dim));
        }
        let finite = |v: f64, what: &'static str| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(SystemError::NonFinite(what))
            }
        };
        match potential {
            Potential::Oscillator => {}
            Potential::Hydrogen { xi } => {
                finite(xi, "xi")?;
                if xi <= 0.0 {
                    return Err(SystemError::Coupling { name: "xi", value: xi });
                }
            }
            Potential::PseudoHarmonic { a, b, c } => {
                finite(a, "A")?;
                finite(b, "B")?;
                finite(c, "C")?;
                if a <= 0.0 {
                    return Err(SystemError::Coupling { name: "A", value: a });
                }
            }
            Potential::Mie { a, b, c } => {
                finite(a, "A'")?;
                finite(b, "B'")?;
                finite(c, "C'")?;
                if a >= 0.0 {
                    return Err(SystemError::Coupling { name: "A'", value: a });
                }
            }
        }
        let spec = SystemSpec { dim, ell, potential };
        let radicand = spec.index_radicand();
        if radicand < 0.0 {
            return Err(SystemError::OverAttractive { radicand });
        }
        Ok(spec)
    }

    pub fn oscillator(dim: u32, ell: u32) -> Result<Self, SystemError> {
        SystemSpec::new(dim, ell, Potential::Oscillator)
    }

    pub fn hydrogen(dim: u32, ell: u32) -> Result<Self, SystemError> {
        SystemSpec::new(dim, ell, Potential::Hydrogen { xi: 1.0 })
    }

    pub fn pseudo_harmonic(dim: u32, ell: u32, a: f64, b: f64, c: f64) -> Result<Self, SystemError> {
        SystemSpec::new(dim, ell, Potential::PseudoHarmonic { a, b, c })
    }

    pub fn mie(dim: u32, ell: u32, a: f64, b: f64, c: f64) -> Result<Self, SystemError> {
        SystemSpec::new(dim, ell, Potential::Mie { a, b, c })
    }

    /// Default-units instance of a kind: ω = 1, ξ = 1, `A = 1/2` for the
    /// pseudo-harmonic oscillator and `A' = -1` for Mie, with the given
    /// inverse-square strength and no constant shift.
    pub fn of_kind(kind: SystemKind, dim: u32, ell: u32, inverse_square: f64) -> Result<Self, SystemError> {
        match kind {
            SystemKind::Oscillator => SystemSpec::oscillator(dim, ell),
            SystemKind::Hydrogen => SystemSpec::hydrogen(dim, ell),
            SystemKind::PseudoHarmonic => SystemSpec::pseudo_harmonic(dim, ell, 0.5, inverse_square, 0.0),
            SystemKind::Mie => SystemSpec::mie(dim, ell, -1.0, inverse_square, 0.0),
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.potential.kind()
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// `(2ℓ + N − 2)² + 8B`; the squared index is a quarter of it.
    pub fn index_radicand(&self) -> f64 {
        let base = f64::from(2 * self.ell + self.dim - 2);
        base * base + 8.0 * self.potential.inverse_square()
    }

    /// κ = ℓ + (N − 2)/2, independent of any inverse-square term.
    pub fn kappa(&self) -> f64 {
        f64::from(self.ell) + (f64::from(self.dim) - 2.0) / 2.0
    }

    pub fn kappa_squared_exact(&self) -> BigRational {
        let twice = BigInt::from(2 * self.ell + self.dim - 2);
        BigRational::new(&twice * &twice, BigInt::from(4))
    }

    /// Exact squared angular index: κ², or κ² + 2B for the inverse-square systems.
    pub fn index_squared_exact(&self) -> BigRational {
        let b = exact(self.potential.inverse_square());
        self.kappa_squared_exact() + b * BigRational::from_integer(BigInt::from(2))
    }

    /// Coulomb-type coupling ξ (hydrogen) or ζ = −A' (Mie).
    pub fn coupling(&self) -> Option<f64> {
        match self.potential {
            Potential::Hydrogen { xi } => Some(xi),
            Potential::Mie { a, .. } => Some(-a),
            _ => None,
        }
    }

    pub fn coupling_exact(&self) -> Option<BigRational> {
        self.coupling().map(exact)
    }

    /// Exact values for the index and coupling symbols of this system, plus `N`.
    pub fn exact_bindings(&self) -> Vec<(&'static str, BigRational)> {
        let mut out = vec![
            (self.kind().index_symbol(), self.index_squared_exact()),
            ("N", BigRational::from_integer(BigInt::from(self.dim))),
        ];
        if let (Some(sym), Some(c)) = (self.kind().coupling_symbol(), self.coupling_exact()) {
            out.push((sym, c));
        }
        out
    }

    /// Floating-point values for every symbol a generator of this system can
    /// carry; the level symbol (and `s = ξ/K`) only when `n` is given.
    pub fn numeric_bindings(&self, n: Option<u32>) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            (self.kind().index_symbol(), self.index_squared_exact().to_f64().unwrap_or(f64::NAN)),
            ("N", f64::from(self.dim)),
        ];
        if let (Some(sym), Some(c)) = (self.kind().coupling_symbol(), self.coupling()) {
            out.push((sym, c));
        }
        if let Some(n) = n {
            let level = super::level(self, n);
            out.push((self.kind().level_symbol(), level.value));
            if let Some(c) = self.coupling() {
                out.push(("s", c / level.value));
            }
        }
        out
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={} l={}", self.kind(), self.dim, self.ell)?;
        match self.potential {
            Potential::Oscillator => Ok(()),
            Potential::Hydrogen { xi } => write!(f, " xi={xi}"),
            Potential::PseudoHarmonic { a, b, c } | Potential::Mie { a, b, c } => {
                write!(f, " A={a} B={b} C={c}")
            }
        }
    }
}

/// Exact rational value of a finite double.
pub(crate) fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}
