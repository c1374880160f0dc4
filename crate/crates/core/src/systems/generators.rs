use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::opalg::{commutator, AlgebraError, Coefficient, DiffOperator, ParameterSet};

use super::{SystemError, SystemKind, SystemSpec};

/// Independent variable the generators act in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// Dimensionless radial coordinate, acting on `U`.
    X,
    /// Radial coordinate, acting on `R = r^((1−N)/2) U`.
    R,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::X => "x",
            Variable::R => "r",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Generators `(G₃, G₊, G₋)` of an su(1,1) realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTriple {
    pub g3: DiffOperator,
    pub gplus: DiffOperator,
    pub gminus: DiffOperator,
    pub variable: Variable,
}

impl GeneratorTriple {
    /// `[G₊, G₃] + G₊`, `[G₋, G₃] − G₋`, `[G₊, G₋] + 2G₃`; all zero for a
    /// realization of su(1,1).
    pub fn closure_residuals(&self) -> Result<[DiffOperator; 3], AlgebraError> {
        let two = Coefficient::from_int(2);
        Ok([
            commutator(&self.gplus, &self.g3)?.try_add(&self.gplus)?,
            commutator(&self.gminus, &self.g3)?.try_sub(&self.gminus)?,
            commutator(&self.gplus, &self.gminus)?.try_add(&self.g3.scale(&two))?,
        ])
    }

    /// `−G±G∓ + G₃² ∓ G₃`.
    pub fn casimir(&self, sign: Sign) -> Result<DiffOperator, AlgebraError> {
        let g3sq = self.g3.compose(&self.g3)?;
        match sign {
            Sign::Plus => g3sq.try_sub(&self.gplus.compose(&self.gminus)?)?.try_sub(&self.g3),
            Sign::Minus => g3sq.try_sub(&self.gminus.compose(&self.gplus)?)?.try_add(&self.g3),
        }
    }

    /// Apply the same map to all three generators.
    pub fn try_map<F>(&self, mut f: F) -> Result<GeneratorTriple, AlgebraError>
    where
        F: FnMut(&DiffOperator) -> Result<DiffOperator, AlgebraError>,
    {
        Ok(GeneratorTriple {
            g3: f(&self.g3)?,
            gplus: f(&self.gplus)?,
            gminus: f(&self.gminus)?,
            variable: self.variable,
        })
    }

    /// Bind the index, coupling and dimension symbols to a concrete system.
    pub fn specialize(&self, spec: &SystemSpec) -> Result<GeneratorTriple, AlgebraError> {
        let bindings = spec.exact_bindings();
        self.try_map(|op| op.substitute(&bindings))
    }
}

/// Term builder over the standard parameter set.
struct Builder {
    params: Arc<ParameterSet>,
}

impl Builder {
    fn new() -> Self {
        Builder { params: ParameterSet::standard() }
    }

    fn sym(&self, name: &str) -> Coefficient {
        Coefficient::symbol(self.params.index_of(name).expect("standard symbol"))
    }

    fn sym_pow(&self, name: &str, power: i32) -> Coefficient {
        Coefficient::symbol_pow(self.params.index_of(name).expect("standard symbol"), power)
    }

    fn term(&self, coeff: Coefficient, xpow: i32, dorder: u32) -> DiffOperator {
        DiffOperator::monomial(self.params.clone(), coeff, xpow, dorder)
    }

    fn num(&self, n: i64, d: i64, xpow: i32, dorder: u32) -> DiffOperator {
        self.term(Coefficient::ratio(n, d), xpow, dorder)
    }

    fn scalar(&self, coeff: Coefficient) -> DiffOperator {
        self.term(coeff, 0, 0)
    }
}

fn quarter() -> Coefficient {
    Coefficient::ratio(1, 4)
}

/// `G₃` and `G±` of a system.
///
/// Oscillator-type (variable `x`):
/// `G₃ = ¼(−D² + x² + (I² − ¼)x⁻²)`, `G± = ½(∓xD + x² − 2G₃ ∓ ½)`.
///
/// Hydrogen-type (variable `x`):
/// `G₃ = (1/2c)(−xD² + c²x + (I² − ¼)x⁻¹)`, `G± = ∓xD + cx − G₃`,
/// with `I² = κ², β², γ²` and `c = ξ, ζ`.
///
/// In the `r` variable only the oscillator and hydrogen atom are provided;
/// the hydrogen generators use the symbol `s = ξ/K_n`.
pub fn build_generators(kind: SystemKind, variable: Variable) -> Result<GeneratorTriple, SystemError> {
    let b = Builder::new();
    let index = b.sym(kind.index_symbol());
    let centrifugal = &index - &quarter();
    let triple = match (kind.is_oscillator_type(), variable) {
        (true, Variable::X) => {
            let g3 = (b.num(-1, 1, 0, 2) + b.num(1, 1, 2, 0) + b.term(centrifugal, -2, 0))
                .scale(&quarter());
            let (gplus, gminus) = oscillator_ladders(&b, &g3, &b.num(1, 1, 1, 1));
            GeneratorTriple { g3, gplus, gminus, variable }
        }
        (false, Variable::X) => {
            let c = b.sym(kind.coupling_symbol().expect("hydrogen-type coupling"));
            let inv_2c = b.sym_pow(kind.coupling_symbol().unwrap(), -1).scale(&half());
            let g3 = (b.num(-1, 1, 1, 2) + b.term(&c * &c, 1, 0) + b.term(centrifugal, -1, 0))
                .scale(&inv_2c);
            let (gplus, gminus) = coulomb_ladders(&b, &g3, &b.term(c, 1, 0));
            GeneratorTriple { g3, gplus, gminus, variable }
        }
        (true, Variable::R) if kind == SystemKind::Oscillator => {
            // Conjugation by r^((N−1)/2): D² → D² + (N−1)r⁻¹D + (N−1)(N−3)/4 r⁻².
            let n_minus_1 = &b.sym("N") - &Coefficient::one();
            let g3 = (b.num(-1, 1, 0, 2)
                + b.term(-&n_minus_1, -1, 1)
                + b.num(1, 1, 2, 0)
                + b.term(shifted_centrifugal(&b), -2, 0))
            .scale(&quarter());
            let euler = b.num(1, 1, 1, 1) + b.scalar(n_minus_1.scale(&half()));
            let (gplus, gminus) = oscillator_ladders(&b, &g3, &euler);
            GeneratorTriple { g3, gplus, gminus, variable }
        }
        (false, Variable::R) if kind == SystemKind::Hydrogen => {
            let s = b.sym("s");
            let n_minus_1 = &b.sym("N") - &Coefficient::one();
            let inv_2s = b.sym_pow("s", -1).scale(&half());
            let g3 = (b.num(-1, 1, 1, 2)
                + b.term(-&n_minus_1, 0, 1)
                + b.term(&s * &s, 1, 0)
                + b.term(shifted_centrifugal(&b), -1, 0))
            .scale(&inv_2s);
            let euler = b.num(1, 1, 1, 1) + b.scalar(n_minus_1.scale(&half()));
            let (gplus, gminus) = coulomb_ladders(&b, &g3, &b.term(s, 1, 0));
            // τ± = ∓(rD + (N−1)/2) + s r − τ₃
            let correction = &euler - &b.num(1, 1, 1, 1);
            let gplus = &gplus - &correction;
            let gminus = &gminus + &correction;
            GeneratorTriple { g3, gplus, gminus, variable }
        }
        _ => return Err(SystemError::UnsupportedVariable { kind, variable }),
    };
    Ok(triple)
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// κ² − ((N−2)/2)², the centrifugal numerator seen by `R` instead of `U`.
fn shifted_centrifugal(b: &Builder) -> Coefficient {
    let half_n_minus_1 = &b.sym("N").scale(&half()) - &Coefficient::one();
    &b.sym("k2") - &(&half_n_minus_1 * &half_n_minus_1)
}

/// `G± = ½(∓E + x² − 2G₃ ∓ ½)` for an Euler-type operator `E`.
fn oscillator_ladders(b: &Builder, g3: &DiffOperator, euler: &DiffOperator) -> (DiffOperator, DiffOperator) {
    let common = &b.num(1, 1, 2, 0) - &g3.scale(&Coefficient::from_int(2));
    let shift = b.num(1, 2, 0, 0);
    let plus = (&(&common - euler) - &shift).scale(&Coefficient::constant(half()));
    let minus = (&(&common + euler) + &shift).scale(&Coefficient::constant(half()));
    (plus, minus)
}

/// `G± = ∓xD + cx − G₃`.
fn coulomb_ladders(b: &Builder, g3: &DiffOperator, cx: &DiffOperator) -> (DiffOperator, DiffOperator) {
    let xd = b.num(1, 1, 1, 1);
    let common = cx - g3;
    (&common - &xd, &common + &xd)
}

/// `−G±G∓ + G₃² ∓ G₃` for the `x`-variable generators of a kind.
pub fn casimir(kind: SystemKind, sign: Sign) -> Result<DiffOperator, SystemError> {
    Ok(build_generators(kind, Variable::X)?.casimir(sign)?)
}

/// Constant value of the Casimir: `(I² − 1)/4` oscillator-type, `I² − ¼` hydrogen-type.
pub fn casimir_constant(kind: SystemKind) -> Coefficient {
    let b = Builder::new();
    let index = b.sym(kind.index_symbol());
    if kind.is_oscillator_type() {
        (&index - &Coefficient::one()).scale(&BigRational::new(1.into(), 4.into()))
    } else {
        &index - &quarter()
    }
}

/// Eigenvalue of the Hamiltonian form: `L U = −(I² − ¼) U`.
pub fn eigen_constant(kind: SystemKind) -> Coefficient {
    let b = Builder::new();
    -(&b.sym(kind.index_symbol()) - &quarter())
}

/// Dimensionless radial operator `L` of a kind.
///
/// Oscillator-type: `−x²D² + x⁴ − 2v x²`; hydrogen-type: `−x²D² − 2cv x + c²x²`.
/// With `level = None` the level parameter `v` stays symbolic; otherwise it is
/// bound to `level(spec, n)` exactly, which needs a rational index.
pub fn build_hamiltonian_form(spec: &SystemSpec, level: Option<u32>) -> Result<DiffOperator, SystemError> {
    let kind = spec.kind();
    let b = Builder::new();
    let v = b.sym(kind.level_symbol());
    let op = if kind.is_oscillator_type() {
        b.num(-1, 1, 2, 2) + b.num(1, 1, 4, 0) + b.term(v.scale(&int(-2)), 2, 0)
    } else {
        let c = b.sym(kind.coupling_symbol().expect("hydrogen-type coupling"));
        b.num(-1, 1, 2, 2) + b.term((&c * &v).scale(&int(-2)), 1, 0) + b.term(&c * &c, 2, 0)
    };
    match level {
        None => Ok(op),
        Some(n) => {
            let value = exact_level(spec, n).ok_or(SystemError::IrrationalLevel(*spec))?;
            Ok(op.substitute(&[(kind.level_symbol(), value)])?)
        }
    }
}

/// Exact level parameter when the angular index is rational.
pub(crate) fn exact_level(spec: &SystemSpec, n: u32) -> Option<BigRational> {
    use num_bigint::BigInt;
    let sq = spec.index_squared_exact();
    let root = Coefficient::constant(sq).sqrt_monomial()?.as_constant()?;
    let n = BigRational::from_integer(BigInt::from(n));
    Some(if spec.kind().is_oscillator_type() {
        n * BigRational::from_integer(2.into()) + root + BigRational::from_integer(1.into())
    } else {
        n + root + half()
    })
}

/// Level-dependent Schrödinger operators `(G⁺ⁿ, G⁻ⁿ)`.
///
/// Oscillator-type `½(∓xD + x² − v ∓ ½)`, hydrogen-type `∓xD + cx − v`.
pub fn schrodinger_operators(kind: SystemKind) -> (DiffOperator, DiffOperator) {
    let b = Builder::new();
    let v = b.scalar(b.sym(kind.level_symbol()));
    if kind.is_oscillator_type() {
        // Same shape as the level-independent ladders with 2G₃ → v.
        let half_v = v.scale(&Coefficient::constant(half()));
        oscillator_ladders(&b, &half_v, &b.num(1, 1, 1, 1))
    } else {
        let c = b.sym(kind.coupling_symbol().expect("hydrogen-type coupling"));
        coulomb_ladders(&b, &v, &b.term(c, 1, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn oscillator_g3_matches_closed_form() {
        let b = Builder::new();
        let g = build_generators(SystemKind::Oscillator, Variable::X).unwrap();
        let expected = b.num(-1, 4, 0, 2)
            + b.num(1, 4, 2, 0)
            + b.term((&b.sym("k2") - &quarter()).scale(&q(1, 4)), -2, 0);
        assert_eq!(g.g3, expected);
        // κ² = ¼ leaves ¼(−D² + x²)
        let bound = g.g3.substitute(&[("k2", q(1, 4))]).unwrap();
        assert_eq!(bound, b.num(-1, 4, 0, 2) + b.num(1, 4, 2, 0));
        assert_eq!(g.gplus.dorder(), 2);
    }

    #[test]
    fn hydrogen_g3_matches_closed_form() {
        let b = Builder::new();
        let g = build_generators(SystemKind::Hydrogen, Variable::X).unwrap();
        let inv = b.sym_pow("xi", -1);
        let expected = b.term(inv.scale(&q(-1, 2)), 1, 2)
            + b.term(b.sym("xi").scale(&q(1, 2)), 1, 0)
            + b.term((&(&b.sym("k2") - &quarter()) * &inv).scale(&q(1, 2)), -1, 0);
        assert_eq!(g.g3, expected);
    }

    #[test]
    fn tau3_numerator_is_angular_eigenvalue() {
        // κ² − ((N−2)/2)² = ℓ(ℓ+N−2) once κ = ℓ + (N−2)/2
        let g = build_generators(SystemKind::Hydrogen, Variable::R).unwrap();
        let spec = SystemSpec::hydrogen(5, 2).unwrap();
        let bound = g.g3.substitute(&spec.exact_bindings()).unwrap();
        let b = Builder::new();
        let coeff = bound.coefficient(-1, 0);
        assert_eq!(coeff, b.sym_pow("s", -1).scale(&q(2 * (2 + 5 - 2), 2)));
        assert_eq!(bound.coefficient(0, 1), b.sym_pow("s", -1).scale(&q(-4, 2)));
    }

    #[test]
    fn unsupported_variables() {
        for kind in [SystemKind::PseudoHarmonic, SystemKind::Mie] {
            assert!(matches!(
                build_generators(kind, Variable::R),
                Err(SystemError::UnsupportedVariable { .. })
            ));
        }
    }

    #[test]
    fn level_dependent_operators() {
        let b = Builder::new();
        let (plus, _) = schrodinger_operators(SystemKind::Oscillator);
        // λ = 3/2: ½(−xD + x² − 2)
        let bound = plus.substitute(&[("lam", q(3, 2))]).unwrap();
        assert_eq!(bound, b.num(-1, 2, 1, 1) + b.num(1, 2, 2, 0) + b.num(-1, 1, 0, 0));
    }

    #[test]
    fn hamiltonian_forms() {
        let b = Builder::new();
        let osc = build_hamiltonian_form(&SystemSpec::oscillator(3, 0).unwrap(), None).unwrap();
        assert_eq!(
            osc,
            b.num(-1, 1, 2, 2) + b.num(1, 1, 4, 0) + b.term(b.sym("lam").scale(&q(-2, 1)), 2, 0)
        );
        let hyd = build_hamiltonian_form(&SystemSpec::hydrogen(3, 0).unwrap(), None).unwrap();
        let hyd = hyd.substitute(&[("xi", q(1, 1))]).unwrap();
        assert_eq!(hyd, b.num(-1, 1, 2, 2) + b.term(b.sym("K").scale(&q(-2, 1)), 1, 0) + b.num(1, 1, 2, 0));

        let at = build_hamiltonian_form(&SystemSpec::oscillator(3, 0).unwrap(), Some(0)).unwrap();
        assert_eq!(at.coefficient(2, 0), Coefficient::from_int(-3));
        let irrational = SystemSpec::pseudo_harmonic(2, 0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            build_hamiltonian_form(&irrational, Some(0)),
            Err(SystemError::IrrationalLevel(_))
        ));
    }

    #[test]
    fn mie_form_reduces_to_hydrogen() {
        let mie = build_hamiltonian_form(&SystemSpec::mie(3, 0, -1.0, 0.0, 0.0).unwrap(), None).unwrap();
        let hyd = build_hamiltonian_form(&SystemSpec::hydrogen(3, 0).unwrap(), None).unwrap();
        assert_eq!(mie.rename("zeta", "xi").unwrap().rename("Sig", "K").unwrap(), hyd);
    }
}
