use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::opalg::{AlgebraError, Coefficient, DiffOperator, ParameterSet};

use super::generators::{build_hamiltonian_form, eigen_constant, schrodinger_operators};
use super::{SystemError, SystemKind, SystemSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorizationError {
    #[error("ansatz power must be 1 or 2, got {0}")]
    AnsatzPower(i32),
    #[error("no factorization: term x^{xpow} D^{dorder} cannot be matched by the ansatz")]
    Unmatched { xpow: i32, dorder: u32 },
    #[error("no factorization: leading term must be -x^2 D^2")]
    LeadingTerm,
    #[error("no factorization: {0}")]
    Unsolvable(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// Which sign of `a = c = ∓√q` a solution takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Upper,
    Lower,
}

/// Constants of the ansatz `(xD + a xˢ + b)(−xD + c xˢ + f) U = g U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSolution {
    pub a: Coefficient,
    pub b: Coefficient,
    pub c: Coefficient,
    pub f: Coefficient,
    pub g: Coefficient,
    pub xpow: i32,
    pub branch: Branch,
}

impl FactorizationSolution {
    /// The product `(xD + a xˢ + b)(−xD + c xˢ + f)`.
    pub fn ansatz(&self, params: Arc<ParameterSet>) -> Result<DiffOperator, AlgebraError> {
        let term = |c: Coefficient, p: i32, m: u32| DiffOperator::monomial(params.clone(), c, p, m);
        let left = term(Coefficient::one(), 1, 1)
            + term(self.a.clone(), self.xpow, 0)
            + term(self.b.clone(), 0, 0);
        let right = term(Coefficient::from_int(-1), 1, 1)
            + term(self.c.clone(), self.xpow, 0)
            + term(self.f.clone(), 0, 0);
        left.compose(&right)
    }

    /// `ansatz − g − (L − eigenvalue)`, zero exactly when the constants factorize `L`.
    pub fn residual(&self, hamiltonian: &DiffOperator, eigenvalue: &Coefficient) -> Result<DiffOperator, AlgebraError> {
        let params = hamiltonian.params().clone();
        let shift = DiffOperator::scalar(params.clone(), &self.g - eigenvalue);
        self.ansatz(params)?.try_sub(hamiltonian)?.try_sub(&shift)
    }
}

/// Solve the first-order factorization ansatz for `L U = eigenvalue · U`.
///
/// Matching `(xD + a xˢ + b)(−xD + c xˢ + f) − g` against `L − eigenvalue`
/// coefficient by coefficient gives
///
/// ```text
/// x²D²:    −1 = [L]            xD:    f − b − 1 = [L]
/// x^(s+1)D: c − a = [L]        x^2s:  a c = [L]
/// xˢ:      c s + a f + b c = [L]      1: b f − g = [L] − eigenvalue
/// ```
///
/// which is solved in closed form. Both sign branches of the quadratic for
/// `a` are returned, upper (`a = −√…`) first.
pub fn schrodinger_factorize(
    hamiltonian: &DiffOperator,
    eigenvalue: &Coefficient,
    xpow: i32,
) -> Result<Vec<FactorizationSolution>, FactorizationError> {
    if xpow != 1 && xpow != 2 {
        return Err(FactorizationError::AnsatzPower(xpow));
    }
    let s = xpow;
    let allowed = [(2, 2), (1, 1), (s + 1, 1), (2 * s, 0), (s, 0), (0, 0)];
    for (dorder, xp, _) in hamiltonian.iter() {
        if !allowed.contains(&(xp, dorder)) {
            return Err(FactorizationError::Unmatched { xpow: xp, dorder });
        }
    }
    if hamiltonian.coefficient(2, 2) != Coefficient::from_int(-1) {
        return Err(FactorizationError::LeadingTerm);
    }
    let e1 = hamiltonian.coefficient(1, 1);
    let d1 = hamiltonian.coefficient(s + 1, 1);
    let q = hamiltonian.coefficient(2 * s, 0);
    let p = hamiltonian.coefficient(s, 0);
    let t0 = &hamiltonian.coefficient(0, 0) - eigenvalue;

    // a² + d1 a − q = 0
    let disc = &(&d1 * &d1) + &q.scale(&BigRational::from_integer(4.into()));
    let root = disc
        .sqrt_monomial()
        .ok_or(FactorizationError::Unsolvable("discriminant has no exact square root"))?;
    let half = BigRational::new(1.into(), 2.into());
    let s_coeff = Coefficient::from_int(i64::from(s));

    let mut out = Vec::with_capacity(2);
    for (branch, signed_root) in [(Branch::Upper, -&root), (Branch::Lower, root.clone())] {
        let a = (&signed_root - &d1).scale(&half);
        let c = &a + &d1;
        let sum = &a + &c;
        let inv = sum
            .inverse()
            .ok_or(FactorizationError::Unsolvable("a + c is not invertible"))?;
        let one_plus_e1 = &Coefficient::one() + &e1;
        let numer = &(&p - &(&c * &s_coeff)) + &(&one_plus_e1 * &c);
        let f = &numer * &inv;
        let b = &(&f - &Coefficient::one()) - &e1;
        let g = &(&b * &f) - &t0;
        let solution = FactorizationSolution { a, b, c, f, g, xpow, branch };
        if !solution.residual(hamiltonian, eigenvalue)?.is_zero() {
            return Err(FactorizationError::Unsolvable("matched constants do not reproduce L"));
        }
        if out.iter().all(|o: &FactorizationSolution| o.a != solution.a) {
            out.push(solution);
        }
    }
    Ok(out)
}

/// Factorize the symbolic Hamiltonian form of a system kind.
pub fn factorize_system(kind: SystemKind) -> Result<Vec<FactorizationSolution>, FactorizationError> {
    let spec = SystemSpec::of_kind(kind, 3, 0, 0.0)?;
    let hamiltonian = build_hamiltonian_form(&spec, None)?;
    schrodinger_factorize(&hamiltonian, &eigen_constant(kind), kind.ansatz_power())
}

/// Residuals of the two factorization identities of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResiduals {
    /// `(G⁻ⁿ − 1) G⁺ⁿ − c₊ − s L`
    pub raising_first: DiffOperator,
    /// `(G⁺ⁿ + 1) G⁻ⁿ − c₋ − s L`
    pub lowering_first: DiffOperator,
}

impl FactorizationResiduals {
    pub fn is_zero(&self) -> bool {
        self.raising_first.is_zero() && self.lowering_first.is_zero()
    }
}

/// Operator-level form of the factorization identities, symbolic in the level.
///
/// Oscillator-type, with `s = ¼`: `c± = ¼(v ± ½)(v ± 3/2)`.
/// Hydrogen-type, with `s = 1`: `c± = v(v ± 1)`.
pub fn factorization_residuals(kind: SystemKind) -> Result<FactorizationResiduals, FactorizationError> {
    let spec = SystemSpec::of_kind(kind, 3, 0, 0.0)?;
    let hamiltonian = build_hamiltonian_form(&spec, None)?;
    let params = hamiltonian.params().clone();
    let (plus, minus) = schrodinger_operators(kind);
    let id = DiffOperator::identity(params.clone());
    let v = Coefficient::symbol(params.index_of(kind.level_symbol()).expect("standard symbol"));
    let r = |n: i64, d: i64| Coefficient::ratio(n, d);

    let (c_up, c_down, weight) = if kind.is_oscillator_type() {
        let quarter = BigRational::new(1.into(), 4.into());
        let up = (&(&v + &r(1, 2)) * &(&v + &r(3, 2))).scale(&quarter);
        let down = (&(&v - &r(1, 2)) * &(&v - &r(3, 2))).scale(&quarter);
        (up, down, r(1, 4))
    } else {
        let up = &v * &(&v + &Coefficient::one());
        let down = &v * &(&v - &Coefficient::one());
        (up, down, Coefficient::one())
    };
    let scaled_l = hamiltonian.scale(&weight);
    let raising_first = (&minus - &id)
        .compose(&plus)?
        .try_sub(&DiffOperator::scalar(params.clone(), c_up))?
        .try_sub(&scaled_l)?;
    let lowering_first = (&plus + &id)
        .compose(&minus)?
        .try_sub(&DiffOperator::scalar(params, c_down))?
        .try_sub(&scaled_l)?;
    Ok(FactorizationResiduals { raising_first, lowering_first })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn std_sym(name: &str) -> Coefficient {
        Coefficient::symbol(ParameterSet::standard().index_of(name).unwrap())
    }

    #[test]
    fn oscillator_constants() {
        let sols = factorize_system(SystemKind::Oscillator).unwrap();
        assert_eq!(sols.len(), 2);
        let lam = std_sym("lam");
        let upper = &sols[0];
        assert_eq!(upper.branch, Branch::Upper);
        assert_eq!(upper.a, Coefficient::from_int(-1));
        assert_eq!(upper.c, Coefficient::from_int(-1));
        assert_eq!(upper.f, &lam - &Coefficient::ratio(1, 2));
        assert_eq!(upper.b, &lam - &Coefficient::ratio(3, 2));
        let lower = &sols[1];
        assert_eq!(lower.a, Coefficient::one());
        assert_eq!(lower.f, -(&lam + &Coefficient::ratio(1, 2)));
        // g = f(f − 1) − (κ² − ¼)
        for s in &sols {
            let expected = &(&s.f * &(&s.f - &Coefficient::one())) - &(&std_sym("k2") - &Coefficient::ratio(1, 4));
            assert_eq!(s.g, expected);
        }
    }

    #[test]
    fn hydrogen_constants_reproduce_level_operators() {
        let sols = factorize_system(SystemKind::Hydrogen).unwrap();
        let xi = std_sym("xi");
        let k = std_sym("K");
        assert_eq!(sols[0].a, -&xi);
        assert_eq!(sols[0].f, k.clone());
        assert_eq!(sols[1].a, xi.clone());
        assert_eq!(sols[1].f, -&k);
        // Lower branch is (T⁻ⁿ − 1) T⁺ⁿ.
        let (plus, minus) = schrodinger_operators(SystemKind::Hydrogen);
        let params = ParameterSet::standard();
        let id = DiffOperator::identity(params.clone());
        let product = (&minus - &id).compose(&plus).unwrap();
        assert_eq!(sols[1].ansatz(params).unwrap(), product);
    }

    #[test]
    fn unmatched_terms_have_no_factorization() {
        let p = ParameterSet::standard();
        let l = DiffOperator::monomial(p.clone(), Coefficient::from_int(-1), 2, 2)
            + DiffOperator::x_pow(p.clone(), 6);
        assert_eq!(
            schrodinger_factorize(&l, &Coefficient::zero(), 2),
            Err(FactorizationError::Unmatched { xpow: 6, dorder: 0 })
        );
        let l3 = DiffOperator::monomial(p.clone(), Coefficient::from_int(-1), 2, 2) + DiffOperator::x_pow(p, 3);
        assert!(schrodinger_factorize(&l3, &Coefficient::zero(), 2).is_err());
        assert!(schrodinger_factorize(&l3, &Coefficient::zero(), 3).is_err());
    }

    #[test]
    fn identities_hold_for_every_kind() {
        for kind in SystemKind::ALL {
            assert!(factorization_residuals(kind).unwrap().is_zero(), "{kind}");
        }
    }

    #[test]
    fn perturbed_constant_breaks_identity() {
        let spec = SystemSpec::oscillator(3, 0).unwrap();
        let l = build_hamiltonian_form(&spec, None).unwrap();
        let ev = eigen_constant(SystemKind::Oscillator);
        let mut sol = factorize_system(SystemKind::Oscillator).unwrap().remove(0);
        assert!(sol.residual(&l, &ev).unwrap().is_zero());
        sol.f = &sol.f + &Coefficient::one();
        assert!(!sol.residual(&l, &ev).unwrap().is_zero());
    }
}
