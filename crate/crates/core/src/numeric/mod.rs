//! Numeric checks of the spectral and ladder claims.
//!
//! Operators are applied to the closed-form eigenfunctions through their
//! analytic derivatives, never by differencing sampled data. Integrals over
//! `(0, ∞)` use a mapped composite Gauss–Legendre rule. The finite-difference
//! spectrum in [`fd_spectrum`] shares nothing with the rest of the module
//! except the level formulas it is compared against.
//!
//! ```
//! use su11::numeric::verify_ladder;
//! use su11::systems::{Direction, SystemSpec};
//!
//! let spec = SystemSpec::oscillator(3, 0).unwrap();
//! let report = verify_ladder(&spec, 0, Direction::Raise, 1e-8).unwrap();
//! assert!((report.measured - 0.5 * 6f64.sqrt()).abs() < 1e-8);
//! assert!(report.pass);
//! ```

mod apply;
mod quadrature;
mod spectrum;
mod verify;

pub use apply::{apply_operator, Jets, NumericOperator, MAX_JET};
pub use quadrature::{gauss_legendre, QuadratureRule, SELF_TEST_TOLERANCE};
pub use spectrum::{fd_matrix, fd_spectrum, refinement_ratios, SpectrumReport, Tridiagonal, MIN_POINTS};
pub use verify::{
    casimir_value, g3_eigenvalue, sample_points, verify_adjointness, verify_adjointness_with, verify_casimir,
    verify_ladder, LadderReport, Verifier, PANEL_ORDER, REFINEMENT_TOLERANCE,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::opalg::AlgebraError;
use crate::special::SpecialError;
use crate::systems::{SystemError, SystemKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("non-finite sample at node {index} (x = {x})")]
    NonFinite { index: usize, x: f64 },
    #[error("parameter `{0}` is not bound to a value")]
    Unbound(String),
    #[error("`{0}` is not a parameter of this operator")]
    UnknownParameter(String),
    #[error("term x^{xpow} D^{dorder} exceeds second order; compose lower-order applications instead")]
    UnsupportedOrder { xpow: i32, dorder: u32 },
    #[error("operator needs {needed} derivatives, sample carries {available}")]
    JetExhausted { needed: usize, available: usize },
    #[error("state n = {n} outside the sampled range 0..={nmax}")]
    StateOutOfRange { n: u32, nmax: u32 },
    #[error("sample lengths differ: {0} vs {1}")]
    Length(usize, usize),
    #[error("quadrature: {0}")]
    Quadrature(String),
    #[error("grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Weight of the radial inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    /// `dx`
    Plain,
    /// `dx/x`
    InverseX,
}

impl WeightKind {
    /// `dx` for oscillator-type systems, `dx/x` for hydrogen-type ones, the
    /// weights under which each triple is hermitian.
    pub fn for_kind(kind: SystemKind) -> WeightKind {
        if kind.is_oscillator_type() {
            WeightKind::Plain
        } else {
            WeightKind::InverseX
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            WeightKind::Plain => 1.0,
            WeightKind::InverseX => 1.0 / x,
        }
    }
}

/// `Σ wᵢ f(xᵢ) g(xᵢ) weight(xᵢ)` for `f`, `g` sampled at the rule's nodes.
pub fn inner_product(f: &[f64], g: &[f64], weight: WeightKind, rule: &QuadratureRule) -> Result<f64, NumericError> {
    if f.len() != rule.len() || g.len() != rule.len() {
        return Err(NumericError::Length(f.len().max(g.len()), rule.len()));
    }
    let mut total = 0.0;
    for (i, ((&x, &w), (&a, &b))) in rule.nodes().iter().zip(rule.weights()).zip(f.iter().zip(g)).enumerate() {
        if !a.is_finite() || !b.is_finite() {
            return Err(NumericError::NonFinite { index: i, x });
        }
        total += w * a * b * weight.eval(x);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::{DiffOperator, ParameterSet};
    use crate::special::Eigenfunction;
    use crate::systems::{build_generators, SystemSpec, Variable};

    fn rule() -> QuadratureRule {
        QuadratureRule::half_line(4.0, 32, 20).unwrap()
    }

    #[test]
    fn normalization_under_each_weight() {
        let rule = rule();
        let osc = Eigenfunction::new(&SystemSpec::oscillator(3, 0).unwrap(), 0);
        let u: Vec<f64> = rule.nodes().iter().map(|&x| osc.eval(x).unwrap().0).collect();
        assert!((inner_product(&u, &u, WeightKind::Plain, &rule).unwrap() - 1.0).abs() < 1e-12);
        let u1: Vec<f64> = rule
            .nodes()
            .iter()
            .map(|&x| Eigenfunction::new(osc.spec(), 1).eval(x).unwrap().0)
            .collect();
        assert!(inner_product(&u, &u1, WeightKind::Plain, &rule).unwrap().abs() < 1e-10);

        let hyd = Eigenfunction::new(&SystemSpec::hydrogen(3, 0).unwrap(), 0);
        let h: Vec<f64> = rule.nodes().iter().map(|&x| hyd.eval(x).unwrap().0).collect();
        assert!((inner_product(&h, &h, WeightKind::InverseX, &rule).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_finite_samples_are_located() {
        let rule = rule();
        let mut f = vec![1.0; rule.len()];
        f[7] = f64::NAN;
        let err = inner_product(&f, &f, WeightKind::Plain, &rule).unwrap_err();
        assert_eq!(err, NumericError::NonFinite { index: 7, x: rule.nodes()[7] });
    }

    #[test]
    fn operator_application() {
        let spec = SystemSpec::oscillator(3, 0).unwrap();
        let ef = Eigenfunction::new(&spec, 0);
        let xs: Vec<f64> = (1..=50).map(|i| 0.1 * f64::from(i)).collect();
        let u: Vec<f64> = xs.iter().map(|&x| ef.eval(x).unwrap().0).collect();
        let bindings = spec.numeric_bindings(None);

        let id = DiffOperator::identity(ParameterSet::standard());
        assert_eq!(apply_operator(&id, &bindings, &ef, &xs).unwrap(), u);

        let g = build_generators(spec.kind(), Variable::X).unwrap();
        let d3u = apply_operator(&g.g3, &bindings, &ef, &xs).unwrap();
        let dmu = apply_operator(&g.gminus, &bindings, &ef, &xs).unwrap();
        for i in 0..xs.len() {
            assert!((d3u[i] - 0.75 * u[i]).abs() < 1e-10);
            assert!(dmu[i].abs() < 1e-10);
        }
    }

    #[test]
    fn application_errors() {
        let spec = SystemSpec::oscillator(3, 0).unwrap();
        let ef = Eigenfunction::new(&spec, 0);
        let g = build_generators(spec.kind(), Variable::X).unwrap();
        assert_eq!(
            apply_operator(&g.g3, &[], &ef, &[1.0]).unwrap_err(),
            NumericError::Unbound("k2".into())
        );
        let d3 = DiffOperator::deriv(ParameterSet::standard(), 3);
        assert_eq!(
            apply_operator(&d3, &[], &ef, &[1.0]).unwrap_err(),
            NumericError::UnsupportedOrder { xpow: 0, dorder: 3 }
        );
    }

    #[test]
    fn jets_propagate_derivatives() {
        // (xD)(xD) applied twice through jets equals x²D² + xD applied once.
        let p = ParameterSet::standard();
        let xd = DiffOperator::x_pow(p.clone(), 1) * DiffOperator::deriv(p.clone(), 1);
        let xdxd = &xd * &xd;
        let spec = SystemSpec::hydrogen(4, 1).unwrap();
        let ef = Eigenfunction::new(&spec, 3);
        let xs = [0.3, 1.1, 4.0, 9.5];
        let jets = Jets::of_eigenfunction(&ef, &xs).unwrap();
        let once = NumericOperator::new(&xd, &[]).unwrap();
        let twice = once.apply(&xs, &once.apply(&xs, &jets).unwrap()).unwrap().values();
        let direct = NumericOperator::new(&xdxd, &[]).unwrap().apply(&xs, &jets).unwrap().values();
        for (a, b) in twice.iter().zip(&direct) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }
}
