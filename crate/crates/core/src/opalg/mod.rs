//! Exact algebra of one-variable differential operators.
//!
//! Operators are finite sums `c · x^p · D^m` with `p` any integer, `m ≥ 0`,
//! and `c` a Laurent polynomial with rational coefficients in a fixed set of
//! named parameters. Products are normal ordered with the Leibniz rule, so
//! every operator has exactly one representation and identities such as
//! `[D, x] = 1` are checked by plain equality.
//!
//! ```
//! use su11::opalg::{commutator, DiffOperator, ParameterSet};
//!
//! let p = ParameterSet::standard();
//! let x = DiffOperator::x_pow(p.clone(), 1);
//! let d = DiffOperator::deriv(p.clone(), 1);
//! assert_eq!(commutator(&d, &x).unwrap(), DiffOperator::identity(p));
//! ```

mod coefficient;
mod operator;
mod params;

pub use coefficient::{Coefficient, Monomial};
pub use operator::{commutator, DiffOperator, OperatorTerm};
pub use params::{ParameterSet, STANDARD_SYMBOLS};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands are expressed over different parameter sets")]
    ParameterMismatch,
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateSymbol(String),
    #[error("`{0}` is not a valid parameter name")]
    InvalidSymbol(String),
    #[error("coefficient references slot {slot} but the parameter set has {len} entries")]
    SlotOutOfRange { slot: usize, len: usize },
    #[error("binding parameter slot {0} to zero divides by zero")]
    DivisionByZero(usize),
    #[error("coefficient is not an invertible monomial")]
    NotInvertible,
}
