//! Strategies shared by the property and acceptance targets.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use su11::opalg::{Coefficient, DiffOperator, Monomial, OperatorTerm, ParameterSet};

pub fn params() -> Arc<ParameterSet> {
    ParameterSet::standard()
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// A coefficient with at most two monomials in the first three symbols.
pub fn coefficient() -> impl Strategy<Value = Coefficient> {
    prop::collection::vec((rational(), prop::collection::vec(-2i32..=2, 3)), 1..=2).prop_map(|terms| {
        terms.into_iter().fold(Coefficient::zero(), |acc, (r, exps)| {
            acc + Coefficient::term(Monomial::from_exponents(exps), r)
        })
    })
}

pub fn operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((coefficient(), -3i32..=3, 0u32..=2), 0..=3).prop_map(|terms| {
        DiffOperator::normalize(
            params(),
            terms.into_iter().map(|(c, p, m)| OperatorTerm::new(c, p, m)),
        )
        .unwrap()
    })
}
