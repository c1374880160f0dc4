//! Schrödinger-factorization ladder operators and su(1,1) generators for the
//! radial N-dimensional harmonic oscillator, hydrogen atom, pseudo-harmonic
//! oscillator and Mie-type potential.
//!
//! The crate has two halves. [`opalg`] and [`systems`] build every operator
//! symbolically and check the algebraic identities exactly: commutators,
//! Casimir constancy and the factorization identities come out as the zero
//! operator or not at all. [`special`] and [`numeric`] check the spectral
//! claims against closed-form eigenfunctions, with a finite-difference
//! eigen-solver as an independent oracle for the level formulas. [`report`]
//! parses operator expressions, runs verification suites and serializes the
//! results.

pub mod numeric;
pub mod opalg;
pub mod report;
pub mod special;
pub mod systems;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/operator-algebra.md")]
    mod operator_algebra {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/eigenfunctions.md")]
    mod eigenfunctions {}
    #[doc = include_str!("../../../book/src/numerical-checks.md")]
    mod numerical_checks {}
    #[doc = include_str!("../../../book/src/suites.md")]
    mod suites {}
}
