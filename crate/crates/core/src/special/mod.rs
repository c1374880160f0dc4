//! Generalized Laguerre polynomials and the closed-form radial eigenfunctions.
//!
//! Oscillator-type systems:
//! `U_n(x) = 𝒩 (−1)ⁿ x^(I+½) e^(−x²/2) L_n^I(x²)`, normalized under `dx`.
//!
//! Hydrogen-type systems:
//! `U_n(x) = 𝒩 (−1)ⁿ x^(I+½) e^(−cx) L_n^(2I)(2cx)`, normalized under `dx/x`.
//!
//! The `(−1)ⁿ` makes the leading large-`x` behavior positive for every `n`,
//! which is the phase under which the raising and lowering matrix elements
//! are the positive square roots.

mod laguerre;

pub use laguerre::{laguerre, laguerre_series, LaguerreEval};

use serde::Serialize;
use thiserror::Error;

use crate::systems::{level, SystemSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("Laguerre parameter alpha = {0} must exceed -1")]
    Alpha(f64),
    #[error("eigenfunctions are only evaluated at x > 0, got {0}")]
    Origin(f64),
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Normalization constant of the `n`-th eigenfunction under its system's weight.
///
/// Oscillator-type `√(2·n!/Γ(n+I+1))`, hydrogen-type `√((2c)^(2I+1)·n!/Γ(n+2I+1))`.
pub fn normalization_constant(spec: &SystemSpec, n: u32) -> f64 {
    ln_normalization(spec, n).exp()
}

fn ln_normalization(spec: &SystemSpec, n: u32) -> f64 {
    let index = crate::systems::angular_index(spec).value;
    let n = f64::from(n);
    if spec.kind().is_oscillator_type() {
        0.5 * (std::f64::consts::LN_2 + ln_gamma(n + 1.0) - ln_gamma(n + index + 1.0))
    } else {
        let c = spec.coupling().expect("hydrogen-type coupling");
        0.5 * ((2.0 * index + 1.0) * (2.0 * c).ln() + ln_gamma(n + 1.0) - ln_gamma(n + 2.0 * index + 1.0))
    }
}

/// Analytic radial eigenstate of one system.
#[derive(Debug, Clone, Serialize)]
pub struct Eigenfunction {
    spec: SystemSpec,
    n: u32,
    norm: f64,
    #[serde(skip)]
    ln_norm: f64,
    #[serde(skip)]
    shape: Shape,
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    oscillator_type: bool,
    /// Power of `x` in the prefactor, `I + ½`.
    power: f64,
    /// Laguerre parameter `I` or `2I`.
    alpha: f64,
    /// Coupling `c` (1 for oscillator-type).
    coupling: f64,
    /// `I² − ¼`.
    centrifugal: f64,
    /// Level parameter λ, K, Λ or Σ.
    level: f64,
    phase: f64,
}

impl Eigenfunction {
    pub fn new(spec: &SystemSpec, n: u32) -> Self {
        let index = crate::systems::angular_index(spec).value;
        let oscillator_type = spec.kind().is_oscillator_type();
        let shape = Shape {
            oscillator_type,
            power: index + 0.5,
            alpha: if oscillator_type { index } else { 2.0 * index },
            coupling: spec.coupling().unwrap_or(1.0),
            centrifugal: num_traits::ToPrimitive::to_f64(&spec.index_squared_exact()).unwrap_or(index * index)
                - 0.25,
            level: level(spec, n).value,
            phase: if n % 2 == 0 { 1.0 } else { -1.0 },
        };
        let ln_norm = ln_normalization(spec, n);
        Eigenfunction { spec: *spec, n, norm: ln_norm.exp(), ln_norm, shape }
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Level parameter of this state.
    pub fn level(&self) -> f64 {
        self.shape.level
    }

    /// `(U, U′, U″)` at `x > 0`, each from the closed product form.
    pub fn eval(&self, x: f64) -> Result<(f64, f64, f64), SpecialError> {
        if !(x > 0.0) {
            return Err(SpecialError::Origin(x));
        }
        let sh = &self.shape;
        let (w, w1, w2, t, t1, t2) = if sh.oscillator_type {
            (0.5 * x * x, x, 1.0, x * x, 2.0 * x, 2.0)
        } else {
            let c = sh.coupling;
            (c * x, c, 0.0, 2.0 * c * x, 2.0 * c, 0.0)
        };
        let prefactor = sh.phase * (self.ln_norm + sh.power * x.ln() - w).exp();
        if prefactor == 0.0 {
            // Far tail: the polynomial factor may overflow, the product is zero.
            return Ok((0.0, 0.0, 0.0));
        }
        let log_d1 = sh.power / x - w1;
        let p1 = prefactor * log_d1;
        let p2 = prefactor * (log_d1 * log_d1 - sh.power / (x * x) - w2);

        let n = self.n;
        let l0 = laguerre::value(n, sh.alpha, t);
        let l1 = if n >= 1 { -laguerre::value(n - 1, sh.alpha + 1.0, t) } else { 0.0 };
        let l2 = if n >= 2 { laguerre::value(n - 2, sh.alpha + 2.0, t) } else { 0.0 };

        let u = prefactor * l0;
        let du = p1 * l0 + prefactor * l1 * t1;
        let d2u = p2 * l0 + 2.0 * p1 * l1 * t1 + prefactor * (l2 * t1 * t1 + l1 * t2);
        Ok((u, du, d2u))
    }

    /// `U″ = q U` with `q` and its first two derivatives at `x`.
    ///
    /// Oscillator-type `q = x² + (I²−¼)/x² − 2v`; hydrogen-type
    /// `q = c² + (I²−¼)/x² − 2cv/x`.
    pub fn eigen_potential(&self, x: f64) -> (f64, f64, f64) {
        let sh = &self.shape;
        let a = sh.centrifugal;
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        let cent = (a * inv2, -2.0 * a * inv2 * inv, 6.0 * a * inv2 * inv2);
        if sh.oscillator_type {
            (x * x + cent.0 - 2.0 * sh.level, 2.0 * x + cent.1, 2.0 + cent.2)
        } else {
            let k = 2.0 * sh.coupling * sh.level;
            let c2 = sh.coupling * sh.coupling;
            (c2 + cent.0 - k * inv, cent.1 + k * inv2, cent.2 - 2.0 * k * inv2 * inv)
        }
    }

    /// `U` and its first four derivatives. The third and fourth come from the
    /// radial equation: `U‴ = q′U + qU′`, `U⁗ = (q″ + q²)U + 2q′U′`.
    pub fn jet(&self, x: f64) -> Result<[f64; 5], SpecialError> {
        let (u, du, d2u) = self.eval(x)?;
        let (q, q1, q2) = self.eigen_potential(x);
        let d3u = q1 * u + q * du;
        let d4u = (q2 + q * q) * u + 2.0 * q1 * du;
        Ok([u, du, d2u, d3u, d4u])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::SystemKind;

    #[test]
    fn normalization_examples() {
        let osc = SystemSpec::oscillator(3, 0).unwrap();
        let expected = (4.0 / std::f64::consts::PI.sqrt()).sqrt();
        assert!((normalization_constant(&osc, 0) - expected).abs() < 1e-14);
        let hyd = SystemSpec::hydrogen(3, 0).unwrap();
        assert!((normalization_constant(&hyd, 0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn ground_states_have_closed_forms() {
        let osc = Eigenfunction::new(&SystemSpec::oscillator(3, 0).unwrap(), 0);
        let hyd = Eigenfunction::new(&SystemSpec::hydrogen(3, 0).unwrap(), 0);
        for &x in &[0.1, 0.7, 1.9, 4.0] {
            let u = osc.eval(x).unwrap().0;
            assert!((u - osc.norm() * x * (-0.5 * x * x).exp()).abs() < 1e-15);
            let u = hyd.eval(x).unwrap().0;
            assert!((u - 2.0 * x * (-x).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn radial_equation_residual() {
        // U″ from the product form must equal q·U from the radial equation.
        for kind in SystemKind::ALL {
            for (dim, ell) in [(2, 0), (3, 0), (3, 2), (10, 1)] {
                let spec = SystemSpec::of_kind(kind, dim, ell, 1.0).unwrap();
                for n in 0..=10 {
                    let ef = Eigenfunction::new(&spec, n);
                    let xs: Vec<f64> = (1..=200).map(|i| 0.05 * f64::from(i)).collect();
                    let max_u = xs.iter().map(|&x| ef.eval(x).unwrap().0.abs()).fold(0.0, f64::max);
                    for &x in &xs {
                        let (u, _, d2u) = ef.eval(x).unwrap();
                        let q = ef.eigen_potential(x).0;
                        let res = (d2u - q * u).abs() / max_u;
                        assert!(res < 1e-10, "{spec} n={n} x={x} residual {res}");
                    }
                }
            }
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let spec = SystemSpec::hydrogen(5, 1).unwrap();
        let ef = Eigenfunction::new(&spec, 4);
        let h = 1e-5;
        for &x in &[0.5, 2.0, 7.5] {
            let (_, du, d2u) = ef.eval(x).unwrap();
            let fd1 = (ef.eval(x + h).unwrap().0 - ef.eval(x - h).unwrap().0) / (2.0 * h);
            let fd2 = (ef.eval(x + h).unwrap().1 - ef.eval(x - h).unwrap().1) / (2.0 * h);
            assert!((du - fd1).abs() < 1e-7);
            assert!((d2u - fd2).abs() < 1e-7);
            let jet = ef.jet(x).unwrap();
            let fd3 = (ef.jet(x + h).unwrap()[2] - ef.jet(x - h).unwrap()[2]) / (2.0 * h);
            let fd4 = (ef.jet(x + h).unwrap()[3] - ef.jet(x - h).unwrap()[3]) / (2.0 * h);
            assert!((jet[3] - fd3).abs() < 1e-6);
            assert!((jet[4] - fd4).abs() < 1e-6);
        }
    }

    #[test]
    fn node_count_equals_radial_number() {
        for kind in [SystemKind::Oscillator, SystemKind::Hydrogen] {
            let spec = SystemSpec::of_kind(kind, 3, 0, 0.0).unwrap();
            for n in 0..6 {
                let ef = Eigenfunction::new(&spec, n);
                let xmax = if kind.is_oscillator_type() { 8.0 } else { 60.0 };
                let mut changes = 0;
                let mut prev = ef.eval(1e-3).unwrap().0;
                for i in 1..=20_000 {
                    let u = ef.eval(xmax * f64::from(i) / 20_000.0).unwrap().0;
                    if u.abs() > 1e-300 && prev.abs() > 1e-300 && u.signum() != prev.signum() {
                        changes += 1;
                    }
                    if u.abs() > 1e-300 {
                        prev = u;
                    }
                }
                assert_eq!(changes, n, "{kind} n={n}");
            }
        }
    }

    #[test]
    fn decays_at_both_ends() {
        let ef = Eigenfunction::new(&SystemSpec::oscillator(2, 0).unwrap(), 3);
        assert!(ef.eval(1e-8).unwrap().0.abs() < 1e-3);
        assert!(ef.eval(12.0).unwrap().0.abs() < 1e-20);
        assert!(ef.eval(0.0).is_err());
    }
}
