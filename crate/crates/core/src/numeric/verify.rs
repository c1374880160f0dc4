use serde::Serialize;

use crate::special::Eigenfunction;
use crate::systems::{
    build_generators, casimir_constant, ladder_coefficient, level, Direction, Sign, SystemKind, SystemSpec,
    Variable,
};

use super::apply::{Jets, NumericOperator};
use super::quadrature::QuadratureRule;
use super::{inner_product, NumericError, WeightKind};

/// Gauss–Legendre order per panel used for eigenfunction integrals.
pub const PANEL_ORDER: usize = 20;

/// Agreement required between two successive panel doublings.
pub const REFINEMENT_TOLERANCE: f64 = 1e-12;

/// Outcome of one ladder-action check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderReport {
    pub kind: SystemKind,
    #[serde(rename = "N")]
    pub dim: u32,
    pub ell: u32,
    pub n: u32,
    pub direction: Direction,
    pub predicted: f64,
    pub measured: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Generators, quadrature rule and sampled eigenfunctions `U_0 … U_{nmax+1}`
/// of one system, shared by all checks on it.
#[derive(Debug, Clone)]
pub struct Verifier {
    spec: SystemSpec,
    weight: WeightKind,
    rule: QuadratureRule,
    g3: NumericOperator,
    gplus: NumericOperator,
    gminus: NumericOperator,
    states: Vec<Eigenfunction>,
    jets: Vec<Jets>,
}

impl Verifier {
    pub fn new(spec: &SystemSpec, nmax: u32) -> Result<Verifier, NumericError> {
        let generators = build_generators(spec.kind(), Variable::X)?;
        let bindings = spec.numeric_bindings(None);
        let g3 = NumericOperator::new(&generators.g3, &bindings)?;
        let gplus = NumericOperator::new(&generators.gplus, &bindings)?;
        let gminus = NumericOperator::new(&generators.gminus, &bindings)?;
        let weight = WeightKind::for_kind(spec.kind());
        let states: Vec<Eigenfunction> = (0..=nmax + 1).map(|n| Eigenfunction::new(spec, n)).collect();

        let integrands: Vec<_> = states
            .iter()
            .map(|ef| {
                move |x: f64| {
                    let u = ef.eval(x).map(|v| v.0).unwrap_or(f64::NAN);
                    u * u * weight.eval(x)
                }
            })
            .collect();
        let rule = QuadratureRule::adaptive(rule_scale(spec, nmax + 1), PANEL_ORDER, REFINEMENT_TOLERANCE, &integrands)?;
        let jets = states
            .iter()
            .map(|ef| Jets::of_eigenfunction(ef, rule.nodes()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Verifier { spec: *spec, weight, rule, g3, gplus, gminus, states, jets })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn weight(&self) -> WeightKind {
        self.weight
    }

    /// Largest `n` whose ladder checks are covered.
    pub fn nmax(&self) -> u32 {
        self.states.len() as u32 - 2
    }

    fn state(&self, n: u32) -> Result<&Jets, NumericError> {
        self.jets.get(n as usize).ok_or(NumericError::StateOutOfRange { n, nmax: self.nmax() + 1 })
    }

    fn generator(&self, direction: Direction) -> &NumericOperator {
        match direction {
            Direction::Raise => &self.gplus,
            Direction::Lower => &self.gminus,
        }
    }

    /// `⟨f, g⟩` under `weight` on this verifier's rule.
    pub fn inner(&self, f: &[f64], g: &[f64], weight: WeightKind) -> Result<f64, NumericError> {
        inner_product(f, g, weight, &self.rule)
    }

    /// `⟨U_m, U_n⟩` under the system's weight.
    pub fn overlap(&self, m: u32, n: u32) -> Result<f64, NumericError> {
        self.inner(&self.state(m)?.values(), &self.state(n)?.values(), self.weight)
    }

    pub fn ladder(&self, n: u32, direction: Direction, tol: f64) -> Result<LadderReport, NumericError> {
        let nodes = self.rule.nodes();
        let image = self.generator(direction).apply(nodes, self.state(n)?)?.values();
        let target = match direction {
            Direction::Raise => Some(n + 1),
            Direction::Lower => n.checked_sub(1),
        };
        let (measured, remainder) = match target {
            Some(t) => {
                let ut = self.state(t)?.values();
                let measured = self.inner(&ut, &image, self.weight)?;
                let remainder: Vec<f64> = image.iter().zip(&ut).map(|(g, u)| g - measured * u).collect();
                (measured, remainder)
            }
            None => (0.0, image),
        };
        let residual = self.inner(&remainder, &remainder, self.weight)?.max(0.0).sqrt();
        let predicted = ladder_coefficient(&self.spec, n, direction);
        Ok(LadderReport {
            kind: self.spec.kind(),
            dim: self.spec.dim(),
            ell: self.spec.ell(),
            n,
            direction,
            predicted,
            measured,
            residual,
            tolerance: tol,
            pass: (measured - predicted).abs() <= tol && residual <= tol,
        })
    }

    /// `|⟨U_m, G₊U_n⟩ − ⟨G₋U_m, U_n⟩|` under `weight`.
    pub fn adjointness(&self, m: u32, n: u32, weight: WeightKind) -> Result<f64, NumericError> {
        let nodes = self.rule.nodes();
        let um = self.state(m)?;
        let un = self.state(n)?;
        let raised = self.gplus.apply(nodes, un)?.values();
        let lowered = self.gminus.apply(nodes, um)?.values();
        let left = self.inner(&um.values(), &raised, weight)?;
        let right = self.inner(&lowered, &un.values(), weight)?;
        Ok((left - right).abs())
    }

    /// Pointwise `max |C U_n − c U_n| / max |U_n|` over [`sample_points`], with
    /// `C U = −G±(G∓U) + G₃(G₃U) ∓ G₃U` built from second-order applications.
    pub fn casimir(&self, n: u32, sign: Sign) -> Result<f64, NumericError> {
        let ef = self.states.get(n as usize).ok_or(NumericError::StateOutOfRange { n, nmax: self.nmax() + 1 })?;
        let xs = sample_points(&self.spec, n);
        let u = Jets::of_eigenfunction(ef, &xs)?;
        let (outer, inner) = match sign {
            Sign::Plus => (&self.gplus, &self.gminus),
            Sign::Minus => (&self.gminus, &self.gplus),
        };
        let ladder = outer.apply(&xs, &inner.apply(&xs, &u)?)?;
        let g3u = self.g3.apply(&xs, &u)?;
        let g3g3u = self.g3.apply(&xs, &g3u)?;
        let linear = match sign {
            Sign::Plus => g3u.scaled(-1.0),
            Sign::Minus => g3u,
        };
        let cu = g3g3u.minus(&ladder).plus(&linear).values();
        let c = casimir_value(&self.spec);
        Ok(relative_pointwise(&cu, &u.values(), c))
    }

    /// Pointwise `max |G₃U_n − v U_n| / max |U_n|` with `v = λ_n/2` or `K_n`.
    pub fn g3_residual(&self, n: u32) -> Result<f64, NumericError> {
        let ef = self.states.get(n as usize).ok_or(NumericError::StateOutOfRange { n, nmax: self.nmax() + 1 })?;
        let xs = sample_points(&self.spec, n);
        let u = Jets::of_eigenfunction_values(ef, &xs)?;
        let g3u = self.g3.apply(&xs, &u)?.values();
        Ok(relative_pointwise(&g3u, &u.values(), g3_eigenvalue(&self.spec, n)))
    }
}

fn relative_pointwise(image: &[f64], u: &[f64], eigenvalue: f64) -> f64 {
    let max_u = u.iter().map(|v| v.abs()).fold(0.0, f64::max);
    image
        .iter()
        .zip(u)
        .map(|(a, b)| (a - eigenvalue * b).abs())
        .fold(0.0, f64::max)
        / max_u
}

/// Split point of the half-line rule: a little past the outermost turning
/// point of `U_nmax`.
fn rule_scale(spec: &SystemSpec, nmax: u32) -> f64 {
    let v = level(spec, nmax).value;
    match spec.coupling() {
        None => (2.0 * v).sqrt() + 2.0,
        Some(c) => (2.0 * v + 5.0) / c,
    }
}

/// 200 equally spaced points `X/200, …, X` covering the support of `U_n`.
pub fn sample_points(spec: &SystemSpec, n: u32) -> Vec<f64> {
    let v = level(spec, n).value;
    let xmax = match spec.coupling() {
        None => (2.0 * v).sqrt() + 4.0,
        Some(c) => (2.0 * v + 6.0 * v.sqrt() + 10.0) / c,
    };
    (1..=200).map(|i| xmax * f64::from(i) / 200.0).collect()
}

/// Numeric value of the Casimir constant of a system.
pub fn casimir_value(spec: &SystemSpec) -> f64 {
    let bindings = spec.numeric_bindings(None);
    let params = crate::opalg::ParameterSet::standard();
    let mut values = vec![None; params.len()];
    for (name, v) in bindings {
        values[params.index_of(name).expect("standard symbol")] = Some(v);
    }
    casimir_constant(spec.kind()).evaluate(&values).expect("index is bound")
}

/// Eigenvalue of `G₃` on `U_n`: `λ_n/2` or `K_n` (and their analogues).
pub fn g3_eigenvalue(spec: &SystemSpec, n: u32) -> f64 {
    let v = level(spec, n).value;
    if spec.kind().is_oscillator_type() {
        0.5 * v
    } else {
        v
    }
}

pub fn verify_ladder(spec: &SystemSpec, n: u32, direction: Direction, tol: f64) -> Result<LadderReport, NumericError> {
    Verifier::new(spec, n)?.ladder(n, direction, tol)
}

/// Adjointness residual under the system's own weight.
pub fn verify_adjointness(spec: &SystemSpec, m: u32, n: u32) -> Result<f64, NumericError> {
    verify_adjointness_with(spec, m, n, WeightKind::for_kind(spec.kind()))
}

/// Adjointness residual under an explicit weight.
pub fn verify_adjointness_with(spec: &SystemSpec, m: u32, n: u32, weight: WeightKind) -> Result<f64, NumericError> {
    Verifier::new(spec, m.max(n))?.adjointness(m, n, weight)
}

pub fn verify_casimir(spec: &SystemSpec, n: u32, sign: Sign) -> Result<f64, NumericError> {
    Verifier::new(spec, n)?.casimir(n, sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_ground_state_raising() {
        let r = verify_ladder(&SystemSpec::oscillator(3, 0).unwrap(), 0, Direction::Raise, 1e-8).unwrap();
        assert!((r.measured - 0.5 * 6f64.sqrt()).abs() < 1e-10, "{r:?}");
        assert!(r.residual < 1e-8 && r.pass);
    }

    #[test]
    fn hydrogen_ground_state_raising() {
        let r = verify_ladder(&SystemSpec::hydrogen(3, 0).unwrap(), 0, Direction::Raise, 1e-8).unwrap();
        assert!((r.measured - 2f64.sqrt()).abs() < 1e-10, "{r:?}");
        assert!(r.pass);
    }

    #[test]
    fn lowering_annihilates_ground_state() {
        for kind in SystemKind::ALL {
            let spec = SystemSpec::of_kind(kind, 3, 1, 1.0).unwrap();
            let r = verify_ladder(&spec, 0, Direction::Lower, 1e-10).unwrap();
            assert_eq!(r.measured, 0.0);
            assert!(r.residual < 1e-10 && r.pass, "{r:?}");
        }
    }

    #[test]
    fn ladder_coherence() {
        for kind in SystemKind::ALL {
            let spec = SystemSpec::of_kind(kind, 5, 2, 1.0).unwrap();
            let v = Verifier::new(&spec, 6).unwrap();
            for n in 1..=6 {
                let down = v.ladder(n, Direction::Lower, 1e-8).unwrap();
                let up = v.ladder(n - 1, Direction::Raise, 1e-8).unwrap();
                assert!((down.measured - up.measured).abs() < 1e-9);
                assert!(down.pass && up.pass, "{down:?} {up:?}");
            }
        }
    }

    #[test]
    fn orthonormality() {
        for kind in SystemKind::ALL {
            let v = Verifier::new(&SystemSpec::of_kind(kind, 3, 0, 0.0).unwrap(), 4).unwrap();
            for m in 0..=5 {
                for n in 0..=5 {
                    let expected = if m == n { 1.0 } else { 0.0 };
                    assert!((v.overlap(m, n).unwrap() - expected).abs() < 1e-10, "{kind} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn adjointness_depends_on_weight() {
        assert!(verify_adjointness(&SystemSpec::oscillator(3, 0).unwrap(), 1, 0).unwrap() < 1e-10);
        let hyd = SystemSpec::hydrogen(3, 0).unwrap();
        assert!(verify_adjointness(&hyd, 2, 1).unwrap() < 1e-10);
        assert!(verify_adjointness_with(&hyd, 2, 1, WeightKind::Plain).unwrap() > 1e-3);
    }

    #[test]
    fn casimir_constants() {
        let osc = SystemSpec::oscillator(3, 0).unwrap();
        assert_eq!(casimir_value(&osc), -3.0 / 16.0);
        let hyd = SystemSpec::hydrogen(3, 0).unwrap();
        assert_eq!(casimir_value(&hyd), 0.0);
        let mie = SystemSpec::mie(3, 0, -1.0, 0.0, 0.0).unwrap();
        assert_eq!(casimir_value(&mie), casimir_value(&hyd));
        for spec in [osc, hyd] {
            for n in [0, 3] {
                for sign in [Sign::Plus, Sign::Minus] {
                    let r = verify_casimir(&spec, n, sign).unwrap();
                    assert!(r < 1e-8, "{spec} n={n} {sign:?}: {r}");
                }
            }
        }
    }

    #[test]
    fn g3_eigen_residuals() {
        for kind in SystemKind::ALL {
            for dim in [2, 3, 5, 10] {
                for ell in 0..=2 {
                    let spec = SystemSpec::of_kind(kind, dim, ell, 1.0).unwrap();
                    let v = Verifier::new(&spec, 9).unwrap();
                    for n in 0..=10 {
                        let r = v.g3_residual(n).unwrap();
                        assert!(r < 1e-10, "{spec} n={n}: {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn pseudo_harmonic_reduction() {
        let osc = verify_ladder(&SystemSpec::oscillator(3, 1).unwrap(), 2, Direction::Raise, 1e-8).unwrap();
        let ph = SystemSpec::pseudo_harmonic(3, 1, 0.5, 0.0, 0.0).unwrap();
        let ph = verify_ladder(&ph, 2, Direction::Raise, 1e-8).unwrap();
        assert_eq!((osc.dim, osc.ell, osc.n, osc.pass), (ph.dim, ph.ell, ph.n, ph.pass));
        assert!((osc.measured - ph.measured).abs() < 1e-12);
        assert!((osc.predicted - ph.predicted).abs() < 1e-12);
        assert!((osc.residual - ph.residual).abs() < 1e-12);
    }
}
