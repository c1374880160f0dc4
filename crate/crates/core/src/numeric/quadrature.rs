use serde::Serialize;

use super::NumericError;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

/// Composite Gauss–Legendre rule on `(0, ∞)`.
///
/// `(0, s)` is mapped by `x = s u²` and `(s, ∞)` by `x = s + s t/(1 − t)`;
/// each of `u, t ∈ (0, 1)` is cut into `panels` equal panels of `order` nodes.
/// No node sits on `x = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    scale: f64,
    panels: usize,
    order: usize,
    #[serde(skip)]
    nodes: Vec<f64>,
    #[serde(skip)]
    weights: Vec<f64>,
}

/// Tolerance the reference integrals must meet on every constructed rule.
pub const SELF_TEST_TOLERANCE: f64 = 1e-12;

impl QuadratureRule {
    /// Build the rule and check it reproduces `∫e^(−x²)dx = √π/2` and
    /// `∫x e^(−2x)dx = ¼`.
    pub fn half_line(scale: f64, panels: usize, order: usize) -> Result<Self, NumericError> {
        let rule = QuadratureRule::unchecked(scale, panels, order)?;
        rule.self_test()?;
        Ok(rule)
    }

    fn unchecked(scale: f64, panels: usize, order: usize) -> Result<Self, NumericError> {
        if !(scale > 0.0) || panels == 0 || order < 2 {
            return Err(NumericError::Quadrature(format!(
                "invalid rule parameters: scale {scale}, panels {panels}, order {order}"
            )));
        }
        let (gx, gw) = gauss_legendre(order);
        let mut nodes = Vec::with_capacity(2 * panels * order);
        let mut weights = Vec::with_capacity(2 * panels * order);
        let width = 1.0 / panels as f64;
        for p in 0..panels {
            let lo = p as f64 * width;
            for (&g, &w) in gx.iter().zip(&gw) {
                let u = lo + 0.5 * width * (g + 1.0);
                let du = 0.5 * width * w;
                nodes.push(scale * u * u);
                weights.push(2.0 * scale * u * du);
            }
        }
        for p in 0..panels {
            let lo = p as f64 * width;
            for (&g, &w) in gx.iter().zip(&gw) {
                let t = lo + 0.5 * width * (g + 1.0);
                let dt = 0.5 * width * w;
                let one_minus = 1.0 - t;
                nodes.push(scale + scale * t / one_minus);
                weights.push(scale * dt / (one_minus * one_minus));
            }
        }
        Ok(QuadratureRule { scale, panels, order, nodes, weights })
    }

    /// Double the panel count from `start` until every integrand changes by
    /// less than `tol` (relative to `max(1, |I|)`) and the self-test passes.
    pub fn adaptive<F>(scale: f64, order: usize, tol: f64, integrands: &[F]) -> Result<Self, NumericError>
    where
        F: Fn(f64) -> f64,
    {
        let mut panels = 4;
        let mut rule = QuadratureRule::unchecked(scale, panels, order)?;
        let mut previous: Vec<f64> = integrands.iter().map(|f| rule.integrate(f)).collect();
        while panels < 4096 {
            panels *= 2;
            rule = QuadratureRule::unchecked(scale, panels, order)?;
            let current: Vec<f64> = integrands.iter().map(|f| rule.integrate(f)).collect();
            let converged = previous
                .iter()
                .zip(&current)
                .all(|(a, b)| (a - b).abs() <= tol * b.abs().max(1.0));
            if converged && rule.self_test().is_ok() {
                return Ok(rule);
            }
            previous = current;
        }
        Err(NumericError::Quadrature(format!(
            "no convergence to {tol} with scale {scale} and {panels} panels"
        )))
    }

    pub fn self_test(&self) -> Result<(), NumericError> {
        let gauss = self.integrate(|x| (-x * x).exp());
        let expo = self.integrate(|x| x * (-2.0 * x).exp());
        let err_g = (gauss - 0.5 * std::f64::consts::PI.sqrt()).abs();
        let err_e = (expo - 0.25).abs();
        if err_g > SELF_TEST_TOLERANCE || err_e > SELF_TEST_TOLERANCE {
            return Err(NumericError::Quadrature(format!(
                "self-test failed: errors {err_g:e} (gaussian), {err_e:e} (exponential)"
            )));
        }
        Ok(())
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn panels(&self) -> usize {
        self.panels
    }
}
