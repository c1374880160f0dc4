use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::SpecialError;

/// Value and `t`-derivative of `L_n^α(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreEval {
    pub n: u32,
    pub alpha: f64,
    pub value: f64,
    pub d1: f64,
}

/// `L_n^α(t)` by the upward recurrence
/// `k L_k = (2k − 1 + α − t) L_{k−1} − (k − 1 + α) L_{k−2}`,
/// with `d/dt L_n^α = −L_{n−1}^{α+1}`.
pub fn laguerre(n: u32, alpha: f64, t: f64) -> Result<LaguerreEval, SpecialError> {
    if !(alpha > -1.0) {
        return Err(SpecialError::Alpha(alpha));
    }
    let d1 = if n == 0 { 0.0 } else { -value(n - 1, alpha + 1.0, t) };
    Ok(LaguerreEval { n, alpha, value: value(n, alpha, t), d1 })
}

pub(crate) fn value(n: u32, alpha: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - t;
    for k in 2..=n {
        let k = f64::from(k);
        let next = ((2.0 * k - 1.0 + alpha - t) * cur - (k - 1.0 + alpha) * prev) / k;
        prev = cur;
        cur = next;
    }
    cur
}

/// Explicit sum `Σ_k (−1)^k C(n+α, n−k) t^k / k!`, evaluated in exact
/// rational arithmetic on the binary values of `alpha` and `t`.
///
/// Much slower than [`laguerre`]; kept as an independent check.
pub fn laguerre_series(n: u32, alpha: f64, t: f64) -> f64 {
    let q = |v: f64| BigRational::from_float(v).expect("finite input");
    let (alpha, t) = (q(alpha), q(t));
    let mut total = BigRational::zero();
    for k in 0..=n {
        // C(n+α, n−k) = Π_{j=1}^{n−k} (k + α + j) / j
        let mut term = BigRational::one();
        for j in 1..=(n - k) {
            term *= (BigRational::from_integer(BigInt::from(k + j)) + &alpha) / BigInt::from(j);
        }
        for j in 1..=k {
            term *= -&t / BigInt::from(j);
        }
        total += term;
    }
    total.to_f64().unwrap_or(f64::NAN)
}
