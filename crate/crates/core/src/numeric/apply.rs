use crate::opalg::DiffOperator;
use crate::special::Eigenfunction;

use super::NumericError;

/// Highest derivative carried by a [`Jets`] sample.
pub const MAX_JET: usize = 4;

/// A function sampled at a fixed set of nodes together with its first
/// `order` derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct Jets {
    order: usize,
    data: Vec<[f64; MAX_JET + 1]>,
}

impl Jets {
    /// Sample an eigenfunction and its first four derivatives.
    pub fn of_eigenfunction(ef: &Eigenfunction, nodes: &[f64]) -> Result<Jets, NumericError> {
        let data = nodes.iter().map(|&x| ef.jet(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(Jets { order: MAX_JET, data })
    }

    /// Sample only `U, U′, U″` from the product form.
    pub fn of_eigenfunction_values(ef: &Eigenfunction, nodes: &[f64]) -> Result<Jets, NumericError> {
        let data = nodes
            .iter()
            .map(|&x| ef.eval(x).map(|(u, d1, d2)| [u, d1, d2, 0.0, 0.0]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Jets { order: 2, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Function values.
    pub fn values(&self) -> Vec<f64> {
        self.data.iter().map(|j| j[0]).collect()
    }

    pub fn derivative(&self, i: usize, k: usize) -> f64 {
        assert!(k <= self.order);
        self.data[i][k]
    }

    pub fn scaled(&self, factor: f64) -> Jets {
        let data = self.data.iter().map(|j| j.map(|v| factor * v)).collect();
        Jets { order: self.order, data }
    }

    /// `self − other` on the common derivative order.
    pub fn minus(&self, other: &Jets) -> Jets {
        assert_eq!(self.len(), other.len());
        let order = self.order.min(other.order);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = [0.0; MAX_JET + 1];
                for k in 0..=order {
                    out[k] = a[k] - b[k];
                }
                out
            })
            .collect();
        Jets { order, data }
    }

    pub fn plus(&self, other: &Jets) -> Jets {
        self.minus(&other.scaled(-1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    coeff: f64,
    xpow: i32,
    dorder: u32,
}

/// A [`DiffOperator`] with every parameter bound to a floating-point value.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericOperator {
    terms: Vec<Term>,
    dorder: u32,
}

impl NumericOperator {
    /// Bind parameters by name. Terms above second order are rejected so the
    /// operator acts on the closed-form `(U, U′, U″)`; compose applications
    /// of first- and second-order operators instead.
    pub fn new(op: &DiffOperator, bindings: &[(&str, f64)]) -> Result<Self, NumericError> {
        let params = op.params();
        let mut values = vec![None; params.len()];
        for (name, v) in bindings {
            match params.index_of(name) {
                Some(slot) => values[slot] = Some(*v),
                None => return Err(NumericError::UnknownParameter(name.to_string())),
            }
        }
        let mut terms = Vec::with_capacity(op.len());
        for (dorder, xpow, c) in op.iter() {
            if dorder > 2 {
                return Err(NumericError::UnsupportedOrder { xpow, dorder });
            }
            let coeff = c
                .evaluate(&values)
                .map_err(|slot| NumericError::Unbound(params.name(slot).to_string()))?;
            terms.push(Term { coeff, xpow, dorder });
        }
        Ok(NumericOperator { terms, dorder: op.dorder() })
    }

    pub fn dorder(&self) -> u32 {
        self.dorder
    }

    /// `op f` and as many of its derivatives as `f`'s jet allows.
    ///
    /// `(c xᵖ Dᵐ f)^(j) = c Σᵢ C(j,i) p^(i falling) x^(p−i) f^(m+j−i)`.
    pub fn apply(&self, nodes: &[f64], f: &Jets) -> Result<Jets, NumericError> {
        assert_eq!(nodes.len(), f.len(), "one jet per node");
        let m = self.dorder as usize;
        if m > f.order {
            return Err(NumericError::JetExhausted { needed: m, available: f.order });
        }
        let order = f.order - m;
        let mut data = Vec::with_capacity(nodes.len());
        for (i, &x) in nodes.iter().enumerate() {
            let jet = &f.data[i];
            let mut out = [0.0; MAX_JET + 1];
            for t in &self.terms {
                let p = f64::from(t.xpow);
                for (j, slot) in out.iter_mut().enumerate().take(order + 1) {
                    let mut falling = 1.0;
                    let mut binom = 1.0;
                    let mut acc = 0.0;
                    for k in 0..=j {
                        if k > 0 {
                            falling *= p - (k - 1) as f64;
                            binom *= (j - k + 1) as f64 / k as f64;
                        }
                        if falling == 0.0 {
                            break;
                        }
                        acc += binom * falling * x.powi(t.xpow - k as i32) * jet[t.dorder as usize + j - k];
                    }
                    *slot += t.coeff * acc;
                }
            }
            if out[..=order].iter().any(|v| !v.is_finite()) {
                return Err(NumericError::NonFinite { index: i, x });
            }
            data.push(out);
        }
        Ok(Jets { order, data })
    }
}

/// Values of `op U` at the nodes, from the closed-form `(U, U′, U″)`.
pub fn apply_operator(
    op: &DiffOperator,
    bindings: &[(&str, f64)],
    ef: &Eigenfunction,
    nodes: &[f64],
) -> Result<Vec<f64>, NumericError> {
    let op = NumericOperator::new(op, bindings)?;
    let jets = Jets::of_eigenfunction_values(ef, nodes)?;
    Ok(op.apply(nodes, &jets)?.values())
}
