use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, Coefficient, ParameterSet};

/// One monomial `coeff · x^xpow · D^dorder` of a differential operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: Coefficient,
    pub xpow: i32,
    pub dorder: u32,
}

impl OperatorTerm {
    pub fn new(coeff: Coefficient, xpow: i32, dorder: u32) -> Self {
        OperatorTerm { coeff, xpow, dorder }
    }
}

/// A normal-ordered differential operator `Σ c · x^p · D^m` in one variable.
///
/// Multiplication by powers of `x` always stands to the left of derivatives.
/// Terms are keyed by `(dorder, xpow)` so iteration follows the canonical
/// order and two operators are equal exactly when their term maps are.
#[derive(Clone, Debug)]
pub struct DiffOperator {
    params: Arc<ParameterSet>,
    terms: BTreeMap<(u32, i32), Coefficient>,
}

impl PartialEq for DiffOperator {
    fn eq(&self, other: &Self) -> bool {
        same_params(&self.params, &other.params) && self.terms == other.terms
    }
}

impl Eq for DiffOperator {}

fn same_params(a: &Arc<ParameterSet>, b: &Arc<ParameterSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DiffOperator {
    pub fn zero(params: Arc<ParameterSet>) -> Self {
        DiffOperator { params, terms: BTreeMap::new() }
    }

    pub fn identity(params: Arc<ParameterSet>) -> Self {
        DiffOperator::scalar(params, Coefficient::one())
    }

    pub fn scalar(params: Arc<ParameterSet>, coeff: Coefficient) -> Self {
        DiffOperator::monomial(params, coeff, 0, 0)
    }

    /// Multiplication by `x^p`.
    pub fn x_pow(params: Arc<ParameterSet>, p: i32) -> Self {
        DiffOperator::monomial(params, Coefficient::one(), p, 0)
    }

    /// The derivative `D^m`.
    pub fn deriv(params: Arc<ParameterSet>, m: u32) -> Self {
        DiffOperator::monomial(params, Coefficient::one(), 0, m)
    }

    /// Single-term operator. Panics if `coeff` references a slot outside `params`;
    /// use [`DiffOperator::normalize`] for unchecked input.
    pub fn monomial(params: Arc<ParameterSet>, coeff: Coefficient, xpow: i32, dorder: u32) -> Self {
        assert!(
            coeff.width() <= params.len(),
            "coefficient references a parameter slot outside the set"
        );
        let mut op = DiffOperator::zero(params);
        op.accumulate(dorder, xpow, coeff);
        op
    }

    /// Canonical form of an arbitrary list of terms: like terms merged,
    /// zero coefficients dropped, order fixed.
    pub fn normalize<I>(params: Arc<ParameterSet>, raw: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = OperatorTerm>,
    {
        let mut op = DiffOperator::zero(params);
        for term in raw {
            let width = term.coeff.width();
            if width > op.params.len() {
                return Err(AlgebraError::SlotOutOfRange { slot: width - 1, len: op.params.len() });
            }
            op.accumulate(term.dorder, term.xpow, term.coeff);
        }
        Ok(op)
    }

    fn accumulate(&mut self, dorder: u32, xpow: i32, coeff: Coefficient) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dorder, xpow)) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn params(&self) -> &Arc<ParameterSet> {
        &self.params
    }

    /// Terms in canonical `(dorder, xpow)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, i32, &Coefficient)> {
        self.terms.iter().map(|(&(m, p), c)| (m, p, c))
    }

    pub fn terms(&self) -> Vec<OperatorTerm> {
        self.iter().map(|(m, p, c)| OperatorTerm::new(c.clone(), p, m)).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^xpow · D^dorder`, zero when absent.
    pub fn coefficient(&self, xpow: i32, dorder: u32) -> Coefficient {
        self.terms.get(&(dorder, xpow)).cloned().unwrap_or_default()
    }

    /// Highest derivative order present; zero for the zero operator.
    pub fn dorder(&self) -> u32 {
        self.terms.keys().map(|&(m, _)| m).max().unwrap_or(0)
    }

    /// The coefficient `c` when the operator is `c · Id`.
    pub fn as_scalar(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn check_params(&self, other: &DiffOperator) -> Result<(), AlgebraError> {
        if same_params(&self.params, &other.params) {
            Ok(())
        } else {
            Err(AlgebraError::ParameterMismatch)
        }
    }

    pub fn try_add(&self, other: &DiffOperator) -> Result<DiffOperator, AlgebraError> {
        self.check_params(other)?;
        let mut out = self.clone();
        for (&(m, p), c) in &other.terms {
            out.accumulate(m, p, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffOperator) -> Result<DiffOperator, AlgebraError> {
        self.check_params(other)?;
        let mut out = self.clone();
        for (&(m, p), c) in &other.terms {
            out.accumulate(m, p, -c);
        }
        Ok(out)
    }

    /// Operator composition `self ∘ other`, normal ordered by the Leibniz rule
    /// `D^m x^q = Σ_j C(m, j) q(q-1)…(q-j+1) x^(q-j) D^(m-j)`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator, AlgebraError> {
        self.check_params(other)?;
        let mut out = DiffOperator::zero(self.params.clone());
        for (&(m, p), a) in &self.terms {
            for (&(k, q), b) in &other.terms {
                let ab = a * b;
                let mut binom = BigInt::one();
                let mut falling = BigInt::one();
                for j in 0..=m {
                    if j > 0 {
                        binom = binom * BigInt::from(m - j + 1) / BigInt::from(j);
                        falling *= BigInt::from(q - (j as i32 - 1));
                    }
                    if falling.is_zero() {
                        break;
                    }
                    let factor = BigRational::from_integer(&binom * &falling);
                    out.accumulate(m - j + k, p + q - j as i32, ab.scale(&factor));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Coefficient) -> DiffOperator {
        let mut out = DiffOperator::zero(self.params.clone());
        for (&(m, p), c) in &self.terms {
            out.accumulate(m, p, c * factor);
        }
        out
    }

    pub fn scale_rational(&self, factor: &BigRational) -> DiffOperator {
        self.scale(&Coefficient::constant(factor.clone()))
    }

    /// Bind named parameters to exact values. Unbound names stay symbolic.
    pub fn substitute<S: AsRef<str>>(
        &self,
        bindings: &[(S, BigRational)],
    ) -> Result<DiffOperator, AlgebraError> {
        let slots = bindings
            .iter()
            .map(|(name, v)| Ok((self.params.slot(name.as_ref())?, v.clone())))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let mut out = DiffOperator::zero(self.params.clone());
        for (&(m, p), c) in &self.terms {
            out.accumulate(m, p, c.substitute(&slots)?);
        }
        Ok(out)
    }

    /// Rename the parameter slot `from` to `to` (both must exist).
    pub fn rename(&self, from: &str, to: &str) -> Result<DiffOperator, AlgebraError> {
        let src = self.params.slot(from)?;
        let dst = self.params.slot(to)?;
        let mut out = DiffOperator::zero(self.params.clone());
        for (&(m, p), c) in &self.terms {
            let mut renamed = Coefficient::zero();
            for (mono, v) in c.terms() {
                let mut exps: Vec<i32> = (0..mono.width().max(src + 1).max(dst + 1))
                    .map(|i| mono.exponent(i))
                    .collect();
                let e = exps[src];
                exps[src] = 0;
                exps[dst] += e;
                renamed += &Coefficient::term(super::Monomial::from_exponents(exps), v.clone());
            }
            out.accumulate(m, p, renamed);
        }
        Ok(out)
    }
}

/// `[a, b] = a∘b − b∘a`.
pub fn commutator(a: &DiffOperator, b: &DiffOperator) -> Result<DiffOperator, AlgebraError> {
    a.compose(b)?.try_sub(&b.compose(a)?)
}

impl Add for &DiffOperator {
    type Output = DiffOperator;

    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        self.try_add(rhs).expect("operators over different parameter sets")
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;

    fn add(self, rhs: DiffOperator) -> DiffOperator {
        &self + &rhs
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;

    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self.try_sub(rhs).expect("operators over different parameter sets")
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;

    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        &self - &rhs
    }
}

/// Composition. Panics on mismatched parameter sets; see [`DiffOperator::compose`].
impl Mul for &DiffOperator {
    type Output = DiffOperator;

    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs).expect("operators over different parameter sets")
    }
}

impl Mul for DiffOperator {
    type Output = DiffOperator;

    fn mul(self, rhs: DiffOperator) -> DiffOperator {
        &self * &rhs
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;

    fn neg(self) -> DiffOperator {
        self.scale(&Coefficient::from_int(-1))
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;

    fn neg(self) -> DiffOperator {
        -&self
    }
}
