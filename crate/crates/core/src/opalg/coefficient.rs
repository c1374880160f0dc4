use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Exponent vector of a Laurent monomial in the parameter slots.
///
/// Trailing zero exponents are never stored, so the constant monomial is the
/// empty vector and a monomial does not depend on how many parameters exist.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(slot: usize, power: i32) -> Self {
        let mut exps = vec![0; slot + 1];
        exps[slot] = power;
        Monomial::from_exponents(exps)
    }

    pub fn from_exponents(mut exps: Vec<i32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of slots the monomial touches; zero for the constant monomial.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, slot: usize) -> i32 {
        self.0.get(slot).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let exps = (0..len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::from_exponents(exps)
    }

    fn scaled(&self, k: i32) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|e| e * k).collect())
    }

    fn without(&self, slot: usize) -> Monomial {
        let mut exps = self.0.clone();
        if slot < exps.len() {
            exps[slot] = 0;
        }
        Monomial::from_exponents(exps)
    }
}

/// Laurent polynomial over exact rationals in the parameter slots.
///
/// The map never holds a zero rational; the empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coefficient {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::default()
    }

    pub fn one() -> Self {
        Coefficient::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        Coefficient::term(Monomial::one(), value)
    }

    pub fn from_int(value: i64) -> Self {
        Coefficient::constant(BigRational::from_integer(BigInt::from(value)))
    }

    /// The rational `num/den` as a constant coefficient.
    ///
    /// Panics when `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        Coefficient::constant(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn symbol(slot: usize) -> Self {
        Coefficient::term(Monomial::var(slot, 1), BigRational::one())
    }

    pub fn symbol_pow(slot: usize, power: i32) -> Self {
        Coefficient::term(Monomial::var(slot, power), BigRational::one())
    }

    pub fn term(monomial: Monomial, value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(monomial, value);
        }
        Coefficient { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The rational value when no parameter appears.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// The single `(monomial, rational)` pair when the coefficient is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest parameter slot referenced, plus one.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn scale(&self, factor: &BigRational) -> Coefficient {
        if factor.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    fn accumulate(&mut self, monomial: Monomial, value: BigRational) {
        if value.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                slot.insert(value);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Integer power; negative exponents are only defined for monomials.
    pub fn pow(&self, exp: i32) -> Result<Coefficient, AlgebraError> {
        if exp >= 0 {
            let mut acc = Coefficient::one();
            for _ in 0..exp {
                acc = &acc * self;
            }
            return Ok(acc);
        }
        let inv = self.inverse().ok_or(AlgebraError::NotInvertible)?;
        inv.pow(-exp)
    }

    /// Multiplicative inverse of a nonzero monomial.
    pub fn inverse(&self) -> Option<Coefficient> {
        let (m, c) = self.as_monomial()?;
        Some(Coefficient::term(m.scaled(-1), c.recip()))
    }

    /// Exact square root of a monomial with a square rational and even exponents.
    pub fn sqrt_monomial(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return Some(Coefficient::zero());
        }
        let (m, c) = self.as_monomial()?;
        if c.is_negative() || m.exponents().iter().any(|e| e % 2 != 0) {
            return None;
        }
        let num = exact_isqrt(c.numer())?;
        let den = exact_isqrt(c.denom())?;
        let half = Monomial::from_exponents(m.exponents().iter().map(|e| e / 2).collect());
        Some(Coefficient::term(half, BigRational::new(num, den)))
    }

    /// Replace bound slots by exact values.
    pub fn substitute(&self, bindings: &[(usize, BigRational)]) -> Result<Coefficient, AlgebraError> {
        let mut out = Coefficient::zero();
        for (m, c) in &self.terms {
            let mut mono = m.clone();
            let mut value = c.clone();
            for (slot, v) in bindings {
                let e = mono.exponent(*slot);
                if e == 0 {
                    continue;
                }
                if v.is_zero() && e < 0 {
                    return Err(AlgebraError::DivisionByZero(*slot));
                }
                value *= rational_pow(v, e);
                mono = mono.without(*slot);
            }
            out.accumulate(mono, value);
        }
        Ok(out)
    }

    /// Floating-point value given a value for every referenced slot.
    pub fn evaluate(&self, values: &[Option<f64>]) -> Result<f64, usize> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = rational_to_f64(c);
            for (slot, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = values.get(slot).copied().flatten().ok_or(slot)?;
                v *= x.powi(e);
            }
            total += v;
        }
        Ok(total)
    }
}

pub(crate) fn rational_pow(v: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { v.recip() } else { v.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio of huge integers: divide in floating point after aligning scales.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl From<BigRational> for Coefficient {
    fn from(value: BigRational) -> Self {
        Coefficient::constant(value)
    }
}

impl Add<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Coefficient {
    type Output = Coefficient;

    fn add(mut self, rhs: Coefficient) -> Coefficient {
        self += &rhs;
        self
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        for (m, c) in &rhs.terms {
            self.accumulate(m.clone(), c.clone());
        }
    }
}

impl Sub<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: Coefficient) -> Coefficient {
        &self - &rhs
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        -&self
    }
}

impl Mul<&Coefficient> for &Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let mut out = Coefficient::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.accumulate(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: Coefficient) -> Coefficient {
        &self * &rhs
    }
}
