use std::fmt;
use std::sync::{Arc, OnceLock};

use super::AlgebraError;

/// Symbol names of the standard parameter set, in slot order.
///
/// * `k2`, `b2`, `g2`: squared angular indices κ², β², γ²
/// * `lam`, `Lam`, `K`, `Sig`: level parameters λ, Λ, K, Σ
/// * `xi`, `zeta`: Coulomb-type couplings ξ, ζ
/// * `N`: dimension
/// * `s`: the ratio ξ/K used by the hydrogen generators in the `r` variable
pub const STANDARD_SYMBOLS: [&str; 11] =
    ["k2", "b2", "g2", "lam", "Lam", "K", "Sig", "xi", "zeta", "N", "s"];

/// An ordered list of distinct parameter symbols.
///
/// Exponent vectors inside [`Coefficient`](super::Coefficient) index into this
/// list, so the order is fixed once the set is built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParameterSet {
    names: Vec<String>,
}

impl ParameterSet {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(AlgebraError::InvalidSymbol(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlgebraError::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Arc::new(ParameterSet { names }))
    }

    /// The shared set every built-in operator is expressed over.
    pub fn standard() -> Arc<Self> {
        static STANDARD: OnceLock<Arc<ParameterSet>> = OnceLock::new();
        STANDARD
            .get_or_init(|| ParameterSet::new(STANDARD_SYMBOLS).expect("standard symbols are valid"))
            .clone()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, slot: usize) -> &str {
        &self.names[slot]
    }

    pub(crate) fn slot(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownParameter(name.to_string()))
    }
}

impl fmt::Debug for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    // `x` and `D` are the operator atoms of the surface syntax.
    name != "x" && name != "D" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(matches!(
            ParameterSet::new(["a", "b", "a"]),
            Err(AlgebraError::DuplicateSymbol(name)) if name == "a"
        ));
    }

    #[test]
    fn rejects_reserved_atoms() {
        assert!(ParameterSet::new(["x"]).is_err());
        assert!(ParameterSet::new(["D"]).is_err());
        assert!(ParameterSet::new(["1a"]).is_err());
    }

    #[test]
    fn standard_order_is_stable() {
        let p = ParameterSet::standard();
        assert_eq!(p.index_of("k2"), Some(0));
        assert_eq!(p.index_of("s"), Some(10));
        assert!(Arc::ptr_eq(&p, &ParameterSet::standard()));
    }
}
