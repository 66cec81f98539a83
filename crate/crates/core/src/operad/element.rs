use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::Monomial;
use crate::error::{Error, Result};
use crate::json::{bigint_from_value, bigint_to_value};

/// Integer combination of monomials of one arity. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OperadElement {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl OperadElement {
    pub fn zero(arity: usize) -> Self {
        OperadElement { arity, terms: BTreeMap::new() }
    }

    pub fn unit() -> Self {
        Self::from(Monomial::unit())
    }

    pub fn generator() -> Self {
        Self::from(Monomial::generator())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of generators in each monomial.
    pub fn vertices(&self) -> usize {
        (self.arity - 1) / 2
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) -> Result<()> {
        if m.arity() != self.arity {
            return Err(Error::SizeMismatch { left: self.arity, right: m.arity() });
        }
        add_into(&mut self.terms, m, c);
        Ok(())
    }

    pub fn add(&self, other: &OperadElement) -> Result<OperadElement> {
        if self.arity != other.arity {
            return Err(Error::SizeMismatch { left: self.arity, right: other.arity });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OperadElement) -> Result<OperadElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> OperadElement {
        OperadElement { arity: self.arity, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> OperadElement {
        if k.is_zero() {
            return Self::zero(self.arity);
        }
        OperadElement { arity: self.arity, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// `[{"coeff": c, "tree": "m[...]"}, ...]` in monomial order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(m, c)| json!({"coeff": bigint_to_value(c), "tree": m.to_string()})).collect(),
        )
    }

    /// Parses the list form; `arity` fixes the component, which an empty
    /// list cannot carry.
    pub fn from_json(v: &Value, arity: usize) -> Result<OperadElement> {
        let list = v.as_array().ok_or_else(|| Error::Format("element: expected a list".into()))?;
        let mut out = Self::zero(arity);
        for item in list {
            let tree: Monomial = item
                .get("tree")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Format("element: missing 'tree'".into()))?
                .parse()?;
            let coeff =
                bigint_from_value(item.get("coeff").ok_or_else(|| Error::Format("element: missing 'coeff'".into()))?)?;
            out.add_term(tree, coeff)?;
        }
        Ok(out)
    }
}

pub(crate) fn add_into(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl From<Monomial> for OperadElement {
    fn from(m: Monomial) -> Self {
        let arity = m.arity();
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        OperadElement { arity, terms }
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperadElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_drops_zeros() {
        let g = OperadElement::generator();
        assert!(g.sub(&g).unwrap().is_zero());
        assert_eq!(g.scale(&BigInt::from(0)), OperadElement::zero(3));
        assert!(g.add(&OperadElement::unit()).is_err());
        let two = g.add(&g).unwrap();
        assert_eq!(two.coeff(&Monomial::generator()), BigInt::from(2));
        assert_eq!(two.to_string(), "2 m[*,*,*]");
        assert_eq!(g.neg().to_string(), "-m[*,*,*]");
    }

    #[test]
    fn json_roundtrip() {
        let a: Monomial = "m[m[*,*,*],*,*]".parse().unwrap();
        let b: Monomial = "m[*,*,m[*,*,*]]".parse().unwrap();
        let mut e = OperadElement::zero(5);
        e.add_term(a, BigInt::from(-3)).unwrap();
        e.add_term(b, BigInt::from(1)).unwrap();
        let v = e.to_json();
        assert_eq!(v[0]["tree"], "m[*,*,m[*,*,*]]");
        assert_eq!(OperadElement::from_json(&v, 5).unwrap(), e);
        assert!(OperadElement::from_json(&v, 3).is_err());
        assert!(OperadElement::from_json(&json!([]), 7).unwrap().is_zero());
    }
}
