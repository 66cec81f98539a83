use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sequences::{divisors, euler_phi};
use super::SymFun;
use crate::error::{Error, Result};

/// Rational class function on `Z/(n)`: `values[i]` is the value on `g^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("a class function needs a group of order at least 1".into()));
        }
        Ok(ClassFunction { values })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> BigRational) -> Self {
        ClassFunction { values: (0..order).map(f).collect() }
    }

    pub fn trivial(order: usize) -> Self {
        Self::from_fn(order, |_| BigRational::one())
    }

    /// The character sending the generator to `±1`.
    pub fn sign_character(order: usize, generator_value: i64) -> Self {
        Self::from_fn(order, |i| {
            let v = if generator_value < 0 && i % 2 == 1 { -1 } else { 1 };
            BigRational::from_integer(BigInt::from(v))
        })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `α`: the generator's action multiplied by `-1`.
    pub fn twist(&self) -> Self {
        Self::from_fn(self.order(), |i| if i % 2 == 1 { -&self.values[i] } else { self.values[i].clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::SizeMismatch { left: self.order(), right: other.order() });
        }
        Ok(Self::from_fn(self.order(), |i| &self.values[i] + &other.values[i]))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_fn(self.order(), |i| &self.values[i] * k)
    }
}

/// `Ind_{Z/n}^{S_n} χ = (1/n) Σ_{j|n} Σ_{1≤i≤n/j, (i,n/j)=1} χ(g^{ji}) p_{n/j}^j`.
///
/// Homogeneous of degree `n`; the truncation is `n`.
pub fn induce_cyclic(chi: &ClassFunction) -> SymFun {
    let n = chi.order();
    let mut out = SymFun::zero(n);
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    for j in divisors(n as u64) {
        let k = n as u64 / j;
        let mut total = BigRational::zero();
        for i in 1..=k {
            if i.gcd(&k) == 1 {
                total += &chi.values[((j * i) % n as u64) as usize];
            }
        }
        out.add_term(vec![k as u32; j as usize], total * &inv_n);
    }
    out
}

/// The same induction as a plain average over group elements: `g^i` has
/// cycle type `(n/d)^d` with `d = gcd(i, n)`.
pub fn induce_cyclic_by_orbits(chi: &ClassFunction) -> SymFun {
    let n = chi.order();
    let mut out = SymFun::zero(n);
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    for (i, v) in chi.values.iter().enumerate() {
        let d = i.gcd(&n);
        out.add_term(vec![(n / d) as u32; d], v * &inv_n);
    }
    out
}

/// Character of `M'_{n,d}`, the induced module of `Q[t]/(t^d - 1)`:
/// `(d/n) Σ_{ℓ | n/d} φ(ℓ) p_ℓ^{n/ℓ}`.
pub fn induced_module_char(n: u64, d: u64) -> Result<SymFun> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotDivisor { n, divisor: d });
    }
    let mut out = SymFun::zero(n as usize);
    let factor = BigRational::new(BigInt::from(d), BigInt::from(n));
    for l in divisors(n / d) {
        out.add_term(vec![l as u32; (n / l) as usize], &factor * BigRational::from_integer(euler_phi(l).into()));
    }
    Ok(out)
}

/// `ω ∘ Ind = Ind ∘ α` on a class function of a cyclic group of even order.
pub fn involution_square_check(chi: &ClassFunction) -> Result<bool> {
    if !chi.order().is_multiple_of(2) {
        return Err(Error::Precondition("the involution square needs a group of even order".into()));
    }
    Ok(induce_cyclic(chi).omega() == induce_cyclic(&chi.twist()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn h2() -> SymFun {
        SymFun::p_lambda(&[1, 1], 2).add(&SymFun::p(2, 2)).scale(&q(1, 2))
    }

    #[test]
    fn trivial_on_two_elements() {
        assert_eq!(induce_cyclic(&ClassFunction::trivial(2)), h2());
        assert_eq!(induced_module_char(2, 1).unwrap(), h2());
    }

    #[test]
    fn induction_formulas_agree() {
        for n in 1..=12 {
            let chi = ClassFunction::from_fn(n, |i| q((i * i) as i64 - 3, 1 + i as i64));
            assert_eq!(induce_cyclic(&chi), induce_cyclic_by_orbits(&chi), "n = {n}");
        }
    }

    #[test]
    fn module_characters() {
        for n in [2u64, 4, 6, 8, 12] {
            assert_eq!(induced_module_char(n, n).unwrap(), SymFun::p_lambda(&vec![1; n as usize], n as usize));
            for d in divisors(n) {
                // χ(g^i) = d if d | i, else 0
                let chi = ClassFunction::from_fn(n as usize, |i| {
                    if (i as u64).is_multiple_of(d) {
                        q(d as i64, 1)
                    } else {
                        q(0, 1)
                    }
                });
                assert_eq!(induced_module_char(n, d).unwrap(), induce_cyclic(&chi));
            }
        }
        let four_two = SymFun::p_lambda(&[1, 1, 1, 1], 4).add(&SymFun::p_lambda(&[2, 2], 4)).scale(&q(1, 2));
        assert_eq!(induced_module_char(4, 2).unwrap(), four_two);
        assert!(induced_module_char(6, 4).is_err());
    }

    #[test]
    fn involution_square_small() {
        assert!(involution_square_check(&ClassFunction::trivial(2)).unwrap());
        let alt = SymFun::p_lambda(&[1, 1], 2).sub(&SymFun::p(2, 2)).scale(&q(1, 2));
        assert_eq!(induce_cyclic(&ClassFunction::trivial(2).twist()), alt);
        assert!(involution_square_check(&ClassFunction::trivial(3)).is_err());
        let chi = ClassFunction::from_fn(6, |i| q(i as i64, 7));
        assert_eq!(chi.twist().twist(), chi);
    }
}
