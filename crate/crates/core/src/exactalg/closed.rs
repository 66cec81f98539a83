//! Closed-form characteristic polynomial of the Tamari Coxeter transformation.
//!
//! For `Y_n` with `m = 2n + 2` the polynomial is
//!
//! ```text
//!            (x^m - 1)^{c_n}
//! ------------------------------------------------
//! ( prod_{d | m} (x^d - (-1)^{d(n+1)})^{b_d} )^{(-1)^{n+1}}
//! ```
//!
//! Identical binomial factors are merged first, then the positive and negative
//! powers are expanded separately and divided exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::symfun::sequences::{b_seq, catalan, divisors, sign_pow};

/// Product of `factor^exponent` over the list, with negative exponents in the
/// denominator. The division must be exact.
pub fn quotient_of_factors(factors: &[(IntPolynomial, i64)]) -> Result<IntPolynomial> {
    let mut num = IntPolynomial::one();
    let mut den = IntPolynomial::one();
    for (f, e) in factors {
        if *e > 0 {
            num = &num * &f.pow(*e as u64);
        } else if *e < 0 {
            den = &den * &f.pow(e.unsigned_abs());
        }
    }
    num.exact_div(&den)
}

/// Merged binomial factors `(x^d - c) -> exponent`.
type BinomialFactors = BTreeMap<(usize, i64), i64>;

fn to_exponent(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::ResourceLimit(format!("exponent {v} too large")))
}

fn expand(factors: &BinomialFactors) -> Result<IntPolynomial> {
    let list: Vec<(IntPolynomial, i64)> = factors
        .iter()
        .filter(|(_, &e)| e != 0)
        .map(|(&(d, c), &e)| (IntPolynomial::binomial(d, BigInt::from(c)), e))
        .collect();
    quotient_of_factors(&list)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("closed form is stated for n >= 1".into()));
    }
    Ok(())
}

/// The factor multiset of the closed formula, either in its final form or
/// with every constant equal to 1 (the form before `x -> (-1)^{n+1} x`).
fn factors(n: usize, substituted: bool) -> Result<BinomialFactors> {
    check_n(n)?;
    let m = 2 * n as u64 + 2;
    let outer = sign_pow(n as i64 + 1);
    let mut out = BinomialFactors::new();
    *out.entry((m as usize, 1)).or_default() += to_exponent(&catalan(n as u64))?;
    for d in divisors(m) {
        let c = if substituted { sign_pow((d * (n as u64 + 1)) as i64) } else { 1 };
        *out.entry((d as usize, c)).or_default() -= outer * to_exponent(&b_seq(d)?)?;
    }
    Ok(out)
}

/// Characteristic polynomial of `(-1)^{n+1} θ` on `Y_n`, from the virtual
/// module decomposition: `(x^m - 1)^{c_n} / (prod_{d|m} (x^d - 1)^{b_d})^{(-1)^{n+1}}`.
pub fn presubstitution_charpoly(n: usize) -> Result<IntPolynomial> {
    expand(&factors(n, false)?)
}

/// Characteristic polynomial of the Coxeter transformation of `Y_n`, `n ≥ 1`,
/// evaluated directly from the closed formula.
pub fn closed_charpoly(n: usize) -> Result<IntPolynomial> {
    expand(&factors(n, true)?)
}

/// The same polynomial obtained from [`presubstitution_charpoly`] by
/// substituting `x -> (-1)^{n+1} x` and renormalizing to a monic polynomial.
pub fn closed_charpoly_by_substitution(n: usize) -> Result<IntPolynomial> {
    let p = presubstitution_charpoly(n)?;
    let q = if n.is_multiple_of(2) { p.negate_variable() } else { p };
    Ok(match q.leading() {
        Some(l) if l.is_negative() => -&q,
        _ => q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::catalan as tree_count;

    #[test]
    fn spot_values() {
        assert_eq!(closed_charpoly(1).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(closed_charpoly(2).unwrap(), IntPolynomial::from_i64(&[1, 1, 1]));
        assert!(closed_charpoly(0).is_err());
    }

    #[test]
    fn n1_by_hand() {
        // (x^4-1) / ((x-1)(x^2-1)^{-1}(x^4-1)) with (b1, b2, b4) = (1, -1, 1)
        let f = |d, c| IntPolynomial::binomial(d, BigInt::from(c));
        let q = quotient_of_factors(&[(f(4, 1), 1), (f(1, 1), -1), (f(2, 1), 1), (f(4, 1), -1)]).unwrap();
        assert_eq!(q, IntPolynomial::from_i64(&[1, 1]));
    }

    #[test]
    fn degrees_and_units() {
        for n in 1..=7 {
            let p = closed_charpoly(n).unwrap();
            assert_eq!(p.degree(), Some(tree_count(n)));
            assert_eq!(p.coeff(0).abs(), BigInt::from(1));
            assert_eq!(p, closed_charpoly_by_substitution(n).unwrap());
        }
    }
}
