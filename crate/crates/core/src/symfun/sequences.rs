//! Arithmetic functions: Catalan numbers, Euler's totient, the Möbius function,
//! and the sequences `lambda` and `b` governing the Coxeter polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `c_n = binomial(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius_mu(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `lambda(n) = (-1)^binomial(n, 2) * binomial(n - 1, floor((n - 1) / 2))`, `n ≥ 1`.
pub fn lambda_seq(n: u64) -> BigInt {
    assert!(n >= 1, "lambda is defined for n >= 1");
    let magnitude = binomial(n - 1, (n - 1) / 2);
    if (n * (n - 1) / 2) % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// `b_n = (1/n) sum_{d | n} mu(d) lambda(n / d)`; fails if the sum is not
/// divisible by `n`.
pub fn b_seq(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Precondition("b_n is defined for n >= 1".into()));
    }
    let total: BigInt = divisors(n).into_iter().map(|d| lambda_seq(n / d) * mobius_mu(d)).sum();
    let (q, r) = total.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(Error::Integrality(format!("b_{n} = {total}/{n} is not an integer")));
    }
    Ok(q)
}

/// `(-1)^e` for a possibly negative exponent.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_values() {
        let got: Vec<i64> = [1, 2, 3, 4, 6].iter().map(|&n| lambda_seq(n).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, -1, -2, 3, -10]);
    }

    #[test]
    fn b_values() {
        let got: Vec<i64> = [1, 2, 3, 4, 6].iter().map(|&n| b_seq(n).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![1, -1, -1, 1, -1]);
    }

    #[test]
    fn b_inverts_to_lambda() {
        for n in 1..=24u64 {
            let s: BigInt = divisors(n).into_iter().map(|d| b_seq(d).unwrap() * d).sum();
            assert_eq!(s, lambda_seq(n), "n = {n}");
        }
    }

    #[test]
    fn b_is_integral() {
        for n in 1..=48 {
            b_seq(n).unwrap();
        }
        assert!(b_seq(0).is_err());
    }

    #[test]
    fn classic_sequences() {
        let cat: Vec<u64> = (0..8).map(|n| catalan(n).try_into().unwrap()).collect();
        assert_eq!(cat, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        let phi: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        let mu: Vec<i64> = (1..=12).map(mobius_mu).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(divisors(1), vec![1]);
    }
}
