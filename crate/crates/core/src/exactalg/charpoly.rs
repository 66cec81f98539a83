//! Characteristic polynomials of integer matrices by multi-modular reduction.
//!
//! For each word-sized prime the matrix is reduced to upper Hessenberg form by
//! similarity transforms and the characteristic polynomial is read off the
//! Hessenberg recurrence. Residues are combined by CRT until the modulus
//! exceeds twice a Hadamard-type bound on the coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{IntMatrix, IntPolynomial};
use crate::error::{Error, Result};

/// Primes below 2^31, descending from the top.
pub(crate) fn word_primes(count: usize) -> Vec<u64> {
    const LIMIT: u64 = 1 << 31;
    let small = small_primes(46_341);
    let mut out = Vec::with_capacity(count);
    let mut c = LIMIT - 1;
    while out.len() < count {
        if small.iter().take_while(|&&q| q * q <= c).all(|&q| !c.is_multiple_of(q)) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

fn small_primes(limit: usize) -> Vec<u64> {
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            for j in (i * i..=limit).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn reduce_matrix(m: &IntMatrix, p: u64) -> Vec<u64> {
    let d = m.rows();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.extend(m.row(i).iter().map(|v| reduce(v, p)));
    }
    out
}

/// Characteristic polynomial `det(xI - A)` of `A` mod `p`, ascending.
pub(crate) fn charpoly_mod(mut a: Vec<u64>, d: usize, p: u64) -> Vec<u64> {
    let at = |i: usize, j: usize| i * d + j;
    for j in 0..d.saturating_sub(2) {
        let Some(piv) = (j + 1..d).find(|&i| a[at(i, j)] != 0) else { continue };
        if piv != j + 1 {
            for k in 0..d {
                a.swap(at(piv, k), at(j + 1, k));
            }
            for k in 0..d {
                a.swap(at(k, piv), at(k, j + 1));
            }
        }
        let inv = inv_mod(a[at(j + 1, j)], p);
        for r in j + 2..d {
            let u = a[at(r, j)] * inv % p;
            if u == 0 {
                continue;
            }
            let nu = p - u;
            for k in j..d {
                a[at(r, k)] = (a[at(r, k)] + nu * a[at(j + 1, k)]) % p;
            }
            for k in 0..d {
                a[at(k, j + 1)] = (a[at(k, j + 1)] + u * a[at(k, r)]) % p;
            }
        }
    }
    // Hessenberg recurrence: polys[m] is the charpoly of the leading m x m block.
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(d + 1);
    polys.push(vec![1]);
    for m in 1..=d {
        let prev = &polys[m - 1];
        let h = a[at(m - 1, m - 1)];
        let mut cur = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            cur[k + 1] = (cur[k + 1] + c) % p;
            cur[k] = (cur[k] + (p - h) * c) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = t * a[at(m - i, m - i - 1)] % p;
            if t == 0 {
                break;
            }
            let f = t * a[at(m - i - 1, m - 1)] % p;
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                cur[k] = (cur[k] + nf * c) % p;
            }
        }
        polys.push(cur);
    }
    polys.swap_remove(d)
}

/// Determinant mod `p` by Gaussian elimination.
pub(crate) fn det_mod(mut a: Vec<u64>, d: usize, p: u64) -> u64 {
    let at = |i: usize, j: usize| i * d + j;
    let mut det = 1u64;
    for j in 0..d {
        let Some(piv) = (j..d).find(|&i| a[at(i, j)] != 0) else { return 0 };
        if piv != j {
            for k in 0..d {
                a.swap(at(piv, k), at(j, k));
            }
            det = (p - det) % p;
        }
        let pv = a[at(j, j)];
        det = det * pv % p;
        let inv = inv_mod(pv, p);
        for r in j + 1..d {
            let u = a[at(r, j)] * inv % p;
            if u == 0 {
                continue;
            }
            let nu = p - u;
            for k in j..d {
                a[at(r, k)] = (a[at(r, k)] + nu * a[at(j, k)]) % p;
            }
        }
    }
    det
}

/// Bound on the absolute values of all charpoly coefficients:
/// `prod_i (1 + |row_i|_2)`, each principal minor being bounded by Hadamard.
pub fn coefficient_bound(m: &IntMatrix) -> BigInt {
    (0..m.rows())
        .map(|i| {
            let norm2: BigInt = m.row(i).iter().map(|v| v * v).sum();
            // ceil(sqrt) + 1
            let s = norm2.sqrt();
            let s = if &s * &s == norm2 { s } else { s + 1 };
            s + 1
        })
        .fold(BigInt::one(), |acc, f| acc * f)
}

/// Incremental CRT in the symmetric range.
struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Crt {
    fn new() -> Self {
        Crt { value: BigInt::zero(), modulus: BigInt::one() }
    }

    fn push(&mut self, r: u64, p: u64) {
        let cur = reduce(&self.value, p);
        let minv = inv_mod(reduce(&self.modulus, p), p);
        let t = (r + p - cur) % p * minv % p;
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

fn primes_for_bound(bound: &BigInt) -> Vec<u64> {
    // modulus must exceed 2 * bound; each prime contributes at least 30 bits
    let bits = (bound * 2u32).bits() as usize + 1;
    word_primes(bits.div_ceil(30))
}

/// Exact characteristic polynomial `det(xI - M)`.
///
/// The result is cross-checked against the trace and against an independent
/// modular determinant; a mismatch is reported as an error.
pub fn charpoly(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::SizeMismatch { left: m.rows(), right: m.cols() });
    }
    let d = m.rows();
    if d == 0 {
        return Ok(IntPolynomial::one());
    }
    let primes = primes_for_bound(&coefficient_bound(m));
    let residues: Vec<(Vec<u64>, u64)> = primes
        .par_iter()
        .map(|&p| {
            let a = reduce_matrix(m, p);
            (charpoly_mod(a.clone(), d, p), det_mod(a, d, p))
        })
        .collect();
    let mut coeffs: Vec<Crt> = (0..=d).map(|_| Crt::new()).collect();
    let mut det = Crt::new();
    for ((cp, dt), &p) in residues.iter().zip(&primes) {
        for (c, &r) in coeffs.iter_mut().zip(cp) {
            c.push(r, p);
        }
        det.push(*dt, p);
    }
    let poly = IntPolynomial::new(coeffs.iter().map(Crt::symmetric).collect());
    if poly.coeff(d - 1) != -m.trace() || !poly.leading().is_some_and(One::is_one) {
        return Err(Error::Integrality("characteristic polynomial failed the trace check".into()));
    }
    let det = det.symmetric();
    let signed_det = if d.is_multiple_of(2) { det } else { -det };
    if poly.coeff(0) != signed_det {
        return Err(Error::Integrality("characteristic polynomial failed the determinant check".into()));
    }
    Ok(poly)
}

/// Determinant by the same multi-modular route.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::SizeMismatch { left: m.rows(), right: m.cols() });
    }
    let d = m.rows();
    let primes = primes_for_bound(&coefficient_bound(m));
    let mut det = Crt::new();
    for &p in &primes {
        det.push(det_mod(reduce_matrix(m, p), d, p), p);
    }
    Ok(det.symmetric())
}
