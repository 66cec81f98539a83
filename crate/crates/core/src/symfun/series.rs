use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::characters::{induce_cyclic, induced_module_char, ClassFunction};
use super::sequences::{b_seq, binomial, catalan, divisors, euler_phi, lambda_seq, sign_pow};
use super::SymFun;
use crate::error::{Error, Result};

/// Degree through which characteristic series are computed by default.
pub const DEFAULT_TRUNCATION: usize = 12;

fn frac(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn check_degree(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition("characteristic series need truncation N >= 2".into()));
    }
    Ok(())
}

/// `Ch_W = Σ_{n≥1} (1/2n) Σ_{j|2n} (-1)^{j(n-1)} φ(2n/j) p_{2n/j}^j`.
pub fn ch_w(n_max: usize) -> Result<SymFun> {
    check_degree(n_max)?;
    let mut out = SymFun::zero(n_max);
    for n in 1..=(n_max / 2) as u64 {
        for j in divisors(2 * n) {
            let k = 2 * n / j;
            let c = frac(sign_pow((j * (n - 1)) as i64) * euler_phi(k) as i64, 2 * n);
            out.add_term(vec![k as u32; j as usize], c);
        }
    }
    Ok(out)
}

/// `Σ_{n≥1} Ind_{Z/2n}^{S_2n}` of the character with value `(-1)^{n-1}` on
/// the generator.
pub fn ch_w_by_induction(n_max: usize) -> Result<SymFun> {
    check_degree(n_max)?;
    let mut out = SymFun::zero(n_max);
    for n in 1..=n_max / 2 {
        let chi = ClassFunction::sign_character(2 * n, sign_pow(n as i64 - 1));
        out = out.add(&induce_cyclic(&chi).extend_truncation(n_max));
    }
    Ok(out)
}

/// `Ch_V = Σ (-1)^{n-1} c_{n-1} p_1^{2n}
///       + Σ (1/2n) Σ_{j|2n} λ(2n/j) φ(j) (-1)^{2n(n-1)/j} p_j^{2n/j}`.
pub fn ch_v(n_max: usize) -> Result<SymFun> {
    check_degree(n_max)?;
    let mut out = SymFun::zero(n_max);
    for n in 1..=(n_max / 2) as u64 {
        let lead = BigRational::from_integer(catalan(n - 1) * sign_pow(n as i64 - 1));
        out.add_term(vec![1; 2 * n as usize], lead);
        for j in divisors(2 * n) {
            let k = 2 * n / j;
            let sign = sign_pow((2 * n * (n - 1) / j) as i64);
            let c = BigRational::new(lambda_seq(k) * euler_phi(j) * sign, BigInt::from(2 * n));
            out.add_term(vec![j as u32; k as usize], c);
        }
    }
    Ok(out)
}

/// `B = Σ_{n≥1} (1/2n) Σ_{j|2n} (-1)^{2n·n/j} φ(j) p_j^{2n/j}`, which equals
/// `-Σ Ch_W`.
pub fn b_function(n_max: usize) -> Result<SymFun> {
    check_degree(n_max)?;
    let mut out = SymFun::zero(n_max);
    for n in 1..=(n_max / 2) as u64 {
        for j in divisors(2 * n) {
            let c = frac(sign_pow((2 * n * n / j) as i64) * euler_phi(j) as i64, 2 * n);
            out.add_term(vec![j as u32; (2 * n / j) as usize], c);
        }
    }
    Ok(out)
}

/// Plethystic inverse `G` with `F ∘ G = p_1`, built degree by degree.
///
/// `F` must have no constant term and a nonzero coefficient on `p_1`.
pub fn plethystic_inverse(f: &SymFun) -> Result<SymFun> {
    if !f.coeff(&[]).is_zero() {
        return Err(Error::Precondition("plethystic inverse needs F without constant term".into()));
    }
    let c = f.coeff(&[1]);
    if c.is_zero() {
        return Err(Error::Precondition("plethystic inverse needs a nonzero p_1 coefficient".into()));
    }
    let t = f.truncation();
    let inv_c = c.recip();
    let mut g = SymFun::p(1, t).scale(&inv_c);
    for k in 2..=t {
        let residue = f.truncate(k).plethysm(&g.truncate(k))?.degree_part(k).extend_truncation(t);
        g = g.sub(&residue.scale(&inv_c));
    }
    Ok(g)
}

/// The Legendre transform `A` of `B`, defined by `A ∘ ∂B + B = p_1 ∂B`:
/// `A = (p_1 ∂B - B) ∘ (∂B)^{<-1>}`.
///
/// `B` must have no terms of degree at most 1, and `∂B` a nonzero `p_1`
/// coefficient.
pub fn legendre_transform(b: &SymFun) -> Result<SymFun> {
    if b.terms().any(|(l, _)| super::partition_degree(l) <= 1) {
        return Err(Error::Precondition("Legendre transform needs B without terms of degree <= 1".into()));
    }
    let db = b.derivative_p1();
    let g = plethystic_inverse(&db)?;
    let h = db.times_p1().sub(b);
    h.plethysm(&g)
}

/// Checks, through `x^n_max`,
/// `-Σ_{j|2n} (j/2n) (-1)^{2n·n/j} x^{2n/j}
///   = Σ_{j|2n} (j/2n) λ(2n/j) (-1)^{2n(n-1)/j} (x/(1-x^2))^{2n/j}`.
pub fn series_identity_check(j: u64, n_max: usize) -> Result<bool> {
    if j == 0 {
        return Err(Error::Precondition("series identity needs j >= 1".into()));
    }
    let mut lhs = vec![BigRational::zero(); n_max + 1];
    let mut rhs = vec![BigRational::zero(); n_max + 1];
    for big_n in 1..=n_max as u64 {
        if !(j * big_n).is_multiple_of(2) {
            continue;
        }
        let n = j * big_n / 2;
        let weight = frac(1, big_n);
        lhs[big_n as usize] -= &weight * BigInt::from(sign_pow((big_n * n) as i64));
        // (x / (1 - x^2))^N = Σ_m binomial(N + m - 1, m) x^{N + 2m}
        let c = &weight * lambda_seq(big_n) * BigInt::from(sign_pow((big_n * (n - 1)) as i64));
        let mut m = 0u64;
        while (big_n + 2 * m) as usize <= n_max {
            rhs[(big_n + 2 * m) as usize] += &c * binomial(big_n + m - 1, m);
            m += 1;
        }
    }
    Ok(lhs == rhs)
}

/// Character of the virtual module
/// `c_n M'_{m,m} - (-1)^{n+1} Σ_{d|m} b_d M'_{m,d}` with `m = 2n + 2`.
pub fn virtual_module_char(n: u64) -> Result<SymFun> {
    let m = 2 * n + 2;
    let outer = sign_pow(n as i64 + 1);
    let mut out = induced_module_char(m, m)?.scale(&BigRational::from_integer(catalan(n)));
    for d in divisors(m) {
        let k = BigRational::from_integer(b_seq(d)? * (-outer));
        out = out.add(&induced_module_char(m, d)?.scale(&k));
    }
    Ok(out)
}

impl SymFun {
    /// `p_1 · self`, known one degree further.
    pub fn times_p1(&self) -> SymFun {
        let mut out = SymFun::zero(self.truncation + 1);
        for (l, c) in self.terms() {
            let mut l = l.clone();
            l.push(1);
            out.add_term(l, c.clone());
        }
        out
    }

    /// `1 / (1 - self)` for `self` without constant term, as a truncated
    /// geometric series.
    pub fn geometric(&self) -> SymFun {
        let mut out = SymFun::one(self.truncation);
        let mut power = SymFun::one(self.truncation);
        for _ in 0..self.truncation {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out
    }
}
