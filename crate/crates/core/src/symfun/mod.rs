//! Symmetric functions in the power-sum basis, truncated by degree, with
//! exact rational coefficients.
//!
//! A [`SymFun`] with truncation `N` stands for a formal series known through
//! total degree `N`, where `deg p_i = i`. Binary operations keep the smaller
//! truncation of their arguments.

mod characters;
pub mod sequences;
mod series;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{bigint_from_value, bigint_to_value};

pub use characters::{
    induce_cyclic, induce_cyclic_by_orbits, induced_module_char, involution_square_check, ClassFunction,
};
pub use series::{
    b_function, ch_v, ch_w, ch_w_by_induction, legendre_transform, plethystic_inverse, series_identity_check,
    virtual_module_char, DEFAULT_TRUNCATION,
};

/// Parts in weakly decreasing order.
pub type Partition = Vec<u32>;

pub fn partition_degree(p: &[u32]) -> usize {
    p.iter().map(|&k| k as usize).sum()
}

fn merge(a: &[u32], b: &[u32]) -> Partition {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct SymFun {
    truncation: usize,
    terms: BTreeMap<Partition, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl SymFun {
    pub fn zero(truncation: usize) -> Self {
        SymFun { truncation, terms: BTreeMap::new() }
    }

    pub fn one(truncation: usize) -> Self {
        Self::p_lambda(&[], truncation)
    }

    /// `p_k`.
    pub fn p(k: u32, truncation: usize) -> Self {
        Self::p_lambda(&[k], truncation)
    }

    /// `p_λ` for any ordering of the parts.
    pub fn p_lambda(parts: &[u32], truncation: usize) -> Self {
        let mut lambda = parts.to_vec();
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let mut f = Self::zero(truncation);
        f.add_term(lambda, BigRational::one());
        f
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &[u32]) -> BigRational {
        self.terms.get(lambda).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c p_λ`; dropped when above the truncation. `lambda` must be
    /// sorted decreasingly.
    pub fn add_term(&mut self, lambda: Partition, c: BigRational) {
        debug_assert!(lambda.windows(2).all(|w| w[0] >= w[1]));
        if c.is_zero() || partition_degree(&lambda) > self.truncation {
            return;
        }
        match self.terms.entry(lambda) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops terms above degree `n` and lowers the truncation to `n`.
    pub fn truncate(&self, n: usize) -> SymFun {
        let n = n.min(self.truncation);
        SymFun {
            truncation: n,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| partition_degree(l) <= n)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Declares the value exact through degree `n`, as for a polynomial all
    /// of whose terms are already present.
    pub fn extend_truncation(mut self, n: usize) -> SymFun {
        self.truncation = self.truncation.max(n);
        self
    }

    /// The homogeneous component of degree `d`.
    pub fn degree_part(&self, d: usize) -> SymFun {
        SymFun {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| partition_degree(l) == d)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SymFun) -> SymFun {
        let mut out = self.truncate(other.truncation);
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFun) -> SymFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymFun {
        self.map_coeffs(|_, c| -c)
    }

    pub fn scale(&self, k: &BigRational) -> SymFun {
        if k.is_zero() {
            return SymFun::zero(self.truncation);
        }
        self.map_coeffs(|_, c| c * k)
    }

    fn map_coeffs(&self, f: impl Fn(&Partition, &BigRational) -> BigRational) -> SymFun {
        SymFun {
            truncation: self.truncation,
            terms: self.terms.iter().map(|(l, c)| (l.clone(), f(l, c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul(&self, other: &SymFun) -> SymFun {
        let n = self.truncation.min(other.truncation);
        let mut out = SymFun::zero(n);
        for (a, ca) in &self.terms {
            let da = partition_degree(a);
            if da > n {
                continue;
            }
            for (b, cb) in &other.terms {
                if da + partition_degree(b) <= n {
                    out.add_term(merge(a, b), ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> SymFun {
        let mut out = SymFun::one(self.truncation);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `∂/∂p_1`. The result is known through degree `N - 1`.
    pub fn derivative_p1(&self) -> SymFun {
        let mut out = SymFun::zero(self.truncation.saturating_sub(1));
        for (l, c) in &self.terms {
            let ones = l.iter().filter(|&&k| k == 1).count();
            if ones > 0 {
                let mut rest = l.clone();
                rest.pop();
                out.add_term(rest, c * rat(ones as i64));
            }
        }
        out
    }

    /// `p_k ∘ self`: every `p_i` replaced by `p_{ik}`.
    pub fn scale_indices(&self, k: u32, truncation: usize) -> SymFun {
        let mut out = SymFun::zero(truncation);
        for (l, c) in &self.terms {
            if partition_degree(l) * k as usize <= truncation {
                out.add_term(l.iter().map(|&i| i * k).collect(), c.clone());
            }
        }
        out
    }

    /// Plethysm `self ∘ g`. When every nonconstant term of `self` has degree
    /// at least `a`, the result is known through `min(N_self, N_g + a - 1)`.
    ///
    /// `g` must have no constant term.
    pub fn plethysm(&self, g: &SymFun) -> Result<SymFun> {
        if !g.coeff(&[]).is_zero() {
            return Err(Error::Precondition("plethysm needs an inner function without constant term".into()));
        }
        // a term of degree d ≥ a only sees g through degree N - (d - 1)
        let lowest = self
            .terms
            .keys()
            .map(|l| partition_degree(l))
            .filter(|&d| d > 0)
            .min()
            .unwrap_or(self.truncation + 1)
            .min(self.truncation + 1);
        let n = self.truncation.min(g.truncation + lowest - 1);
        let mut powers: HashMap<(u32, usize), SymFun> = HashMap::new();
        let mut out = SymFun::zero(n);
        for (lambda, c) in &self.terms {
            let mut prod = SymFun::one(n);
            let mut i = 0;
            while i < lambda.len() {
                let k = lambda[i];
                let e = lambda[i..].iter().take_while(|&&x| x == k).count();
                i += e;
                let factor = power_of_scaled(&mut powers, g, k, e, n);
                prod = prod.mul(factor);
                if prod.is_zero() {
                    break;
                }
            }
            for (l, v) in prod.terms {
                out.add_term(l, v * c);
            }
        }
        Ok(out)
    }

    /// Suspension `(Σf)(p) = -f(-p_1, -p_2, ...)`.
    pub fn suspend(&self) -> SymFun {
        self.map_coeffs(|l, c| if l.len() % 2 == 0 { -c } else { c.clone() })
    }

    /// `ω`: `p_i -> (-1)^{i-1} p_i`.
    pub fn omega(&self) -> SymFun {
        self.map_coeffs(|l, c| {
            let even_parts = l.iter().filter(|&&k| k % 2 == 0).count();
            if even_parts % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
    }

    pub fn omega_pow(&self, k: usize) -> SymFun {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.omega()
        }
    }

    /// Terms that involve only `p_1`.
    pub fn p1_part(&self) -> SymFun {
        SymFun {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.iter().all(|&k| k == 1))
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(l, c)| json!({"partition": l, "num": bigint_to_value(c.numer()), "den": bigint_to_value(c.denom())}))
            .collect();
        json!({"N": self.truncation, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<SymFun> {
        let n = v.get("N").and_then(Value::as_u64).ok_or_else(|| Error::Format("symfun: missing 'N'".into()))?;
        let mut out = SymFun::zero(n as usize);
        let terms =
            v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Format("symfun: missing 'terms'".into()))?;
        for t in terms {
            let parts: Vec<u32> = serde_json::from_value(t.get("partition").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Format(format!("symfun: bad partition: {e}")))?;
            if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Format(format!("symfun: {parts:?} is not a partition")));
            }
            let num = bigint_from_value(t.get("num").unwrap_or(&Value::Null))?;
            let den = bigint_from_value(t.get("den").unwrap_or(&Value::Null))?;
            if den.is_zero() {
                return Err(Error::Format("symfun: zero denominator".into()));
            }
            out.add_term(parts, BigRational::new(num, den));
        }
        Ok(out)
    }
}

fn power_of_scaled<'a>(
    cache: &'a mut HashMap<(u32, usize), SymFun>,
    g: &SymFun,
    k: u32,
    e: usize,
    n: usize,
) -> &'a SymFun {
    if !cache.contains_key(&(k, e)) {
        let value = if e == 1 {
            g.scale_indices(k, n)
        } else {
            let base = power_of_scaled(cache, g, k, 1, n).clone();
            power_of_scaled(cache, g, k, e - 1, n).mul(&base)
        };
        cache.insert((k, e), value);
    }
    &cache[&(k, e)]
}

impl fmt::Display for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut by_degree: Vec<(&Partition, &BigRational)> = self.terms.iter().collect();
        by_degree.sort_by_key(|(l, _)| partition_degree(l));
        for (k, (l, c)) in by_degree.into_iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial_text(l);
            match (mag.is_one(), mono.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag} {mono}")?,
            }
        }
        Ok(())
    }
}

fn monomial_text(l: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < l.len() {
        let e = l[i..].iter().take_while(|&&x| x == l[i]).count();
        parts.push(if e == 1 { format!("p{}", l[i]) } else { format!("p{}^{}", l[i], e) });
        i += e;
    }
    parts.reverse();
    parts.join(" ")
}

impl fmt::Debug for SymFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFun[N={}]({self})", self.truncation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sf(n: usize, terms: &[(&[u32], i64, i64)]) -> SymFun {
        let mut f = SymFun::zero(n);
        for (l, a, b) in terms {
            f = f.add(&SymFun::p_lambda(l, n).scale(&q(*a, *b)));
        }
        f
    }

    #[test]
    fn ring_basics() {
        let n = 3;
        assert_eq!(SymFun::p(1, n).mul(&SymFun::p(2, n)), SymFun::p_lambda(&[2, 1], n));
        assert_eq!(SymFun::p_lambda(&[1, 1], n).derivative_p1(), sf(2, &[(&[1], 2, 1)]));
        assert!(SymFun::p(2, 3).mul(&SymFun::p(2, 3)).is_zero());
        assert_eq!(SymFun::p(1, 4).add(&SymFun::p(1, 2)).truncation(), 2);
    }

    #[test]
    fn plethysm_examples() {
        let n = 4;
        let g = sf(n, &[(&[1], 1, 1), (&[2], 1, 1)]);
        assert_eq!(SymFun::p(1, n).plethysm(&g).unwrap(), g);
        assert_eq!(SymFun::p(2, n).plethysm(&SymFun::p_lambda(&[1, 1], n)).unwrap(), SymFun::p_lambda(&[2, 2], n));
        let sq = SymFun::p_lambda(&[1, 1], n).plethysm(&g).unwrap();
        assert_eq!(sq, sf(n, &[(&[1, 1], 1, 1), (&[2, 1], 2, 1), (&[2, 2], 1, 1)]));
        assert!(SymFun::p(1, n).plethysm(&SymFun::one(n)).is_err());
        for (k, l) in [(2, 3), (1, 4), (3, 1)] {
            assert_eq!(SymFun::p(k, 12).plethysm(&SymFun::p(l, 12)).unwrap(), SymFun::p(k * l, 12));
        }
    }

    #[test]
    fn sign_twists() {
        let f = sf(6, &[(&[2], 1, 1), (&[1], 3, 1), (&[2, 1, 1], -1, 5)]);
        assert_eq!(f.omega().omega(), f);
        assert_eq!(SymFun::p(2, 4).suspend(), SymFun::p(2, 4));
        assert_eq!(SymFun::p(2, 4).omega(), SymFun::p(2, 4).neg());
        assert_eq!(SymFun::p(1, 4).omega(), SymFun::p(1, 4));
        assert_eq!(SymFun::p_lambda(&[1, 1], 4).suspend(), SymFun::p_lambda(&[1, 1], 4).neg());
    }

    #[test]
    fn display_and_json() {
        let f = sf(4, &[(&[1, 1], 1, 2), (&[2], 1, 2), (&[4], -2, 1)]);
        assert_eq!(f.to_string(), "1/2 p1^2 + 1/2 p2 - 2 p4");
        let v = f.to_json();
        assert_eq!(v["N"], 4);
        assert_eq!(SymFun::from_json(&v).unwrap(), f);
        assert!(SymFun::from_json(&json!({"N": 2, "terms": [{"partition": [1, 2], "num": 1, "den": 1}]})).is_err());
    }
}
