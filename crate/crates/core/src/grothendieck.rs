//! The free abelian group `K_0(mod Y_n)` on the Tamari poset.
//!
//! A [`K0Vector`] carries its coordinates in one of three bases: simples `S`,
//! projectives `P` with `P_x = Σ_{y ≤ x} S_y`, or injectives `I` with
//! `I_x = Σ_{y ≥ x} S_y`. The three products `∕`, `\` and `*` act across
//! grades and are evaluated in the `S` basis, where each has a direct
//! combinatorial description.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::json::{bigint_from_value, bigint_to_value};
use crate::tamari::TamariPoset;
use crate::trees::{catalan, BinaryTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    S,
    P,
    I,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::S => "S",
            Basis::P => "P",
            Basis::I => "I",
        })
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" => Ok(Basis::S),
            "P" => Ok(Basis::P),
            "I" => Ok(Basis::I),
            other => Err(Error::Format(format!("unknown basis '{other}'"))),
        }
    }
}

/// Integer vector over `Y_n` in a fixed basis, indexed by canonical rank.
#[derive(Clone, PartialEq, Eq)]
pub struct K0Vector {
    n: usize,
    basis: Basis,
    coords: Vec<BigInt>,
}

impl K0Vector {
    pub fn zero(n: usize, basis: Basis) -> Self {
        K0Vector { n, basis, coords: vec![BigInt::zero(); catalan(n)] }
    }

    pub fn from_coords(n: usize, basis: Basis, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != catalan(n) {
            return Err(Error::SizeMismatch { left: coords.len(), right: catalan(n) });
        }
        Ok(K0Vector { n, basis, coords })
    }

    /// The basis element `B_x` for `B` in {S, P, I}.
    pub fn basis_vector(x: &BinaryTree, basis: Basis) -> Self {
        let mut v = Self::zero(x.size(), basis);
        v.coords[x.rank()] = BigInt::one();
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        K0Vector { n: self.n, basis: self.basis, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> Self {
        K0Vector { n: self.n, basis: self.basis, coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Sum; `other` is converted into this vector's basis first.
    pub fn add(&self, other: &K0Vector) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let other = other.to_basis(self.basis)?;
        Ok(K0Vector {
            n: self.n,
            basis: self.basis,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &K0Vector) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact change of basis.
    pub fn to_basis(&self, to: Basis) -> Result<K0Vector> {
        if to == self.basis {
            return Ok(self.clone());
        }
        let poset = TamariPoset::shared(self.n)?;
        let s = match self.basis {
            Basis::S => self.coords.clone(),
            Basis::P => p_to_s(&poset, &self.coords),
            Basis::I => i_to_s(&poset, &self.coords),
        };
        let coords = match to {
            Basis::S => s,
            Basis::P => s_to_p(&poset, &s),
            Basis::I => s_to_i(&poset, &s),
        };
        Ok(K0Vector { n: self.n, basis: to, coords })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "basis": self.basis.to_string(),
            "coords": self.coords.iter().map(bigint_to_value).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Format("vector: missing 'n'".into()))?;
        let basis: Basis = v
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format("vector: missing 'basis'".into()))?
            .parse()?;
        let coords = v
            .get("coords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("vector: missing 'coords'".into()))?
            .iter()
            .map(bigint_from_value)
            .collect::<Result<Vec<_>>>()?;
        K0Vector::from_coords(n as usize, basis, coords)
    }
}

impl fmt::Debug for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for K0Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            let tree = BinaryTree::unrank(self.n, i).map_err(|_| fmt::Error)?;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}_{tree}", self.basis)?;
            } else {
                write!(f, "({c}){}_{tree}", self.basis)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn s_to_p(poset: &TamariPoset, s: &[BigInt]) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); s.len()];
    for (y, sy) in s.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (x, m) in &poset.mobius_rows()[y] {
            p[*x] += m * sy;
        }
    }
    p
}

fn p_to_s(poset: &TamariPoset, p: &[BigInt]) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); p.len()];
    for (x, px) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for y in poset.down_set(x) {
            s[y] += px;
        }
    }
    s
}

fn s_to_i(poset: &TamariPoset, s: &[BigInt]) -> Vec<BigInt> {
    poset.mobius_rows().iter().map(|row| row.iter().map(|(x, m)| m * &s[*x]).sum()).collect()
}

fn i_to_s(poset: &TamariPoset, i: &[BigInt]) -> Vec<BigInt> {
    (0..i.len()).map(|y| poset.down_set(y).into_iter().map(|x| &i[x]).sum()).collect()
}

/// Which of the three graded products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Product {
    /// `∕`: `S_x ∕ S_y = S_{x∕y}`.
    Over,
    /// `\`: `S_x \ S_y = S_{x\y}`.
    Under,
    /// `*`: `S_x * S_y = Σ_{x∕y ≤ z ≤ x\y} S_z`.
    Star,
}

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "over" => Ok(Product::Over),
            "under" => Ok(Product::Under),
            "star" => Ok(Product::Star),
            other => Err(Error::Format(format!("unknown product '{other}'"))),
        }
    }
}

/// `S_x * S_y` as the indicator of the Tamari interval `[x∕y, x\y]`.
pub fn star_interval(x: &BinaryTree, y: &BinaryTree) -> Result<K0Vector> {
    let n = x.size() + y.size();
    let poset = TamariPoset::shared(n)?;
    let lo = poset.index_of(&x.graft_over(y)).expect("graft has the summed size");
    let hi = poset.index_of(&x.graft_under(y)).expect("graft has the summed size");
    let mut v = K0Vector::zero(n, Basis::S);
    for z in poset.interval(lo, hi) {
        v.coords[z] = BigInt::one();
    }
    Ok(v)
}

/// `S_x * S_y` by the dendriform recursion
/// `x * y = (x_l ∨ (x_r * y)) + ((x * y_l) ∨ y_r)`, with the leaf as unit.
///
/// Kept independent of the Tamari order so it can cross-check [`star_interval`].
pub fn star_shuffle(x: &BinaryTree, y: &BinaryTree) -> Result<K0Vector> {
    let n = x.size() + y.size();
    if n > crate::tamari::MAX_N {
        return Err(Error::ResourceLimit(format!("product lands in grade {n}")));
    }
    let mut memo = HashMap::new();
    let terms = shuffle_terms(x, y, &mut memo);
    let mut v = K0Vector::zero(n, Basis::S);
    for (t, c) in terms.iter() {
        v.coords[t.rank()] += *c;
    }
    Ok(v)
}

type ShuffleMemo = HashMap<(BinaryTree, BinaryTree), Arc<Vec<(BinaryTree, u64)>>>;

fn shuffle_terms(x: &BinaryTree, y: &BinaryTree, memo: &mut ShuffleMemo) -> Arc<Vec<(BinaryTree, u64)>> {
    if x.is_leaf() {
        return Arc::new(vec![(y.clone(), 1)]);
    }
    if y.is_leaf() {
        return Arc::new(vec![(x.clone(), 1)]);
    }
    let key = (x.clone(), y.clone());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (xl, xr) = x.decompose().expect("x is a node");
    let (yl, yr) = y.decompose().expect("y is a node");
    let mut acc: BTreeMap<String, (BinaryTree, u64)> = BTreeMap::new();
    for (t, c) in shuffle_terms(xr, y, memo).iter() {
        let z = BinaryTree::node(xl.clone(), t.clone());
        acc.entry(z.to_string()).or_insert((z, 0)).1 += c;
    }
    for (t, c) in shuffle_terms(x, yl, memo).iter() {
        let z = BinaryTree::node(t.clone(), yr.clone());
        acc.entry(z.to_string()).or_insert((z, 0)).1 += c;
    }
    let out = Arc::new(acc.into_values().collect::<Vec<_>>());
    memo.insert(key, out.clone());
    out
}

/// `S_x ∕ S_y = S_{x∕y}`.
pub fn over_s(x: &BinaryTree, y: &BinaryTree) -> K0Vector {
    K0Vector::basis_vector(&x.graft_over(y), Basis::S)
}

/// `S_x \ S_y = S_{x\y}`.
pub fn under_s(x: &BinaryTree, y: &BinaryTree) -> K0Vector {
    K0Vector::basis_vector(&x.graft_under(y), Basis::S)
}

/// Bilinear product of two vectors, in any bases. The result is in the `S`
/// basis.
pub fn product(op: Product, a: &K0Vector, b: &K0Vector) -> Result<K0Vector> {
    let n = a.n + b.n;
    let poset = TamariPoset::shared(n)?;
    let pa = TamariPoset::shared(a.n)?;
    let pb = TamariPoset::shared(b.n)?;
    let sa = a.to_basis(Basis::S)?;
    let sb = b.to_basis(Basis::S)?;
    let mut out = vec![BigInt::zero(); poset.len()];
    for (i, ca) in sa.terms() {
        let x = pa.element(i);
        for (j, cb) in sb.terms() {
            let y = pb.element(j);
            let c = ca * cb;
            match op {
                Product::Over => out[poset.index_of(&x.graft_over(y)).expect("size")] += c,
                Product::Under => out[poset.index_of(&x.graft_under(y)).expect("size")] += c,
                Product::Star => {
                    let lo = poset.index_of(&x.graft_over(y)).expect("size");
                    let hi = poset.index_of(&x.graft_under(y)).expect("size");
                    for z in poset.interval(lo, hi) {
                        out[z] += &c;
                    }
                }
            }
        }
    }
    K0Vector::from_coords(n, Basis::S, out)
}

pub fn star(a: &K0Vector, b: &K0Vector) -> Result<K0Vector> {
    product(Product::Star, a, b)
}

pub fn over(a: &K0Vector, b: &K0Vector) -> Result<K0Vector> {
    product(Product::Over, a, b)
}

pub fn under(a: &K0Vector, b: &K0Vector) -> Result<K0Vector> {
    product(Product::Under, a, b)
}

/// Element of `⊕_n K_0(mod Y_n)`, a finite sum of homogeneous components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedK0 {
    components: BTreeMap<usize, K0Vector>,
}

impl GradedK0 {
    /// `S_|`, the common unit of the three products.
    pub fn unit() -> Self {
        GradedK0::from(K0Vector::basis_vector(&BinaryTree::Leaf, Basis::S))
    }

    pub fn component(&self, n: usize) -> Option<&K0Vector> {
        self.components.get(&n)
    }

    pub fn grades(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn add(&self, other: &GradedK0) -> Result<GradedK0> {
        let mut out = self.clone();
        for v in other.components.values() {
            out.push(v.clone())?;
        }
        Ok(out)
    }

    fn push(&mut self, v: K0Vector) -> Result<()> {
        let v = v.to_basis(Basis::S)?;
        let slot = match self.components.remove(&v.n) {
            Some(prev) => prev.add(&v)?,
            None => v,
        };
        if !slot.is_zero() {
            self.components.insert(slot.n, slot);
        }
        Ok(())
    }

    pub fn product(&self, op: Product, other: &GradedK0) -> Result<GradedK0> {
        let mut out = GradedK0::default();
        for a in self.components.values() {
            for b in other.components.values() {
                out.push(product(op, a, b)?)?;
            }
        }
        Ok(out)
    }
}

impl From<K0Vector> for GradedK0 {
    fn from(v: K0Vector) -> Self {
        let mut g = GradedK0::default();
        g.push(v).expect("a single component converts to S");
        g
    }
}

/// Matrix of the Coxeter transformation `θ(P_x) = -I_x` in the `P` basis;
/// column `x` holds the `P`-coordinates of `-I_x`.
pub fn theta_matrix(n: usize) -> Result<IntMatrix> {
    let poset = TamariPoset::shared(n)?;
    let columns: Vec<Vec<BigInt>> = poset
        .elements()
        .par_iter()
        .map(|x| K0Vector::basis_vector(x, Basis::I).neg().to_basis(Basis::P).map(|v| v.coords))
        .collect::<Result<_>>()?;
    IntMatrix::from_columns(poset.len(), columns)
}

/// Applies `θ` to a vector, returning the result in the `P` basis.
pub fn apply_theta(v: &K0Vector) -> Result<K0Vector> {
    let poset = TamariPoset::shared(v.n)?;
    let p = v.to_basis(Basis::P)?;
    let mut out = K0Vector::zero(v.n, Basis::I);
    for (i, c) in p.terms() {
        out.coords[i] -= c;
    }
    debug_assert_eq!(poset.len(), out.coords.len());
    out.to_basis(Basis::P)
}

/// `θ` rebuilt from its recursive characterization alone:
///
/// * `θ(P_|) = -P_|` and `θ(P_•) = -P_•`;
/// * `θ(a ∕ b) = -θ(a) * θ(b)`, used for `x = y∕z` with `y, z` nontrivial;
/// * `θ(P_• * (a ∕ (P_• * b))) = θ(P_• * a) ∕ θ(P_• * b) - θ(P_• * a) * θ(P_• * b)`,
///   used for `x = •\(v∕(•\w))`.
///
/// Returns the matrix in the `P` basis, to be compared with [`theta_matrix`].
pub fn theta_recursive(n: usize) -> Result<IntMatrix> {
    let poset = TamariPoset::shared(n)?;
    let mut memo: HashMap<BinaryTree, K0Vector> = HashMap::new();
    let mut columns = Vec::with_capacity(poset.len());
    for x in poset.elements() {
        columns.push(theta_of_projective(x, &mut memo)?.coords);
    }
    IntMatrix::from_columns(poset.len(), columns)
}

fn theta_of_projective(x: &BinaryTree, memo: &mut HashMap<BinaryTree, K0Vector>) -> Result<K0Vector> {
    if let Some(v) = memo.get(x) {
        return Ok(v.clone());
    }
    let value = match x.decompose() {
        None => K0Vector::basis_vector(x, Basis::P).neg(),
        Some((l, r)) if !l.is_leaf() => {
            // x = l ∕ (• \ r)
            let z = BinaryTree::node(BinaryTree::Leaf, r.clone());
            let ty = theta_of_projective(l, memo)?;
            let tz = theta_of_projective(&z, memo)?;
            star(&ty, &tz)?.neg().to_basis(Basis::P)?
        }
        Some((_, r)) => match r.decompose() {
            None => K0Vector::basis_vector(x, Basis::P).neg(),
            Some((v, w)) => {
                // x = • \ (v ∕ (• \ w))
                let ta = theta_of_projective(&BinaryTree::node(BinaryTree::Leaf, v.clone()), memo)?;
                let tb = theta_of_projective(&BinaryTree::node(BinaryTree::Leaf, w.clone()), memo)?;
                over(&ta, &tb)?.sub(&star(&ta, &tb)?)?.to_basis(Basis::P)?
            }
        },
    };
    memo.insert(x.clone(), value.clone());
    Ok(value)
}
