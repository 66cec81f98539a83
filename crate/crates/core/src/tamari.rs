//! The Tamari order on `Y_n`.
//!
//! A right rotation `(A (B C)) -> ((A B) C)` moves strictly down; the left comb
//! is the minimum and the right comb the maximum. Posets are built whole: the
//! order relation is the reflexive-transitive closure of the covers and is
//! stored as one bit row per element.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::trees::{catalan, BinaryTree};

/// Largest `n` for which a poset will be built.
pub const MAX_N: usize = 10;

/// Version tag of the on-disk cache format.
pub const CACHE_VERSION: u64 = 1;

/// All right rotations of `t`, one per vertex whose right child is internal.
pub fn lower_covers(t: &BinaryTree) -> Vec<BinaryTree> {
    let mut out = Vec::new();
    if let BinaryTree::Node(a, r) = t {
        if let BinaryTree::Node(b, c) = r.as_ref() {
            out.push(BinaryTree::Node(Arc::new(BinaryTree::Node(a.clone(), b.clone())), c.clone()));
        }
        for a2 in lower_covers(a) {
            out.push(BinaryTree::Node(Arc::new(a2), r.clone()));
        }
        for r2 in lower_covers(r) {
            out.push(BinaryTree::Node(a.clone(), Arc::new(r2)));
        }
    }
    out
}

/// `x ≤ y` in the Tamari order, answered from the shared poset of that size.
pub fn leq(x: &BinaryTree, y: &BinaryTree) -> Result<bool> {
    let (n, m) = (x.size(), y.size());
    if n != m {
        return Err(Error::SizeMismatch { left: n, right: m });
    }
    TamariPoset::shared(n)?.leq(x, y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// `Y_n` with its Tamari order. Element indices are the canonical ranks.
#[derive(Debug)]
pub struct TamariPoset {
    n: usize,
    elements: Vec<BinaryTree>,
    index: HashMap<BinaryTree, usize>,
    covers: Vec<Vec<usize>>,
    below: Vec<BitRow>,
    // Indices ordered so that every element comes after everything below it.
    linear: Vec<usize>,
    mobius: OnceLock<Vec<Vec<(usize, BigInt)>>>,
}

impl TamariPoset {
    pub fn build(n: usize) -> Result<Self> {
        check_bound(n)?;
        let elements = BinaryTree::enumerate(n);
        let index: HashMap<BinaryTree, usize> = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let covers = elements.iter().map(|t| lower_covers(t).iter().map(|c| index[c]).collect()).collect();
        Ok(Self::assemble(n, elements, index, covers))
    }

    /// Rebuilds a poset from its elements and Hasse diagram, recomputing all
    /// derived data.
    pub fn from_covers(n: usize, elements: Vec<BinaryTree>, covers: Vec<Vec<usize>>) -> Result<Self> {
        check_bound(n)?;
        if elements.len() != catalan(n) || covers.len() != elements.len() {
            return Err(Error::Format(format!("poset of size {n} must have {} elements", catalan(n))));
        }
        if elements.iter().any(|t| t.size() != n) {
            return Err(Error::Format("element of wrong size".into()));
        }
        if covers.iter().flatten().any(|&j| j >= elements.len()) {
            return Err(Error::Format("cover index out of range".into()));
        }
        let index: HashMap<BinaryTree, usize> = elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Format("duplicate elements".into()));
        }
        Ok(Self::assemble(n, elements, index, covers))
    }

    fn assemble(
        n: usize,
        elements: Vec<BinaryTree>,
        index: HashMap<BinaryTree, usize>,
        covers: Vec<Vec<usize>>,
    ) -> Self {
        let len = elements.len();
        // Iterative post-order DFS along the covers yields a linear extension.
        let mut linear = Vec::with_capacity(len);
        let mut seen = vec![false; len];
        for start in 0..len {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![(start, 0usize)];
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&c) = covers[v].get(*next) {
                    *next += 1;
                    if !seen[c] {
                        seen[c] = true;
                        stack.push((c, 0));
                    }
                } else {
                    linear.push(v);
                    stack.pop();
                }
            }
        }
        let mut below = vec![BitRow::new(len); len];
        for &v in &linear {
            let mut row = BitRow::new(len);
            row.set(v);
            for &c in &covers[v] {
                row.union_with(&below[c]);
            }
            below[v] = row;
        }
        TamariPoset { n, elements, index, covers, below, linear, mobius: OnceLock::new() }
    }

    /// Process-wide shared poset of size `n`, built on first use.
    pub fn shared(n: usize) -> Result<Arc<TamariPoset>> {
        static POSETS: [OnceLock<Arc<TamariPoset>>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
        check_bound(n)?;
        if let Some(p) = POSETS[n].get() {
            return Ok(p.clone());
        }
        let built = Arc::new(TamariPoset::build(n)?);
        Ok(POSETS[n].get_or_init(|| built).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BinaryTree] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BinaryTree {
        &self.elements[i]
    }

    pub fn index_of(&self, t: &BinaryTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn require_index(&self, t: &BinaryTree) -> Result<usize> {
        self.index_of(t).ok_or(Error::SizeMismatch { left: t.size(), right: self.n })
    }

    /// Lower covers of each element, by index.
    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub fn edge_count(&self) -> usize {
        self.covers.iter().map(Vec::len).sum()
    }

    /// `elements[i] ≤ elements[j]`.
    pub fn leq_index(&self, i: usize, j: usize) -> bool {
        self.below[j].get(i)
    }

    pub fn leq(&self, x: &BinaryTree, y: &BinaryTree) -> Result<bool> {
        Ok(self.leq_index(self.require_index(x)?, self.require_index(y)?))
    }

    /// Indices of all elements `≤ elements[j]`, ascending.
    pub fn down_set(&self, j: usize) -> Vec<usize> {
        self.below[j].ones().collect()
    }

    /// Indices `z` with `lo ≤ z ≤ hi`, ascending.
    pub fn interval(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.below[hi].ones().filter(|&z| self.leq_index(lo, z)).collect()
    }

    pub fn minimum(&self) -> usize {
        self.index[&BinaryTree::left_comb(self.n)]
    }

    pub fn maximum(&self) -> usize {
        self.index[&BinaryTree::right_comb(self.n)]
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    /// `zeta[x][y] = 1` iff `y ≤ x`.
    pub fn zeta(&self) -> IntMatrix {
        let len = self.len();
        let mut z = IntMatrix::zeros(len, len);
        for x in 0..len {
            for y in self.below[x].ones() {
                z.set(x, y, BigInt::one());
            }
        }
        z
    }

    /// Sparse rows of the Möbius matrix: row `x` lists `(y, mu(y, x))` for the
    /// nonzero values, `y ≤ x`. This is the inverse of [`TamariPoset::zeta`].
    pub fn mobius_rows(&self) -> &[Vec<(usize, BigInt)>] {
        self.mobius.get_or_init(|| {
            let len = self.len();
            let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); len];
            let mut acc = vec![BigInt::zero(); len];
            for &x in &self.linear {
                let down: Vec<usize> = self.below[x].ones().collect();
                for &z in &down {
                    if z != x {
                        for (y, m) in &rows[z] {
                            acc[*y] += m;
                        }
                    }
                }
                let mut row = Vec::new();
                for &y in &down {
                    let v = if y == x { BigInt::one() - &acc[y] } else { -std::mem::take(&mut acc[y]) };
                    acc[y] = BigInt::zero();
                    if !v.is_zero() {
                        row.push((y, v));
                    }
                }
                rows[x] = row;
            }
            rows
        })
    }

    pub fn mobius(&self) -> IntMatrix {
        let len = self.len();
        let mut m = IntMatrix::zeros(len, len);
        for (x, row) in self.mobius_rows().iter().enumerate() {
            for (y, v) in row {
                m.set(x, *y, v.clone());
            }
        }
        m
    }

    pub fn to_cache_json(&self) -> Value {
        let edges: Vec<[usize; 2]> =
            self.covers.iter().enumerate().flat_map(|(i, cs)| cs.iter().map(move |&j| [i, j])).collect();
        json!({
            "version": CACHE_VERSION,
            "n": self.n,
            "elements": self.elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "covers": edges,
        })
    }

    pub fn from_cache_json(v: &Value) -> Result<Self> {
        let version = v.get("version").and_then(Value::as_u64);
        if version != Some(CACHE_VERSION) {
            return Err(Error::Format(format!("unsupported cache version {version:?}")));
        }
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| Error::Format("missing 'n'".into()))? as usize;
        let elements = v
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("missing 'elements'".into()))?
            .iter()
            .map(|e| e.as_str().ok_or_else(|| Error::Format("element is not a string".into()))?.parse())
            .collect::<Result<Vec<BinaryTree>>>()?;
        let mut covers = vec![Vec::new(); elements.len()];
        for edge in v.get("covers").and_then(Value::as_array).ok_or_else(|| Error::Format("missing 'covers'".into()))? {
            let pair = edge.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Format("bad edge".into()))?;
            let i = pair[0].as_u64().ok_or_else(|| Error::Format("bad edge".into()))? as usize;
            let j = pair[1].as_u64().ok_or_else(|| Error::Format("bad edge".into()))? as usize;
            covers.get_mut(i).ok_or_else(|| Error::Format("cover index out of range".into()))?.push(j);
        }
        TamariPoset::from_covers(n, elements, covers)
    }
}

fn check_bound(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::ResourceLimit(format!("Tamari posets are limited to n <= {MAX_N}, got {n}")));
    }
    Ok(())
}

/// On-disk cache of Hasse diagrams, one JSON file per `n`.
#[derive(Clone, Debug)]
pub struct PosetCache {
    dir: PathBuf,
}

impl PosetCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PosetCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("tamari-v{CACHE_VERSION}-n{n}.json"))
    }

    /// Loads the poset from the cache, building and storing it on a miss or
    /// on an unreadable entry.
    pub fn load_or_build(&self, n: usize) -> Result<TamariPoset> {
        check_bound(n)?;
        let path = self.path_for(n);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(p) =
                serde_json::from_str::<Value>(&text).map_err(Error::from).and_then(|v| TamariPoset::from_cache_json(&v))
            {
                if p.n == n {
                    return Ok(p);
                }
            }
        }
        let p = TamariPoset::build(n)?;
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&p.to_cache_json())?)?;
        fs::rename(&tmp, &path)?;
        Ok(p)
    }
}
