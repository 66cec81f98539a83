//! Planar binary trees.
//!
//! A [`BinaryTree`] is either the trivial tree `|` (a [`BinaryTree::Leaf`]) or
//! an internal vertex with a left and a right subtree. `Y_n` is the set of
//! trees with `n` internal vertices; it has `catalan(n)` elements.
//!
//! Trees are written with `.` for a leaf and `(LR)` for a vertex, so the
//! unique tree with one vertex is `(..)` and the two trees of `Y_2` are
//! `((..).)` and `(.(..))`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Arc<BinaryTree>, Arc<BinaryTree>),
}

/// Catalan numbers as machine integers, for sizes of `Y_n`.
///
/// Panics on overflow (n > 35), far above anything that can be enumerated.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    usize::try_from(c).expect("catalan number overflows usize")
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree::Leaf
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Arc::new(left), Arc::new(right))
    }

    /// The tree with a single internal vertex.
    pub fn one() -> Self {
        Self::node(Self::Leaf, Self::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    /// Number of internal vertices.
    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Splits off the root vertex, returning the left and right subtrees.
    pub fn decompose(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        match self {
            BinaryTree::Leaf => None,
            BinaryTree::Node(l, r) => Some((l, r)),
        }
    }

    /// `x∕y`: graft `self` onto the leftmost leaf of `other`.
    pub fn graft_over(&self, other: &BinaryTree) -> BinaryTree {
        match other {
            BinaryTree::Leaf => self.clone(),
            BinaryTree::Node(l, r) => BinaryTree::Node(Arc::new(self.graft_over(l)), r.clone()),
        }
    }

    /// `x\y`: graft `other` onto the rightmost leaf of `self`.
    pub fn graft_under(&self, other: &BinaryTree) -> BinaryTree {
        match self {
            BinaryTree::Leaf => other.clone(),
            BinaryTree::Node(l, r) => BinaryTree::Node(l.clone(), Arc::new(r.graft_under(other))),
        }
    }

    /// Left-right reflection.
    pub fn mirror(&self) -> BinaryTree {
        match self {
            BinaryTree::Leaf => BinaryTree::Leaf,
            BinaryTree::Node(l, r) => BinaryTree::node(r.mirror(), l.mirror()),
        }
    }

    /// The left comb of size `n`, the minimum of the Tamari order.
    pub fn left_comb(n: usize) -> BinaryTree {
        (0..n).fold(BinaryTree::Leaf, |t, _| BinaryTree::node(t, BinaryTree::Leaf))
    }

    /// The right comb of size `n`, the maximum of the Tamari order.
    pub fn right_comb(n: usize) -> BinaryTree {
        (0..n).fold(BinaryTree::Leaf, |t, _| BinaryTree::node(BinaryTree::Leaf, t))
    }

    /// All trees of size `n` in canonical order.
    ///
    /// Trees are ordered by the size of the left subtree (largest first), then
    /// by the rank of the left subtree, then by the rank of the right subtree.
    /// With this order the left comb has rank 0.
    pub fn enumerate(n: usize) -> Vec<BinaryTree> {
        let mut tables: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
        for m in 1..=n {
            let mut out = Vec::with_capacity(catalan(m));
            for k in (0..m).rev() {
                for l in &tables[k] {
                    for r in &tables[m - 1 - k] {
                        out.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            tables.push(out);
        }
        tables.swap_remove(n)
    }

    /// Position of the tree in [`BinaryTree::enumerate`] of its size.
    pub fn rank(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => {
                let n = self.size();
                let (ls, rs) = (l.size(), r.size());
                let skipped: usize = (ls + 1..n).map(|k| catalan(k) * catalan(n - 1 - k)).sum();
                skipped + l.rank() * catalan(rs) + r.rank()
            }
        }
    }

    /// Inverse of [`BinaryTree::rank`]: the tree of size `n` with rank `r`.
    pub fn unrank(n: usize, mut r: usize) -> Result<BinaryTree> {
        if r >= catalan(n) {
            return Err(Error::Precondition(format!("rank {r} out of range for size {n}")));
        }
        if n == 0 {
            return Ok(BinaryTree::Leaf);
        }
        for k in (0..n).rev() {
            let block = catalan(k) * catalan(n - 1 - k);
            if r < block {
                let rc = catalan(n - 1 - k);
                let l = BinaryTree::unrank(k, r / rc)?;
                let rt = BinaryTree::unrank(n - 1 - k, r % rc)?;
                return Ok(BinaryTree::node(l, rt));
            }
            r -= block;
        }
        unreachable!("rank bounded by catalan(n)")
    }

    fn write_to(&self, out: &mut String) {
        match self {
            BinaryTree::Leaf => out.push('.'),
            BinaryTree::Node(l, r) => {
                out.push('(');
                l.write_to(out);
                r.write_to(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(4 * self.size() + 1);
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryTree({self})")
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let tree = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse { offset: pos, message: "trailing input".into() });
        }
        Ok(tree)
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree> {
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BinaryTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree(bytes, pos)?;
            let r = parse_tree(bytes, pos)?;
            match bytes.get(*pos) {
                Some(b')') => {
                    *pos += 1;
                    Ok(BinaryTree::node(l, r))
                }
                Some(_) => Err(Error::Parse { offset: *pos, message: "expected ')'".into() }),
                None => Err(Error::Parse { offset: *pos, message: "unexpected end of input".into() }),
            }
        }
        Some(_) => Err(Error::Parse { offset: *pos, message: "expected '.' or '('".into() }),
        None => Err(Error::Parse { offset: *pos, message: "unexpected end of input".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinaryTree {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(BinaryTree::enumerate(0), vec![BinaryTree::Leaf]);
        assert_eq!(BinaryTree::enumerate(2), vec![t("((..).)"), t("(.(..))")]);
        assert_eq!(BinaryTree::enumerate(3).len(), 5);
        for n in 0..=12 {
            assert_eq!(BinaryTree::enumerate(n).len(), catalan(n));
        }
    }

    #[test]
    fn grafting_examples() {
        let one = BinaryTree::one();
        assert_eq!(one.graft_over(&one), t("((..).)"));
        assert_eq!(one.graft_under(&one), t("(.(..))"));
        for x in BinaryTree::enumerate(3) {
            assert_eq!(BinaryTree::Leaf.graft_over(&x), x);
            assert_eq!(x.graft_over(&BinaryTree::Leaf), x);
            assert_eq!(x.graft_under(&BinaryTree::Leaf), x);
            assert_eq!(BinaryTree::Leaf.graft_under(&x), x);
            assert_eq!(x.graft_over(&one), BinaryTree::node(x.clone(), BinaryTree::Leaf));
        }
        assert_eq!(one.graft_over(&one).graft_under(&one), one.graft_over(&one.graft_under(&one)));
    }

    #[test]
    fn grafting_laws_exhaustive() {
        let small: Vec<BinaryTree> = (0..=4).flat_map(BinaryTree::enumerate).collect();
        for x in &small {
            for y in &small {
                let n = x.size() + y.size();
                assert_eq!(x.graft_over(y).size(), n);
                assert_eq!(x.graft_under(y).size(), n);
                // with y = | the two sides are x\z and x∕z
                for z in small.iter().filter(|_| !y.is_leaf()) {
                    assert_eq!(x.graft_over(y).graft_under(z), x.graft_over(&y.graft_under(z)));
                }
            }
        }
    }

    #[test]
    fn decompose_reads_root() {
        assert!(BinaryTree::Leaf.decompose().is_none());
        let z = t("((..).)");
        let (l, r) = z.decompose().unwrap();
        assert_eq!((l, r), (&t("(..)"), &t(".")));
        assert_eq!(BinaryTree::node(l.clone(), r.clone()), z);
        let (l, r) = t("(.(..))").decompose().map(|(a, b)| (a.clone(), b.clone())).unwrap();
        assert_eq!((l, r), (t("."), t("(..)")));
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for n in 0..=8 {
            for (i, x) in BinaryTree::enumerate(n).iter().enumerate() {
                assert_eq!(x.rank(), i);
                assert_eq!(&BinaryTree::unrank(n, i).unwrap(), x);
            }
        }
        assert!(BinaryTree::unrank(3, 5).is_err());
        assert_eq!(BinaryTree::left_comb(5).rank(), 0);
        assert_eq!(BinaryTree::right_comb(5).rank(), catalan(5) - 1);
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!(BinaryTree::Leaf.to_string(), ".");
        assert_eq!(t("((..).)"), BinaryTree::node(BinaryTree::one(), BinaryTree::Leaf));
        match "((.)".parse::<BinaryTree>() {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!("(..".parse::<BinaryTree>().is_err());
        assert!("..".parse::<BinaryTree>().is_err());
        assert!("".parse::<BinaryTree>().is_err());
        for x in BinaryTree::enumerate(5) {
            assert_eq!(t(&x.to_string()), x);
        }
    }
}
