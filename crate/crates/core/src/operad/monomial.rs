use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Planar tree with ternary internal vertices: a monomial of the free
/// operad on one generator of arity 3.
///
/// Text form: `*` for a leaf, `m[a,b,c]` for a vertex with children `a, b, c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Leaf,
    Node(Arc<[Monomial; 3]>),
}

impl Monomial {
    /// The operad unit, a bare leaf of arity 1.
    pub fn unit() -> Self {
        Monomial::Leaf
    }

    /// The generator `m[*,*,*]`.
    pub fn generator() -> Self {
        Monomial::node([Monomial::Leaf, Monomial::Leaf, Monomial::Leaf])
    }

    pub fn node(children: [Monomial; 3]) -> Self {
        Monomial::Node(Arc::new(children))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Monomial::Leaf)
    }

    pub fn children(&self) -> Option<&[Monomial; 3]> {
        match self {
            Monomial::Leaf => None,
            Monomial::Node(c) => Some(c),
        }
    }

    /// Number of internal vertices.
    pub fn vertices(&self) -> usize {
        match self {
            Monomial::Leaf => 0,
            Monomial::Node(c) => 1 + c.iter().map(Monomial::vertices).sum::<usize>(),
        }
    }

    /// Number of leaves, always `2 * vertices + 1`.
    pub fn arity(&self) -> usize {
        2 * self.vertices() + 1
    }

    /// Grafts `b` onto leaf `i` (1-based). Also returns how many vertices of
    /// `self` follow that leaf in preorder.
    pub fn graft(&self, i: usize, b: &Monomial) -> Result<(Monomial, usize)> {
        let arity = self.arity();
        if i == 0 || i > arity {
            return Err(Error::PositionOutOfRange { position: i, arity });
        }
        let mut st = GraftState { target: i, leaves: 0, vertices: 0, before: 0 };
        let out = graft_rec(self, b, &mut st);
        Ok((out, self.vertices() - st.before))
    }

    /// Subtree at a path of child indices (0-based).
    pub fn at(&self, path: &[usize]) -> Option<&Monomial> {
        let mut cur = self;
        for &k in path {
            cur = &cur.children()?[k];
        }
        Some(cur)
    }

    /// Copy of `self` with the subtree at `path` replaced.
    pub fn replace_at(&self, path: &[usize], new: Monomial) -> Monomial {
        match path.split_first() {
            None => new,
            Some((&k, rest)) => {
                let mut ch = self.children().expect("path leads through vertices").clone();
                ch[k] = ch[k].replace_at(rest, new);
                Monomial::node(ch)
            }
        }
    }

    /// Child-index paths of all vertices, in preorder.
    pub fn vertex_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        collect_paths(self, &mut path, &mut out);
        out
    }

    /// All monomials with `k` vertices.
    pub fn all(k: usize) -> Vec<Monomial> {
        let mut table: Vec<Vec<Monomial>> = vec![vec![Monomial::Leaf]];
        for n in 1..=k {
            let mut level = Vec::new();
            for a in 0..n {
                for b in 0..n - a {
                    let c = n - 1 - a - b;
                    for x in &table[a] {
                        for y in &table[b] {
                            for z in &table[c] {
                                level.push(Monomial::node([x.clone(), y.clone(), z.clone()]));
                            }
                        }
                    }
                }
            }
            table.push(level);
        }
        table.swap_remove(k)
    }
}

struct GraftState {
    target: usize,
    leaves: usize,
    vertices: usize,
    before: usize,
}

fn graft_rec(t: &Monomial, b: &Monomial, st: &mut GraftState) -> Monomial {
    match t {
        Monomial::Leaf => {
            st.leaves += 1;
            if st.leaves == st.target {
                st.before = st.vertices;
                b.clone()
            } else {
                Monomial::Leaf
            }
        }
        Monomial::Node(c) => {
            st.vertices += 1;
            let x = graft_rec(&c[0], b, st);
            let y = graft_rec(&c[1], b, st);
            let z = graft_rec(&c[2], b, st);
            Monomial::node([x, y, z])
        }
    }
}

fn collect_paths(t: &Monomial, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if let Some(c) = t.children() {
        out.push(path.clone());
        for (k, child) in c.iter().enumerate() {
            path.push(k);
            collect_paths(child, path, out);
            path.pop();
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Leaf => f.write_str("*"),
            Monomial::Node(c) => write!(f, "m[{},{},{}]", c[0], c[1], c[2]),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let m = parse_rec(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Parse { offset: pos, message: "trailing input".into() });
        }
        Ok(m)
    }
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn expect(b: &[u8], pos: &mut usize, c: u8) -> Result<()> {
    skip_ws(b, pos);
    if b.get(*pos) == Some(&c) {
        *pos += 1;
        Ok(())
    } else {
        Err(Error::Parse { offset: *pos, message: format!("expected '{}'", c as char) })
    }
}

fn parse_rec(b: &[u8], pos: &mut usize) -> Result<Monomial> {
    skip_ws(b, pos);
    match b.get(*pos) {
        Some(b'*') => {
            *pos += 1;
            Ok(Monomial::Leaf)
        }
        Some(b'm') => {
            *pos += 1;
            expect(b, pos, b'[')?;
            let x = parse_rec(b, pos)?;
            expect(b, pos, b',')?;
            let y = parse_rec(b, pos)?;
            expect(b, pos, b',')?;
            let z = parse_rec(b, pos)?;
            expect(b, pos, b']')?;
            Ok(Monomial::node([x, y, z]))
        }
        _ => Err(Error::Parse { offset: *pos, message: "expected '*' or 'm'".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn text_roundtrip() {
        for s in ["*", "m[*,*,*]", "m[*,*,m[*,*,*]]", "m[m[*,m[*,*,*],*],*,*]"] {
            assert_eq!(m(s).to_string(), s);
        }
        assert_eq!(m(" m[ *, *,* ] "), Monomial::generator());
        assert!("m[*,*]".parse::<Monomial>().is_err());
        assert!("m[*,*,*]x".parse::<Monomial>().is_err());
    }

    #[test]
    fn graft_positions() {
        let g = Monomial::generator();
        let (t, after) = g.graft(3, &g).unwrap();
        assert_eq!(t, m("m[*,*,m[*,*,*]]"));
        assert_eq!(after, 0);
        let (t, after) = m("m[*,*,m[*,*,*]]").graft(1, &g).unwrap();
        assert_eq!(t, m("m[m[*,*,*],*,m[*,*,*]]"));
        assert_eq!(after, 1);
        assert!(g.graft(4, &g).is_err());
        assert!(g.graft(0, &g).is_err());
        assert_eq!(Monomial::unit().graft(1, &g).unwrap().0, g);
    }

    #[test]
    fn counts() {
        // Fuss-Catalan numbers binomial(3k, k) / (2k + 1)
        let counts: Vec<usize> = (0..6).map(|k| Monomial::all(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 12, 55, 273]);
        for t in Monomial::all(3) {
            assert_eq!(t.arity(), 7);
            assert_eq!(t.vertex_paths().len(), 3);
        }
    }

    #[test]
    fn paths() {
        let t = m("m[m[*,*,*],*,m[*,m[*,*,*],*]]");
        assert_eq!(t.vertex_paths(), vec![vec![], vec![0], vec![2], vec![2, 1]]);
        assert_eq!(t.at(&[2, 1]), Some(&Monomial::generator()));
        assert_eq!(t.replace_at(&[2, 1], Monomial::Leaf), m("m[m[*,*,*],*,m[*,*,*]]"));
    }
}
