use num_bigint::BigInt;
use num_traits::One;

use super::{Monomial, OperadConfig, OperadElement, RewriteStep};
use crate::error::{Error, Result};
use crate::grothendieck::{Basis, K0Vector};
use crate::trees::BinaryTree;

/// `a ∕ b = (-1)^{ab} b ∘_1 a`.
pub fn over_op(config: &OperadConfig, a: &OperadElement, b: &OperadElement) -> Result<OperadElement> {
    let k = if config.weight(a.vertices()) * config.weight(b.vertices()) % 2 == 1 { -1 } else { 1 };
    Ok(config.compose(b, 1, a)?.scale(&BigInt::from(k)))
}

/// `a * b = a ∘_max b`.
pub fn star_op(config: &OperadConfig, a: &OperadElement, b: &OperadElement) -> Result<OperadElement> {
    config.compose_max(a, b)
}

/// `Q_|` is the unit and `Q_{(x,y)} = (-1)^{|x|} (m ∘_1 Q_x) ∘_max Q_y`.
pub fn q_element(x: &BinaryTree) -> OperadElement {
    let v = OperadConfig::v();
    match x.decompose() {
        None => OperadElement::unit(),
        Some((l, r)) => {
            let (ql, qr) = (q_element(l), q_element(r));
            let inner = v.compose(&OperadElement::generator(), 1, &ql).expect("position 1 exists");
            let k = if l.size() % 2 == 1 { -1 } else { 1 };
            v.compose_max(&inner, &qr).expect("max position exists").scale(&BigInt::from(k))
        }
    }
}

/// The single monomial of `Q_x` and its sign.
pub fn q_monomial(x: &BinaryTree) -> (Monomial, i64) {
    let q = q_element(x);
    let (m, c) = q.terms().next().expect("Q_x is a signed monomial");
    (m.clone(), if c.is_one() { 1 } else { -1 })
}

/// Binary tree read off a normal monomial: each vertex keeps its first and
/// third subtrees.
pub fn shape(t: &Monomial) -> Result<BinaryTree> {
    match t.children() {
        None => Ok(BinaryTree::Leaf),
        Some(c) if c[1].is_leaf() => Ok(BinaryTree::node(shape(&c[0])?, shape(&c[2])?)),
        Some(_) => Err(Error::NotNormal(t.to_string())),
    }
}

/// `ψ(Q_x) = P_x`, extended linearly to normal elements.
pub fn psi(e: &OperadElement) -> Result<K0Vector> {
    let mut out = K0Vector::zero(e.vertices(), Basis::P);
    for (t, c) in e.terms() {
        let x = shape(t)?;
        let (q, s) = q_monomial(&x);
        debug_assert_eq!(&q, t);
        out = out.add(&K0Vector::basis_vector(&x, Basis::P).scale(&(c * s)))?;
    }
    Ok(out)
}

/// Both reductions of `(m∘_2m)∘_3m = m∘_2(m∘_2m)`.
#[derive(Clone, Debug)]
pub struct CriticalPairReport {
    pub source: Monomial,
    pub left: OperadElement,
    pub right: OperadElement,
    pub expected: OperadElement,
    /// Rewriting the outer vertex first.
    pub left_trace: Vec<RewriteStep>,
    /// Rewriting the inner vertex first.
    pub right_trace: Vec<RewriteStep>,
}

impl CriticalPairReport {
    pub fn agrees(&self) -> bool {
        self.left == self.expected && self.right == self.expected
    }
}

pub fn critical_pair_check() -> Result<CriticalPairReport> {
    let v = OperadConfig::v();
    let g = OperadElement::generator();
    let m22 = v.compose(&g, 2, &g)?;
    let lhs = v.compose(&m22, 3, &g)?;
    let rhs = v.compose(&g, 2, &m22)?;
    if lhs != rhs {
        return Err(Error::Precondition("the two sides of the critical pair differ as monomials".into()));
    }
    let source = lhs.terms().next().expect("single monomial").0.clone();
    let (left, left_trace) = v.normal_form_traced(&lhs);
    let (first, mut right_trace) = v.rewrite_once(&rhs, &[1], 2);
    let (right, rest) = v.normal_form_traced(&first);
    right_trace.extend(rest);
    let m13 = v.compose(&g, 3, &g)?;
    let m11 = v.compose(&g, 1, &g)?;
    let expected = v.compose(&g, 1, &m13)?.add(&v.compose(&g, 3, &m11)?)?;
    Ok(CriticalPairReport { source, left, right, expected, left_trace, right_trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinaryTree {
        s.parse().unwrap()
    }

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn small_q() {
        assert_eq!(q_element(&BinaryTree::Leaf), OperadElement::unit());
        assert_eq!(q_element(&t("(..)")), OperadElement::generator());
    }

    #[test]
    fn figure_tree() {
        // Q_x = (m ∘_3 (m ∘_1 m)) ∘_1 m for x = ((..)((..).))
        let v = OperadConfig::v();
        let g = OperadElement::generator();
        let inner = v.compose(&g, 3, &v.compose(&g, 1, &g).unwrap()).unwrap();
        let expect = v.compose(&inner, 1, &g).unwrap();
        assert_eq!(q_element(&t("((..)((..).))")), expect);
    }

    #[test]
    fn two_expressions_agree() {
        let v = OperadConfig::v();
        let g = OperadElement::generator();
        let trees: Vec<BinaryTree> = (0..=3).flat_map(BinaryTree::enumerate).collect();
        for x in &trees {
            for y in &trees {
                let (qx, qy) = (q_element(x), q_element(y));
                let (wx, wy) = (x.size(), y.size());
                let k = if (wx + wx * wy) % 2 == 1 { -1 } else { 1 };
                let other = v.compose(&v.compose(&g, 3, &qy).unwrap(), 1, &qx).unwrap().scale(&BigInt::from(k));
                assert_eq!(q_element(&BinaryTree::node(x.clone(), y.clone())), other, "{x} {y}");
            }
        }
    }

    #[test]
    fn q_is_normal_and_shaped() {
        let v = OperadConfig::v();
        for n in 0..=5 {
            for x in BinaryTree::enumerate(n) {
                let (q, _) = q_monomial(&x);
                assert!(v.is_normal(&q));
                assert_eq!(shape(&q).unwrap(), x);
                assert_eq!(psi(&q_element(&x)).unwrap(), K0Vector::basis_vector(&x, Basis::P));
            }
        }
        assert!(shape(&m("m[*,m[*,*,*],*]")).is_err());
        assert!(psi(&OperadElement::zero(5)).unwrap().is_zero());
    }

    #[test]
    fn products_on_q() {
        let v = OperadConfig::v();
        let trees: Vec<BinaryTree> = (0..=3).flat_map(BinaryTree::enumerate).collect();
        for x in &trees {
            for y in &trees {
                let (qx, qy) = (q_element(x), q_element(y));
                assert_eq!(star_op(&v, &qx, &qy).unwrap(), q_element(&x.graft_under(y)));
                assert_eq!(over_op(&v, &qx, &qy).unwrap(), q_element(&x.graft_over(y)));
            }
        }
    }

    #[test]
    fn critical_pair() {
        let r = critical_pair_check().unwrap();
        assert!(r.agrees(), "{} / {}", r.left, r.right);
        assert_eq!(r.source, m("m[*,m[*,m[*,*,*],*],*]"));
        assert_eq!(r.left_trace.len(), 1);
        assert_eq!(r.right_trace.len(), 7);
        assert!(r.left_trace.iter().chain(&r.right_trace).all(RewriteStep::decreases));
    }
}
