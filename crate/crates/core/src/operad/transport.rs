use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Monomial, OperadConfig, OperadElement, TransportKind};
use crate::error::Result;

/// The cyclic (or anticyclic) action of the generator of `Z/(2n+2)` on
/// the component of arity `2n+1`, reduced to normal form.
pub fn cyclic_transport(e: &OperadElement, config: &OperadConfig) -> Result<OperadElement> {
    let mut memo = HashMap::new();
    let raw = transport_free(e, config, &mut memo)?;
    Ok(config.normal_form(&raw))
}

/// `cyclic_transport` applied `k` times.
pub fn cyclic_transport_pow(e: &OperadElement, config: &OperadConfig, k: usize) -> Result<OperadElement> {
    let mut cur = config.normal_form(e);
    for _ in 0..k {
        cur = cyclic_transport(&cur, config)?;
    }
    Ok(cur)
}

/// The action in the free operad, before reduction.
pub fn transport_free(
    e: &OperadElement,
    config: &OperadConfig,
    memo: &mut HashMap<Monomial, OperadElement>,
) -> Result<OperadElement> {
    let mut out = OperadElement::zero(e.arity());
    for (m, c) in e.terms() {
        out = out.add(&transport_monomial(m, config, memo)?.scale(c))?;
    }
    Ok(out)
}

fn sign(config: &OperadConfig, exponent: usize) -> BigInt {
    if config.parity() == super::Parity::Odd && exponent % 2 == 1 {
        BigInt::from(-1)
    } else {
        BigInt::from(1)
    }
}

fn transport_monomial(
    t: &Monomial,
    config: &OperadConfig,
    memo: &mut HashMap<Monomial, OperadElement>,
) -> Result<OperadElement> {
    if let Some(hit) = memo.get(t) {
        return Ok(hit.clone());
    }
    let value = match t.children() {
        None => match config.transport() {
            TransportKind::Anticyclic => OperadElement::unit().neg(),
            TransportKind::Cyclic => OperadElement::unit(),
        },
        Some(ch) if ch.iter().all(Monomial::is_leaf) => {
            OperadElement::generator().scale(&BigInt::from(config.generator_value()))
        }
        Some(ch) if !ch[0].is_leaf() => {
            // t = ε · U ∘_1 B with U the root pruned at its first slot
            let b = ch[0].clone();
            let u = Monomial::node([Monomial::Leaf, ch[1].clone(), ch[2].clone()]);
            let (nu, nb) = (u.vertices(), b.vertices());
            let eps = sign(config, (nu - 1) * nb);
            let mut k = sign(config, nu * nb) * eps;
            if config.transport() == TransportKind::Anticyclic {
                k = -k;
            }
            let tb = transport_monomial(&b, config, memo)?;
            let tu = transport_monomial(&u, config, memo)?;
            config.compose_max(&tb, &tu)?.scale(&k)
        }
        Some(ch) => {
            // t = ε · V ∘_j B at the leftmost nontrivial slot j > 1
            let j = if ch[1].is_leaf() { 3 } else { 2 };
            let b = ch[j - 1].clone();
            let mut pruned = ch.clone();
            pruned[j - 1] = Monomial::Leaf;
            let v = Monomial::node(pruned);
            let after: usize = ch[j..].iter().map(Monomial::vertices).sum();
            let eps = sign(config, after * b.vertices());
            let tv = transport_monomial(&v, config, memo)?;
            config.compose(&tv, j - 1, &OperadElement::from(b))?.scale(&eps)
        }
    };
    memo.insert(t.clone(), value.clone());
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn generator_values() {
        let g = OperadElement::generator();
        assert_eq!(cyclic_transport(&g, &OperadConfig::v()).unwrap(), g.neg());
        assert_eq!(cyclic_transport(&g, &OperadConfig::v_cyclic()).unwrap(), g);
        assert_eq!(cyclic_transport(&g, &OperadConfig::w()).unwrap(), g.neg());
        let u = OperadElement::unit();
        assert_eq!(cyclic_transport(&u, &OperadConfig::v()).unwrap(), u.neg());
        assert_eq!(cyclic_transport(&u, &OperadConfig::w()).unwrap(), u);
    }

    #[test]
    fn w_combs() {
        let w = OperadConfig::w();
        let mut comb = Monomial::unit();
        for n in 1..=5 {
            comb = Monomial::node([comb, Monomial::Leaf, Monomial::Leaf]);
            let e = OperadElement::from(comb.clone());
            let expect = if n % 2 == 0 { e.clone() } else { e.neg() };
            assert_eq!(cyclic_transport(&e, &w).unwrap(), expect, "n = {n}");
        }
    }

    #[test]
    fn relation_is_stable() {
        // θ(m∘_1m - m∘_2m + m∘_3m) is proportional to the relation
        let mut rel = OperadElement::zero(5);
        rel.add_term(m("m[m[*,*,*],*,*]"), BigInt::from(1)).unwrap();
        rel.add_term(m("m[*,m[*,*,*],*]"), BigInt::from(-1)).unwrap();
        rel.add_term(m("m[*,*,m[*,*,*]]"), BigInt::from(1)).unwrap();
        let v = OperadConfig::v();
        let mut memo = HashMap::new();
        let img = transport_free(&rel, &v, &mut memo).unwrap();
        assert!(img == rel || img == rel.neg(), "{img}");
    }

    #[test]
    fn order_divides_arity_plus_one() {
        for cfg in [OperadConfig::v(), OperadConfig::v_cyclic(), OperadConfig::w()] {
            for n in 0..=3 {
                for t in cfg.normal_monomials(n) {
                    let e = OperadElement::from(t);
                    assert_eq!(cyclic_transport_pow(&e, &cfg, 2 * n + 2).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn cyclic_is_minus_anticyclic() {
        let (v, vc) = (OperadConfig::v(), OperadConfig::v_cyclic());
        for n in 0..=4 {
            for t in v.normal_monomials(n) {
                let e = OperadElement::from(t);
                assert_eq!(cyclic_transport(&e, &vc).unwrap(), cyclic_transport(&e, &v).unwrap().neg());
            }
        }
    }
}
