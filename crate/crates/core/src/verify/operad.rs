use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rand::Rng;
use serde_json::{json, Value};

use super::{expect, Ctx};
use crate::error::Result;
use crate::grothendieck::apply_theta;
use crate::operad::{
    critical_pair_check, cyclic_transport, over_op, psi, q_element, q_monomial, shape, star_op, transport_free,
    Monomial, OperadConfig, OperadElement, Parity, RewriteStep, TransportKind,
};
use crate::trees::{catalan, BinaryTree};

/// A monomial with `k` vertices built by grafting generators at random leaves.
pub(crate) fn random_monomial<R: Rng>(rng: &mut R, k: usize) -> Monomial {
    let mut t = Monomial::unit();
    for _ in 0..k {
        let i = rng.gen_range(1..=t.arity());
        t = t.graft(i, &Monomial::generator()).expect("leaf in range").0;
    }
    t
}

fn random_element<R: Rng>(rng: &mut R, k: usize) -> OperadElement {
    let mut e = OperadElement::zero(2 * k + 1);
    for _ in 0..rng.gen_range(1..=4) {
        let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        e.add_term(random_monomial(rng, k), BigInt::from(c)).expect("same arity");
    }
    e
}

/// Vertex counts for three monomials with total at most `max`.
fn split3<R: Rng>(rng: &mut R, max: usize) -> [usize; 3] {
    let a = rng.gen_range(0..=max);
    let b = rng.gen_range(0..=max - a);
    let c = rng.gen_range(0..=max - a - b);
    let mut v = [a, b, c];
    let r = rng.gen_range(0..3);
    v.rotate_left(r);
    v
}

fn sign(config: &OperadConfig, a: usize, b: usize) -> BigInt {
    BigInt::from(if config.weight(a) * config.weight(b) % 2 == 1 { -1 } else { 1 })
}

fn witness(names: &[&str], items: &[&OperadElement]) -> Value {
    let mut m = serde_json::Map::new();
    for (n, e) in names.iter().zip(items) {
        m.insert((*n).into(), json!(e.to_string()));
    }
    Value::Object(m)
}

fn theta(config: &OperadConfig, e: &OperadElement) -> Result<OperadElement> {
    transport_free(e, config, &mut HashMap::new())
}

pub(super) fn axioms(ctx: &mut Ctx) {
    let max_v = ctx.max_n(6);
    let samples = ctx.samples(200);
    for config in [OperadConfig::v(), OperadConfig::w()] {
        let tag = match config.parity() {
            Parity::Odd => "odd",
            Parity::Even => "even",
        };
        let mut rng = ctx.rng(&format!("sequential/{tag}"));
        ctx.run(format!("sequential axiom, {tag} generator, {samples} samples"), || {
            for _ in 0..samples {
                let [va, vb, vc] = split3(&mut rng, max_v);
                let (a, b, c) =
                    (random_monomial(&mut rng, va), random_monomial(&mut rng, vb), random_monomial(&mut rng, vc));
                let (a, b, c) = (OperadElement::from(a), OperadElement::from(b), OperadElement::from(c));
                let i = rng.gen_range(1..=a.arity());
                let j = rng.gen_range(1..=b.arity());
                let lhs = config.compose(&config.compose(&a, i, &b)?, j + i - 1, &c)?;
                let rhs = config.compose(&a, i, &config.compose(&b, j, &c)?)?;
                if lhs != rhs {
                    return Ok(Some(
                        json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "i": i, "j": j}),
                    ));
                }
            }
            Ok(None)
        });
        let mut rng = ctx.rng(&format!("parallel/{tag}"));
        ctx.run(format!("parallel axiom, {tag} generator, {samples} samples"), || {
            let mut done = 0;
            while done < samples {
                let [va, vb, vc] = split3(&mut rng, max_v);
                if va == 0 {
                    continue;
                }
                done += 1;
                let a = OperadElement::from(random_monomial(&mut rng, va));
                let b = OperadElement::from(random_monomial(&mut rng, vb));
                let c = OperadElement::from(random_monomial(&mut rng, vc));
                let i = rng.gen_range(1..a.arity());
                let j = rng.gen_range(i + 1..=a.arity());
                let lhs = config.compose(&config.compose(&a, i, &b)?, j + b.arity() - 1, &c)?;
                let rhs = config.compose(&config.compose(&a, j, &c)?, i, &b)?.scale(&sign(&config, vb, vc));
                if lhs != rhs {
                    return Ok(Some(
                        json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "i": i, "j": j}),
                    ));
                }
            }
            Ok(None)
        });
    }
    for config in [OperadConfig::v(), OperadConfig::v_cyclic(), OperadConfig::w()] {
        let tag = config.name();
        let mut rng = ctx.rng(&format!("cyclic/{tag}"));
        ctx.run(format!("transport axioms, {tag}, {samples} samples"), || {
            for _ in 0..samples {
                let [va, vb, _] = split3(&mut rng, max_v);
                let a = OperadElement::from(random_monomial(&mut rng, va));
                let b = OperadElement::from(random_monomial(&mut rng, vb));
                let i = rng.gen_range(1..=a.arity());
                let lhs = theta(&config, &config.compose(&a, i, &b)?)?;
                let rhs = if i > 1 {
                    config.compose(&theta(&config, &a)?, i - 1, &b)?
                } else {
                    let mut k = sign(&config, va, vb);
                    if config.transport() == TransportKind::Anticyclic {
                        k = -k;
                    }
                    config.compose_max(&theta(&config, &b)?, &theta(&config, &a)?)?.scale(&k)
                };
                if lhs != rhs {
                    let mut w = witness(&["a", "b", "lhs", "rhs"], &[&a, &b, &lhs, &rhs]);
                    w["i"] = json!(i);
                    return Ok(Some(w));
                }
            }
            Ok(None)
        });
    }
}

fn trace_json(trace: &[RewriteStep]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|s| {
                json!({
                    "monomial": s.monomial.to_string(),
                    "coeff": s.coeff.to_string(),
                    "path": s.path,
                    "slot": s.slot,
                    "measure": s.measure_before,
                    "produced": s.produced.iter().map(|(m, c)| json!({"coeff": c, "tree": m.to_string()})).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub(super) fn confluence(ctx: &mut Ctx) {
    ctx.run_detailed("critical pair (m∘2m)∘3m", || {
        let r = critical_pair_check()?;
        let ok = r.agrees()
            && r.left_trace.len() == 1
            && r.right_trace.len() == 7
            && r.left_trace.iter().chain(&r.right_trace).all(RewriteStep::decreases);
        Ok((
            ok,
            json!({
                "source": r.source.to_string(),
                "expected": r.expected.to_json(),
                "left": r.left.to_json(),
                "right": r.right.to_json(),
                "left_trace": trace_json(&r.left_trace),
                "right_trace": trace_json(&r.right_trace),
            }),
        ))
    });
    let w = OperadConfig::w();
    ctx.run("W: two-vertex monomials reduce to multiples of w∘1w", || {
        let target: Monomial = "m[m[*,*,*],*,*]".parse()?;
        for t in Monomial::all(2) {
            let nf = w.normal_form(&OperadElement::from(t.clone()));
            if nf.len() != 1 || nf.terms().next().map(|(m, _)| m) != Some(&target) {
                return Ok(Some(json!({"monomial": t.to_string(), "normal_form": nf.to_string()})));
            }
        }
        Ok(None)
    });
    ctx.run("W: three-vertex monomials reduce to ±w_3", || {
        let target: Monomial = "m[m[m[*,*,*],*,*],*,*]".parse()?;
        for t in Monomial::all(3) {
            let nf = w.normal_form(&OperadElement::from(t.clone()));
            if nf.len() != 1 || nf.terms().next().map(|(m, _)| m) != Some(&target) {
                return Ok(Some(json!({"monomial": t.to_string(), "normal_form": nf.to_string()})));
            }
        }
        Ok(None)
    });
    let samples = ctx.samples(100);
    let max_v = ctx.max_n(5).max(2);
    for config in [OperadConfig::v(), OperadConfig::w()] {
        let mut rng = ctx.rng(&format!("strategy/{}", config.name()));
        ctx.run(format!("{}: leftmost and random strategies agree, {samples} elements", config.name()), || {
            for _ in 0..samples {
                let k = rng.gen_range(2..=max_v);
                let e = random_element(&mut rng, k);
                let (left, lt) = config.normal_form_traced(&e);
                let (right, rt) = config.normal_form_random(&e, &mut rng);
                if left != right || !config.is_normal_element(&left) {
                    return Ok(Some(witness(&["element", "leftmost", "random"], &[&e, &left, &right])));
                }
                if let Some(step) = lt.iter().chain(&rt).find(|s| !s.decreases()) {
                    return Ok(Some(json!({"element": e.to_string(), "step": trace_json(std::slice::from_ref(step))})));
                }
            }
            Ok(None)
        });
    }
}

pub(super) fn dimension(ctx: &mut Ctx) {
    let v = OperadConfig::v();
    let w = OperadConfig::w();
    for n in 0..=ctx.max_n(6) {
        ctx.run(format!("dim V({}) = Catalan({n}) = {}", 2 * n + 1, catalan(n)), || {
            let normal: BTreeSet<Monomial> = v.normal_monomials(n).into_iter().collect();
            let q: BTreeSet<Monomial> = BinaryTree::enumerate(n).iter().map(|x| q_monomial(x).0).collect();
            Ok(expect(
                normal.len() == catalan(n) && normal == q,
                || json!({"normal_monomials": normal.len(), "q_monomials": q.len(), "catalan": catalan(n)}),
            ))
        });
        ctx.run(format!("dim W({}) = 1", 2 * n + 1), || {
            let k = w.normal_monomials(n).len();
            Ok(expect(k == 1, || json!({"normal_monomials": k})))
        });
    }
}

fn t(s: &str) -> Result<BinaryTree> {
    s.parse()
}

pub(super) fn q_basis(ctx: &mut Ctx) {
    let v = OperadConfig::v();
    let g = OperadElement::generator();
    let small = ctx.max_n(3).min(3);
    let trees: Vec<BinaryTree> = (0..=small).flat_map(BinaryTree::enumerate).collect();
    ctx.run("Q of the one-vertex tree is the generator", || {
        let q = q_element(&BinaryTree::one());
        Ok(expect(q == g, || json!(q.to_string())))
    });
    ctx.run("Q of ((..)((..).)) is (m∘3(m∘1m))∘1m", || {
        let expect_q = v.compose(&v.compose(&g, 3, &v.compose(&g, 1, &g)?)?, 1, &g)?;
        let q = q_element(&t("((..)((..).))")?);
        Ok(expect(q == expect_q, || json!({"q": q.to_string(), "expected": expect_q.to_string()})))
    });
    ctx.run(format!("the two recursive expressions of Q agree, sizes <= {small}"), || {
        for x in &trees {
            for y in &trees {
                let (wx, wy) = (x.size(), y.size());
                let k = BigInt::from(if (wx + wx * wy) % 2 == 1 { -1 } else { 1 });
                let other = v.compose(&v.compose(&g, 3, &q_element(y))?, 1, &q_element(x))?.scale(&k);
                let q = q_element(&BinaryTree::node(x.clone(), y.clone()));
                if q != other {
                    return Ok(Some(json!({"x": x.to_string(), "y": y.to_string()})));
                }
            }
        }
        Ok(None)
    });
    let psi_n = ctx.max_n(4);
    ctx.run(format!("shape and psi invert Q, sizes <= {psi_n}"), || {
        for n in 0..=psi_n {
            for x in BinaryTree::enumerate(n) {
                let (m, _) = q_monomial(&x);
                let p = psi(&q_element(&x))?;
                let px = crate::grothendieck::K0Vector::basis_vector(&x, crate::grothendieck::Basis::P);
                if !v.is_normal(&m) || shape(&m)? != x || p != px {
                    return Ok(Some(json!({"x": x.to_string()})));
                }
            }
        }
        Ok(None)
    });
    ctx.run(format!("operad products on Q match grafting, sizes <= {small}"), || {
        for x in &trees {
            for y in &trees {
                let (qx, qy) = (q_element(x), q_element(y));
                if star_op(&v, &qx, &qy)? != q_element(&x.graft_under(y))
                    || over_op(&v, &qx, &qy)? != q_element(&x.graft_over(y))
                {
                    return Ok(Some(json!({"x": x.to_string(), "y": y.to_string()})));
                }
            }
        }
        Ok(None)
    });
    let th = |e: &OperadElement| cyclic_transport(e, &v);
    ctx.run(format!("θ_V(a∕b) = -θ_V(a) * θ_V(b), sizes <= {small}"), || {
        for x in &trees {
            for y in &trees {
                let (a, b) = (q_element(x), q_element(y));
                let lhs = th(&v.normal_form(&over_op(&v, &a, &b)?))?;
                let rhs = v.normal_form(&star_op(&v, &th(&a)?, &th(&b)?)?.neg());
                if lhs != rhs {
                    return Ok(Some(
                        json!({"x": x.to_string(), "y": y.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()}),
                    ));
                }
            }
        }
        Ok(None)
    });
    ctx.run(format!("θ_V(m*(a∕(m*b))) = θ_V(m*a)∕θ_V(m*b) - θ_V(m*a)*θ_V(m*b), sizes <= {small}"), || {
        for x in &trees {
            for y in &trees {
                let (a, b) = (q_element(x), q_element(y));
                let ga = star_op(&v, &g, &a)?;
                let gb = star_op(&v, &g, &b)?;
                let lhs = th(&v.normal_form(&star_op(&v, &g, &over_op(&v, &a, &gb)?)?))?;
                let (ta, tb) = (th(&ga)?, th(&gb)?);
                let rhs = v.normal_form(&over_op(&v, &ta, &tb)?.sub(&star_op(&v, &ta, &tb)?)?);
                if lhs != rhs {
                    return Ok(Some(
                        json!({"x": x.to_string(), "y": y.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()}),
                    ));
                }
            }
        }
        Ok(None)
    });
    ctx.run("θ_V maps the relation m∘1m - m∘2m + m∘3m to ± itself", || {
        let mut rel = OperadElement::zero(5);
        rel.add_term("m[m[*,*,*],*,*]".parse()?, BigInt::from(1))?;
        rel.add_term("m[*,m[*,*,*],*]".parse()?, BigInt::from(-1))?;
        rel.add_term("m[*,*,m[*,*,*]]".parse()?, BigInt::from(1))?;
        let img = theta(&v, &rel)?;
        Ok(expect(img == rel || img == rel.neg(), || json!(img.to_string())))
    });
    let cyc = OperadConfig::v_cyclic();
    let gamma_n = ctx.max_n(4);
    ctx.run(format!("γ_V = -θ_V on V(2n+1), n <= {gamma_n}"), || {
        for n in 0..=gamma_n {
            for m in v.normal_monomials(n) {
                let e = OperadElement::from(m);
                if cyclic_transport(&e, &cyc)? != cyclic_transport(&e, &v)?.neg() {
                    return Ok(Some(json!(e.to_string())));
                }
            }
        }
        Ok(None)
    });
    ctx.run("γ(w_n) = (-1)^n w_n, n <= 5", || {
        let mut comb = Monomial::unit();
        for n in 1..=5 {
            comb = Monomial::node([comb, Monomial::Leaf, Monomial::Leaf]);
            let e = OperadElement::from(comb.clone());
            let img = cyclic_transport(&e, &OperadConfig::w())?;
            let want = if n % 2 == 0 { e.clone() } else { e.neg() };
            if img != want {
                return Ok(Some(json!({"n": n, "image": img.to_string()})));
            }
        }
        Ok(None)
    });
}

pub(super) fn psi_intertwines(ctx: &mut Ctx) {
    let v = OperadConfig::v();
    for n in 0..=ctx.max_n(4) {
        ctx.run(format!("ψ∘θ_V = θ∘ψ on V({})", 2 * n + 1), || {
            for m in v.normal_monomials(n) {
                let e = OperadElement::from(m);
                let lhs = psi(&cyclic_transport(&e, &v)?)?;
                let rhs = apply_theta(&psi(&e)?)?;
                if lhs != rhs {
                    return Ok(Some(json!({
                        "monomial": e.to_string(),
                        "psi_theta_v": lhs.to_json(),
                        "theta_psi": rhs.to_json(),
                    })));
                }
            }
            Ok(None)
        });
    }
}
