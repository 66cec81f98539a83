use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::json;

use super::{expect, Ctx};
use crate::error::Result;
use crate::exactalg::{
    charpoly as char_poly, closed_charpoly, closed_charpoly_by_substitution, presubstitution_charpoly,
    quotient_of_factors, IntMatrix, IntPolynomial,
};
use crate::grothendieck::{
    apply_theta, over, product, star, star_interval, star_shuffle, theta_matrix, theta_recursive, under, Basis,
    K0Vector, Product,
};
use crate::symfun::sequences::{b_seq, catalan, divisors, sign_pow};
use crate::symfun::{ch_v, induce_cyclic, virtual_module_char, ClassFunction};
use crate::trees::BinaryTree;

fn same(a: &K0Vector, b: &K0Vector) -> Result<bool> {
    Ok(a.to_basis(Basis::S)? == b.to_basis(Basis::S)?)
}

fn random_vector<R: Rng>(rng: &mut R, n: usize, basis: Basis) -> Result<K0Vector> {
    let trees = BinaryTree::enumerate(n);
    let mut v = K0Vector::zero(n, basis);
    for _ in 0..rng.gen_range(1..=3) {
        let x = &trees[rng.gen_range(0..trees.len())];
        let c = BigInt::from(rng.gen_range(-4..=4));
        v = v.add(&K0Vector::basis_vector(x, basis).scale(&c))?;
    }
    Ok(v)
}

fn pairs(max_total: usize) -> Vec<(BinaryTree, BinaryTree)> {
    let mut out = Vec::new();
    for p in 0..=max_total {
        for q in 0..=max_total - p {
            for x in BinaryTree::enumerate(p) {
                for y in BinaryTree::enumerate(q) {
                    out.push((x.clone(), y));
                }
            }
        }
    }
    out
}

fn pair_witness(x: &BinaryTree, y: &BinaryTree) -> serde_json::Value {
    json!({"x": x.to_string(), "y": y.to_string()})
}

pub(super) fn theta_characterization(ctx: &mut Ctx) {
    ctx.run("θ on Y_2 is [[0,1],[-1,-1]]", || {
        let m = theta_matrix(2)?;
        let want = IntMatrix::from_rows(&[vec![0, 1], vec![-1, -1]])?;
        Ok(expect(m == want, || m.to_json()))
    });
    for n in 0..=ctx.max_n(6) {
        ctx.run(format!("recursive characterization reproduces θ on Y_{n}"), || {
            let (a, b) = (theta_recursive(n)?, theta_matrix(n)?);
            Ok(expect(a == b, || json!({"recursive": a.to_json(), "direct": b.to_json()})))
        });
    }
    let samples = ctx.samples(20);
    let max_grade = ctx.max_n(4).min(4);
    let mut rng = ctx.rng("star");
    ctx.run(format!("θ(a*b) = -θ(a)\\θ(b), grades <= {max_grade}, {samples} samples"), || {
        for _ in 0..samples {
            let (ga, gb) = (rng.gen_range(0..=max_grade), rng.gen_range(0..=max_grade));
            let a = random_vector(&mut rng, ga, Basis::P)?;
            let b = random_vector(&mut rng, gb, Basis::P)?;
            let lhs = apply_theta(&star(&a, &b)?)?;
            let rhs = under(&apply_theta(&a)?, &apply_theta(&b)?)?.neg();
            if !same(&lhs, &rhs)? {
                return Ok(Some(json!({"a": a.to_json(), "b": b.to_json()})));
            }
        }
        Ok(None)
    });
}

pub(super) fn periodicity(ctx: &mut Ctx) {
    for n in 1..=ctx.max_n(7) {
        ctx.run(format!("θ^{} = id on Y_{n}", 2 * n + 2), || {
            let m = theta_matrix(n)?;
            let p = m.pow(2 * n as u64 + 2)?;
            Ok(expect(p == IntMatrix::identity(m.rows()), || json!({"n": n})))
        });
    }
}

pub(super) fn charpoly(ctx: &mut Ctx) {
    ctx.run("closed form spot values x+1 and x^2+x+1", || {
        let (a, b) = (closed_charpoly(1)?, closed_charpoly(2)?);
        Ok(expect(
            a == IntPolynomial::from_i64(&[1, 1]) && b == IntPolynomial::from_i64(&[1, 1, 1]),
            || json!({"n1": a.to_json(), "n2": b.to_json()}),
        ))
    });
    for n in 1..=ctx.max_n(7) {
        ctx.run_detailed(format!("charpoly of θ on Y_{n} matches the closed form"), || {
            let direct = char_poly(&theta_matrix(n)?)?;
            let closed = closed_charpoly(n)?;
            let constant = closed.coeff(0);
            let ok = direct == closed
                && closed.degree() == Some(crate::trees::catalan(n))
                && (constant == BigInt::from(1) || constant == BigInt::from(-1));
            Ok((ok, json!({"direct": direct.to_json(), "closed": closed.to_json()})))
        });
    }
}

pub(super) fn products(ctx: &mut Ctx) {
    let max_total = ctx.max_n(6);
    let all = pairs(max_total);
    ctx.run(format!("interval and shuffle descriptions of * agree, total size <= {max_total}"), || {
        for (x, y) in &all {
            if star_interval(x, y)? != star_shuffle(x, y)? {
                return Ok(Some(pair_witness(x, y)));
            }
        }
        Ok(None)
    });
    ctx.run(format!("P_x * P_y = P_(x\\y) and P_x ∕ P_y = P_(x∕y), total size <= {max_total}"), || {
        for (x, y) in &all {
            let (px, py) = (K0Vector::basis_vector(x, Basis::P), K0Vector::basis_vector(y, Basis::P));
            let ok = same(&star(&px, &py)?, &K0Vector::basis_vector(&x.graft_under(y), Basis::P))?
                && same(&over(&px, &py)?, &K0Vector::basis_vector(&x.graft_over(y), Basis::P))?;
            if !ok {
                return Ok(Some(pair_witness(x, y)));
            }
        }
        Ok(None)
    });
    ctx.run(format!("I_x * I_y = I_(x∕y) and I_x \\ I_y = I_(x\\y), total size <= {max_total}"), || {
        for (x, y) in &all {
            let (ix, iy) = (K0Vector::basis_vector(x, Basis::I), K0Vector::basis_vector(y, Basis::I));
            let ok = same(&star(&ix, &iy)?, &K0Vector::basis_vector(&x.graft_over(y), Basis::I))?
                && same(&under(&ix, &iy)?, &K0Vector::basis_vector(&x.graft_under(y), Basis::I))?;
            if !ok {
                return Ok(Some(pair_witness(x, y)));
            }
        }
        Ok(None)
    });
    let samples = ctx.samples(30);
    let mut rng = ctx.rng("beyond");
    let beyond = max_total + 2;
    ctx.run(format!("* and P descriptions on random pairs of total size {}..={beyond}", max_total + 1), || {
        for _ in 0..samples {
            let total = rng.gen_range(max_total + 1..=beyond);
            let p = rng.gen_range(0..=total);
            let xs = BinaryTree::enumerate(p);
            let ys = BinaryTree::enumerate(total - p);
            let x = &xs[rng.gen_range(0..xs.len())];
            let y = &ys[rng.gen_range(0..ys.len())];
            let px = K0Vector::basis_vector(x, Basis::P);
            let py = K0Vector::basis_vector(y, Basis::P);
            let ok = star_interval(x, y)? == star_shuffle(x, y)?
                && same(&star(&px, &py)?, &K0Vector::basis_vector(&x.graft_under(y), Basis::P))?;
            if !ok {
                return Ok(Some(pair_witness(x, y)));
            }
        }
        Ok(None)
    });
    let mut rng = ctx.rng("associativity");
    ctx.run(format!("associativity of *, ∕, \\ and (a∕b)*c = a∕(b*c), {samples} triples"), || {
        for _ in 0..samples {
            let ga = rng.gen_range(0..=max_total);
            let gb = rng.gen_range(0..=max_total - ga);
            let gc = rng.gen_range(0..=max_total - ga - gb);
            let a = random_vector(&mut rng, ga, Basis::S)?;
            let b = random_vector(&mut rng, gb, Basis::P)?;
            let c = random_vector(&mut rng, gc, Basis::I)?;
            for op in [Product::Star, Product::Over, Product::Under] {
                let l = product(op, &product(op, &a, &b)?, &c)?;
                let r = product(op, &a, &product(op, &b, &c)?)?;
                if l != r {
                    return Ok(Some(
                        json!({"op": format!("{op:?}"), "a": a.to_json(), "b": b.to_json(), "c": c.to_json()}),
                    ));
                }
            }
            // with b of grade 0 the two sides are a*c and a∕c
            if gb > 0 && star(&over(&a, &b)?, &c)? != over(&a, &star(&b, &c)?)? {
                return Ok(Some(json!({"op": "compatibility", "a": a.to_json(), "b": b.to_json(), "c": c.to_json()})));
            }
        }
        Ok(None)
    });
}

pub(super) fn dendriform(ctx: &mut Ctx) {
    let samples = ctx.samples(20);
    let max_grade = ctx.max_n(4).min(4);
    let mut rng = ctx.rng("lemma");
    ctx.run(
        format!("(P•\\a)*(P•\\b) = P•\\(a*(P•\\b)) + (P•\\a)∕(P•\\b), grades <= {max_grade}"),
        || {
            let dot = K0Vector::basis_vector(&BinaryTree::one(), Basis::P);
            for _ in 0..samples {
                let (ga, gb) = (rng.gen_range(0..=max_grade), rng.gen_range(0..=max_grade));
                let a = random_vector(&mut rng, ga, Basis::P)?;
                let b = random_vector(&mut rng, gb, Basis::P)?;
                let da = under(&dot, &a)?;
                let db = under(&dot, &b)?;
                let lhs = star(&da, &db)?;
                let rhs = under(&dot, &star(&a, &db)?)?.add(&over(&da, &db)?)?;
                if !same(&lhs, &rhs)? {
                    return Ok(Some(json!({"a": a.to_json(), "b": b.to_json()})));
                }
            }
            Ok(None)
        },
    );
}

/// `(x^d - 1)` factors of the virtual module `c_n M_{m,m} - (-1)^{n+1} Σ b_d M_{m,d}`.
fn virtual_module_factors(n: usize) -> Result<Vec<(IntPolynomial, i64)>> {
    use num_traits::ToPrimitive;
    let m = 2 * n as u64 + 2;
    let outer = sign_pow(n as i64 + 1);
    let small = |v: BigInt| v.to_i64().ok_or_else(|| crate::Error::ResourceLimit(format!("exponent {v} too large")));
    let mut out = vec![(IntPolynomial::binomial(m as usize, BigInt::from(1)), small(catalan(n as u64))?)];
    for d in divisors(m) {
        out.push((IntPolynomial::binomial(d as usize, BigInt::from(1)), -outer * small(b_seq(d)?)?));
    }
    Ok(out)
}

pub(super) fn virtual_module(ctx: &mut Ctx) {
    let max_n = ctx.max_n(7);
    for n in 1..=max_n {
        ctx.run(format!("virtual module polynomial on Y_{n}"), || {
            let virt = quotient_of_factors(&virtual_module_factors(n)?)?;
            let pre = presubstitution_charpoly(n)?;
            let signed = theta_matrix(n)?;
            let signed = if n % 2 == 0 { signed.neg() } else { signed };
            let direct = char_poly(&signed)?;
            let subst = closed_charpoly_by_substitution(n)?;
            let ok = virt == pre && direct == pre && subst == closed_charpoly(n)?;
            Ok(expect(
                ok,
                || json!({"virtual": virt.to_json(), "presubstitution": pre.to_json(), "direct": direct.to_json()}),
            ))
        });
    }
    let sym_n = max_n.min(5);
    ctx.run(format!("ω^n((-1)^n [Ch_V]_(2n+2)) is the virtual module character, n <= {sym_n}"), || {
        let chv = ch_v(2 * sym_n + 2)?;
        for n in 0..=sym_n {
            let m = 2 * n + 2;
            let lhs = chv.degree_part(m).scale(&BigRational::from_integer(sign_pow(n as i64).into())).omega_pow(n);
            let rhs = virtual_module_char(n as u64)?;
            if lhs.truncate(m) != rhs {
                return Ok(Some(json!({"n": n, "lhs": lhs.to_json(), "rhs": rhs.to_json()})));
            }
        }
        Ok(None)
    });
    ctx.run(format!("traces of ((-1)^(n+1) θ)^i induce the virtual module character, 1 <= n <= {sym_n}"), || {
        for n in 1..=sym_n {
            let m = 2 * n + 2;
            let th = theta_matrix(n)?;
            let g = if n % 2 == 0 { th.neg() } else { th };
            let mut power = IntMatrix::identity(g.rows());
            let mut values = Vec::with_capacity(m);
            for _ in 0..m {
                values.push(BigRational::from_integer(power.trace()));
                power = power.mul(&g)?;
            }
            let lhs = induce_cyclic(&ClassFunction::new(values)?);
            let rhs = virtual_module_char(n as u64)?;
            if lhs != rhs {
                return Ok(Some(json!({"n": n, "induced": lhs.to_json(), "virtual": rhs.to_json()})));
            }
        }
        Ok(None)
    });
}
