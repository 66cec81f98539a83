use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::json;

use super::{expect, Ctx};
use crate::symfun::sequences::{b_seq, catalan, divisors, lambda_seq, sign_pow};
use crate::symfun::{
    b_function, ch_v, ch_w, ch_w_by_induction, induce_cyclic, induce_cyclic_by_orbits, involution_square_check,
    legendre_transform, series_identity_check, ClassFunction, SymFun,
};

fn random_class_function<R: Rng>(rng: &mut R, order: usize) -> ClassFunction {
    let values: Vec<BigRational> = (0..order)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=5))))
        .collect();
    ClassFunction::from_fn(order, |i| values[i].clone())
}

pub(super) fn legendre(ctx: &mut Ctx) {
    let n = ctx.degree(12);
    let inner = ctx.degree(10);
    ctx.run(format!("-Σ Ch_W = B, degree <= {n}"), || {
        let (lhs, rhs) = (ch_w(n)?.suspend().neg(), b_function(n)?);
        Ok(expect(lhs == rhs, || json!({"suspended": lhs.to_json(), "b": rhs.to_json()})))
    });
    ctx.run(format!("Legendre transform of -Σ Ch_W is Ch_V, degree <= {n}"), || {
        let a = legendre_transform(&ch_w(n)?.suspend().neg())?;
        let v = ch_v(n)?;
        Ok(expect(a == v, || json!({"legendre": a.to_json(), "ch_v": v.to_json()})))
    });
    ctx.run(format!("Legendre transform is an involution, degree <= {inner}"), || {
        let b = b_function(inner)?;
        let back = legendre_transform(&legendre_transform(&b)?)?;
        Ok(expect(back == b, || json!({"b": b.to_json(), "twice": back.to_json()})))
    });
    ctx.run(format!("∂A ∘ ∂B = p_1, degree <= {inner}"), || {
        // one extra degree so the derivatives are known through `inner`
        let b = b_function(inner + 1)?;
        let a = legendre_transform(&b)?;
        let comp = a.derivative_p1().plethysm(&b.derivative_p1())?;
        let want = SymFun::p(1, comp.truncation());
        Ok(expect(comp.truncation() >= inner && comp == want, || comp.to_json()))
    });
    ctx.run(format!("∂B = p_1/(1 - p_1^2), degree <= {}", n - 1), || {
        let db = b_function(n)?.derivative_p1();
        let want = SymFun::p(1, n - 1).mul(&SymFun::p_lambda(&[1, 1], n - 1).geometric());
        Ok(expect(db == want, || db.to_json()))
    });
    ctx.run(
        format!("∂Ch_V = Σ (-1)^(n-1) c_(n-1) p_1^(2n-1) and p_1 ∂Ch_V is its first summand, degree <= {n}"),
        || {
            let a = ch_v(n)?;
            let mut first = SymFun::zero(n);
            for k in 1..=(n / 2) as u64 {
                let c = BigRational::from_integer(catalan(k - 1) * sign_pow(k as i64 - 1));
                first = first.add(&SymFun::p_lambda(&vec![1; 2 * k as usize], n).scale(&c));
            }
            let da = a.derivative_p1();
            let ok = da.times_p1() == first && da.p1_part() == da;
            Ok(expect(ok, || json!({"derivative": da.to_json(), "first_summand": first.to_json()})))
        },
    );
}

pub(super) fn chw_induction(ctx: &mut Ctx) {
    let n = ctx.degree(10);
    ctx.run(format!("Σ Ind((-1)^(n-1)) = Ch_W, degree <= {n}"), || {
        let (a, b) = (ch_w_by_induction(n)?, ch_w(n)?);
        Ok(expect(a == b, || json!({"induced": a.to_json(), "closed": b.to_json()})))
    });
    let samples = ctx.samples(20);
    let mut rng = ctx.rng("induction");
    ctx.run(format!("induction is linear and matches the orbit average, orders <= {n}"), || {
        for order in 1..=n {
            for _ in 0..samples {
                let (x, y) = (random_class_function(&mut rng, order), random_class_function(&mut rng, order));
                let k = BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=3)));
                let lhs = induce_cyclic(&x.scale(&k).add(&y)?);
                let rhs = induce_cyclic(&x).scale(&k).add(&induce_cyclic(&y));
                if lhs != rhs || induce_cyclic(&x) != induce_cyclic_by_orbits(&x) {
                    return Ok(Some(json!({"order": order})));
                }
            }
        }
        Ok(None)
    });
}

pub(super) fn involution_square(ctx: &mut Ctx) {
    let max_order = ctx.degree(10);
    let samples = ctx.samples(20);
    ctx.run("trivial character of Z/2", || {
        Ok(expect(involution_square_check(&ClassFunction::trivial(2))?, || json!(null)))
    });
    let mut rng = ctx.rng("random");
    for order in (2..=max_order).step_by(2) {
        ctx.run(format!("ω∘Ind = Ind∘α on Z/{order}, {samples} class functions"), || {
            for _ in 0..samples {
                let chi = random_class_function(&mut rng, order);
                if !involution_square_check(&chi)? || chi.twist().twist() != chi {
                    let values: Vec<String> = chi.values().iter().map(ToString::to_string).collect();
                    return Ok(Some(json!({"values": values})));
                }
            }
            Ok(None)
        });
    }
}

pub(super) fn series_identity(ctx: &mut Ctx) {
    let degree = ctx.degree(24);
    for j in 1..=6 {
        ctx.run(format!("series identity for j = {j}, degree <= {degree}"), || {
            Ok(expect(series_identity_check(j, degree)?, || json!({"j": j})))
        });
    }
    ctx.run("Σ_(d|n) d b_d = λ(n), n <= 24", || {
        for n in 1..=24u64 {
            let mut total = BigInt::from(0);
            for d in divisors(n) {
                total += b_seq(d)? * d;
            }
            if total != lambda_seq(n) {
                return Ok(Some(json!({"n": n, "sum": total.to_string()})));
            }
        }
        Ok(None)
    });
    ctx.run("b_n is an integer, n <= 48", || {
        for n in 1..=48u64 {
            b_seq(n)?;
        }
        Ok(None)
    });
}
