//! Acceptance gate: eleven criteria, one status line each.
//!
//! Every criterion runs the library's verification suites and, next to them,
//! oracles written here from hand computations.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use vtamari::exactalg::{closed_charpoly, presubstitution_charpoly, IntMatrix, IntPolynomial};
use vtamari::grothendieck::{star, theta_matrix, Basis, K0Vector};
use vtamari::operad::{critical_pair_check, cyclic_transport, Monomial, OperadConfig, OperadElement};
use vtamari::symfun::sequences::{b_seq, lambda_seq};
use vtamari::symfun::{ch_v, ch_w, SymFun};
use vtamari::trees::BinaryTree;
use vtamari::verify::{run_verify, Suite, VerifyOptions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suites(list: &[Suite]) -> Outcome {
    let opts = VerifyOptions::default();
    for &s in list {
        let report = run_verify(s, &opts).map_err(|e| format!("{s}: {e}"))?;
        let first = report.failures().next().map(|f| format!("{s}: {} {}", f.name, f.to_json()));
        if let Some(why) = first {
            return Err(why);
        }
    }
    Ok(())
}

fn ensure(ok: bool, what: &str) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn elem(terms: &[(&str, i64)]) -> OperadElement {
    let first: Monomial = terms[0].0.parse().unwrap();
    let mut e = OperadElement::zero(first.arity());
    for (s, c) in terms {
        e.add_term(s.parse().unwrap(), BigInt::from(*c)).unwrap();
    }
    e
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn middle_free(t: &Monomial) -> bool {
    match t.children() {
        None => true,
        Some(c) => c[1].is_leaf() && c.iter().all(middle_free),
    }
}

fn dimension() -> Outcome {
    let expected = [1usize, 1, 2, 5, 14, 42, 132];
    for (n, &want) in expected.iter().enumerate() {
        let count = Monomial::all(n).iter().filter(|t| middle_free(t)).count();
        ensure(count == want, &format!("{count} normal monomials for n = {n}"))?;
    }
    suites(&[Suite::Dimension])
}

fn groebner() -> Outcome {
    let r = critical_pair_check().map_err(|e| e.to_string())?;
    let want = elem(&[("m[m[*,*,m[*,*,*]],*,*]", 1), ("m[*,*,m[m[*,*,*],*,*]]", 1)]);
    ensure(r.left == want && r.right == want, "critical pair value")?;
    ensure(r.left_trace.len() == 1 && r.right_trace.len() == 7, "trace lengths")?;
    let v = OperadConfig::v();
    let m2 = elem(&[("m[*,m[*,*,*],*]", 1)]);
    ensure(v.normal_form(&m2) == elem(&[("m[m[*,*,*],*,*]", 1), ("m[*,*,m[*,*,*]]", 1)]), "m∘2m")?;
    suites(&[Suite::GroebnerConfluence])
}

fn axioms() -> Outcome {
    let g = OperadElement::generator();
    for (config, sign) in [(OperadConfig::v(), -1), (OperadConfig::w(), 1)] {
        let l = config.compose(&config.compose(&g, 1, &g).unwrap(), 4, &g).unwrap();
        let r = config.compose(&config.compose(&g, 2, &g).unwrap(), 1, &g).unwrap();
        ensure(l == r.scale(&BigInt::from(sign)), &format!("(m∘1m)∘4m in {}", config.name()))?;
    }
    ensure(cyclic_transport(&g, &OperadConfig::v()).unwrap() == g.neg(), "θ_V(m) = -m")?;
    suites(&[Suite::OperadAxioms])
}

fn psi_intertwines() -> Outcome {
    // V(5) has basis Q_((..).) = -m∘1m and Q_(.(..)) = m∘3m
    let v = OperadConfig::v();
    let a = elem(&[("m[m[*,*,*],*,*]", 1)]);
    let b = elem(&[("m[*,*,m[*,*,*]]", 1)]);
    let ta = cyclic_transport(&a, &v).unwrap();
    let tb = cyclic_transport(&b, &v).unwrap();
    // θ(P_lc) = -P_rc, θ(P_rc) = P_lc - P_rc, with Q_lc = -a, Q_rc = b
    ensure(ta == b, "θ_V(m∘1m)")?;
    ensure(tb == a.neg().sub(&b).unwrap(), "θ_V(m∘3m)")?;
    suites(&[Suite::TheoIdem])
}

fn theta_characterization() -> Outcome {
    let m = theta_matrix(2).map_err(|e| e.to_string())?;
    ensure(m == IntMatrix::from_rows(&[vec![0, 1], vec![-1, -1]]).unwrap(), "θ on Y_2")?;
    ensure(theta_matrix(1).unwrap() == IntMatrix::from_rows(&[vec![-1]]).unwrap(), "θ on Y_1")?;
    suites(&[Suite::ThetaCharacterization])
}

fn periodicity() -> Outcome {
    for n in 1..=3 {
        let m = theta_matrix(n).unwrap();
        let mut p = IntMatrix::identity(m.rows());
        for _ in 0..2 * n + 2 {
            p = p.mul(&m).unwrap();
        }
        ensure(p == IntMatrix::identity(m.rows()), &format!("θ^{} on Y_{n}", 2 * n + 2))?;
    }
    suites(&[Suite::Periodicity])
}

/// Fraction-free Gaussian elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != BigInt::from(0)) else {
            return BigInt::from(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn charpoly() -> Outcome {
    ensure(closed_charpoly(1).unwrap() == IntPolynomial::from_i64(&[1, 1]), "x+1")?;
    ensure(closed_charpoly(2).unwrap() == IntPolynomial::from_i64(&[1, 1, 1]), "x^2+x+1")?;
    // det(kI - θ) by elimination against the closed form at a few points
    for n in 1..=4 {
        let m = theta_matrix(n).unwrap();
        let closed = closed_charpoly(n).unwrap();
        for k in [-2i64, 0, 3] {
            let a: Vec<Vec<BigInt>> = (0..m.rows())
                .map(|i| (0..m.rows()).map(|j| -m.get(i, j) + if i == j { k } else { 0 }).collect())
                .collect();
            ensure(bareiss(a) == closed.eval(&BigInt::from(k)), &format!("n = {n}, x = {k}"))?;
        }
    }
    suites(&[Suite::Charpoly])
}

fn products() -> Outcome {
    let dot = K0Vector::basis_vector(&BinaryTree::one(), Basis::S);
    let mut want = K0Vector::zero(2, Basis::S);
    for s in ["((..).)", "(.(..))"] {
        want = want.add(&K0Vector::basis_vector(&s.parse().unwrap(), Basis::S)).unwrap();
    }
    ensure(star(&dot, &dot).unwrap() == want, "S_• * S_•")?;
    suites(&[Suite::ProductDescriptions, Suite::DendriformLemma])
}

fn legendre() -> Outcome {
    let half = q(1, 2);
    let two = SymFun::p_lambda(&[1, 1], 12).add(&SymFun::p(2, 12)).scale(&half);
    ensure(ch_v(12).unwrap().degree_part(2) == two, "degree 2 of Ch_V")?;
    suites(&[Suite::Legendre])
}

fn series_of_w() -> Outcome {
    let w = ch_w(10).unwrap();
    let four = SymFun::p_lambda(&[1, 1, 1, 1], 10)
        .add(&SymFun::p_lambda(&[2, 2], 10))
        .sub(&SymFun::p(4, 10).scale(&q(2, 1)))
        .scale(&q(1, 4));
    ensure(w.degree_part(4) == four, "degree 4 of Ch_W")?;
    let lambdas: Vec<BigInt> = [1, 2, 3, 4, 6].iter().map(|&n| lambda_seq(n)).collect();
    ensure(lambdas == [1, -1, -2, 3, -10].map(BigInt::from), "λ values")?;
    let bs: Vec<BigInt> = [1, 2, 3, 4, 6].iter().map(|&n| b_seq(n).unwrap()).collect();
    ensure(bs == [1, -1, -1, 1, -1].map(BigInt::from), "b values")?;
    suites(&[Suite::ChwInduction, Suite::InvolutionSquare, Suite::SeriesIdentity])
}

fn virtual_module() -> Outcome {
    ensure(presubstitution_charpoly(1).unwrap() == IntPolynomial::from_i64(&[1, 1]), "n = 1")?;
    ensure(presubstitution_charpoly(2).unwrap() == IntPolynomial::from_i64(&[1, -1, 1]), "n = 2")?;
    suites(&[Suite::SommeDeM])
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("dimension of V(2n+1), n <= 6", dimension),
        ("Gröbner basis and confluence", groebner),
        ("operad and anticyclic axioms", axioms),
        ("ψ intertwines θ_V and θ, n <= 4", psi_intertwines),
        ("recursive characterization of θ, n <= 6", theta_characterization),
        ("θ^(2n+2) = id, n <= 7", periodicity),
        ("characteristic polynomial closed form, n <= 7", charpoly),
        ("product descriptions and dendriform lemma", products),
        ("Legendre duality of Ch_V and Ch_W", legendre),
        ("Ch_W by induction, involution square, series identity", series_of_w),
        ("virtual module polynomial, n <= 7", virtual_module),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2} s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name} ({secs:.2} s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
