use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vtamari::exactalg::{charpoly, IntMatrix, IntPolynomial};
use vtamari::grothendieck::{apply_theta, over, product, star, under, Basis, K0Vector, Product};
use vtamari::operad::{cyclic_transport_pow, transport_free, Monomial, OperadConfig, OperadElement, TransportKind};
use vtamari::symfun::{induce_cyclic, involution_square_check, legendre_transform, ClassFunction, SymFun};
use vtamari::trees::{catalan, BinaryTree};

fn tree(max: usize) -> impl Strategy<Value = BinaryTree> {
    (0..=max).prop_flat_map(|n| (0..catalan(n)).prop_map(move |r| BinaryTree::unrank(n, r).unwrap()))
}

/// Built by grafting generators at the chosen leaves.
fn monomial(max_vertices: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(any::<usize>(), 0..=max_vertices).prop_map(|picks| {
        let mut t = Monomial::unit();
        for p in picks {
            let i = p % t.arity() + 1;
            t = t.graft(i, &Monomial::generator()).unwrap().0;
        }
        t
    })
}

fn element(vertices: usize) -> impl Strategy<Value = OperadElement> {
    let m = prop::collection::vec(any::<usize>(), vertices..=vertices).prop_map(|picks| {
        let mut t = Monomial::unit();
        for p in picks {
            let i = p % t.arity() + 1;
            t = t.graft(i, &Monomial::generator()).unwrap().0;
        }
        t
    });
    prop::collection::vec((m, -3i64..=3), 1..5).prop_map(move |terms| {
        let mut e = OperadElement::zero(2 * vertices + 1);
        for (t, c) in terms {
            e.add_term(t, BigInt::from(c)).unwrap();
        }
        e
    })
}

fn vector(n: usize, basis: Basis) -> impl Strategy<Value = K0Vector> {
    prop::collection::vec(-3i64..=3, catalan(n))
        .prop_map(move |c| K0Vector::from_coords(n, basis, c.into_iter().map(BigInt::from).collect()).unwrap())
}

fn graded(max: usize) -> impl Strategy<Value = K0Vector> {
    (0..=max, prop_oneof![Just(Basis::S), Just(Basis::P), Just(Basis::I)]).prop_flat_map(|(n, b)| vector(n, b))
}

fn config() -> impl Strategy<Value = OperadConfig> {
    prop_oneof![Just(OperadConfig::v()), Just(OperadConfig::v_cyclic()), Just(OperadConfig::w())]
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

/// A symmetric function of degree between 1 and 4 with no constant term.
fn symfun(n: usize) -> impl Strategy<Value = SymFun> {
    let parts = prop_oneof![
        Just(vec![1]),
        Just(vec![2]),
        Just(vec![1, 1]),
        Just(vec![3]),
        Just(vec![2, 1]),
        Just(vec![1, 1, 1]),
        Just(vec![2, 2]),
        Just(vec![4]),
    ];
    prop::collection::vec((parts, rational()), 1..5).prop_map(move |terms| {
        let mut f = SymFun::zero(n);
        for (p, c) in terms {
            f = f.add(&SymFun::p_lambda(&p, n).scale(&c));
        }
        f
    })
}

fn sign(config: &OperadConfig, a: usize, b: usize) -> BigInt {
    BigInt::from(if config.weight(a) * config.weight(b) % 2 == 1 { -1 } else { 1 })
}

fn cofactor_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
    if m.is_empty() {
        return IntPolynomial::one();
    }
    let mut total = IntPolynomial::zero();
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<IntPolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = entry * &cofactor_det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_roundtrip(x in tree(8)) {
        prop_assert_eq!(BinaryTree::unrank(x.size(), x.rank()).unwrap(), x);
    }

    #[test]
    fn grafting_sizes_and_mixed_law(x in tree(4), y in tree(4), z in tree(4)) {
        prop_assert_eq!(x.graft_over(&y).size(), x.size() + y.size());
        prop_assert_eq!(x.graft_under(&y).size(), x.size() + y.size());
        if !y.is_leaf() {
            prop_assert_eq!(x.graft_over(&y).graft_under(&z), x.graft_over(&y.graft_under(&z)));
        }
    }

    #[test]
    fn base_change_round_trips(v in graded(6), to in prop_oneof![Just(Basis::S), Just(Basis::P), Just(Basis::I)]) {
        let w = v.to_basis(to).unwrap();
        prop_assert_eq!(w.to_basis(v.basis()).unwrap(), v.clone());
        prop_assert_eq!(K0Vector::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn products_associate(a in graded(2), b in graded(2), c in graded(2)) {
        for op in [Product::Star, Product::Over, Product::Under] {
            let l = product(op, &product(op, &a, &b).unwrap(), &c).unwrap();
            let r = product(op, &a, &product(op, &b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn theta_turns_star_into_under(a in graded(3), b in graded(3)) {
        let lhs = apply_theta(&star(&a, &b).unwrap()).unwrap();
        let rhs = under(&apply_theta(&a).unwrap(), &apply_theta(&b).unwrap()).unwrap().neg();
        prop_assert_eq!(lhs.to_basis(Basis::S).unwrap(), rhs.to_basis(Basis::S).unwrap());
    }

    #[test]
    fn theta_turns_over_into_star(a in graded(3), b in graded(3)) {
        prop_assume!(a.n() > 0 && b.n() > 0);
        let lhs = apply_theta(&over(&a, &b).unwrap()).unwrap();
        let rhs = star(&apply_theta(&a).unwrap(), &apply_theta(&b).unwrap()).unwrap().neg();
        prop_assert_eq!(lhs.to_basis(Basis::S).unwrap(), rhs.to_basis(Basis::S).unwrap());
    }

    #[test]
    fn sequential_axiom(cfg in config(), a in monomial(2), b in monomial(2), c in monomial(2), i in any::<usize>(), j in any::<usize>()) {
        let (a, b, c) = (OperadElement::from(a), OperadElement::from(b), OperadElement::from(c));
        let i = i % a.arity() + 1;
        let j = j % b.arity() + 1;
        let l = cfg.compose(&cfg.compose(&a, i, &b).unwrap(), j + i - 1, &c).unwrap();
        let r = cfg.compose(&a, i, &cfg.compose(&b, j, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn parallel_axiom(cfg in config(), a in monomial(2), b in monomial(2), c in monomial(2), i in any::<usize>(), j in any::<usize>()) {
        let (a, b, c) = (OperadElement::from(a), OperadElement::from(b), OperadElement::from(c));
        prop_assume!(a.arity() >= 3);
        let i = i % (a.arity() - 1) + 1;
        let j = i + 1 + j % (a.arity() - i);
        let l = cfg.compose(&cfg.compose(&a, i, &b).unwrap(), j + b.arity() - 1, &c).unwrap();
        let r = cfg.compose(&cfg.compose(&a, j, &c).unwrap(), i, &b).unwrap().scale(&sign(&cfg, b.vertices(), c.vertices()));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn transport_axioms(cfg in config(), a in monomial(3), b in monomial(3), i in any::<usize>()) {
        let (a, b) = (OperadElement::from(a), OperadElement::from(b));
        let i = i % a.arity() + 1;
        let th = |e: &OperadElement| transport_free(e, &cfg, &mut HashMap::new()).unwrap();
        let lhs = th(&cfg.compose(&a, i, &b).unwrap());
        let rhs = if i > 1 {
            cfg.compose(&th(&a), i - 1, &b).unwrap()
        } else {
            let mut k = sign(&cfg, a.vertices(), b.vertices());
            if cfg.transport() == TransportKind::Anticyclic {
                k = -k;
            }
            cfg.compose_max(&th(&b), &th(&a)).unwrap().scale(&k)
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_strategy_independent(e in element(4), seed in any::<u64>()) {
        for cfg in [OperadConfig::v(), OperadConfig::w()] {
            let (left, trace) = cfg.normal_form_traced(&e);
            let (right, rtrace) = cfg.normal_form_random(&e, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(&left, &right);
            prop_assert!(cfg.is_normal_element(&left));
            prop_assert_eq!(cfg.normal_form(&left), left.clone());
            prop_assert!(trace.iter().chain(&rtrace).all(|s| s.decreases()));
        }
    }

    #[test]
    fn transport_has_period_dividing_arity_plus_one(e in element(3)) {
        for cfg in [OperadConfig::v(), OperadConfig::w()] {
            let nf = cfg.normal_form(&e);
            prop_assert_eq!(cyclic_transport_pow(&nf, &cfg, 8).unwrap(), nf);
        }
    }

    #[test]
    fn charpoly_matches_cofactor_expansion(rows in (1usize..=5).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-9i64..=9, d), d))) {
        let d = rows.len();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let sym: Vec<Vec<IntPolynomial>> = (0..d)
            .map(|i| (0..d).map(|j| {
                let c = IntPolynomial::constant(BigInt::from(-rows[i][j]));
                if i == j { &c + &IntPolynomial::x() } else { c }
            }).collect())
            .collect();
        let p = charpoly(&m).unwrap();
        prop_assert_eq!(&p, &cofactor_det(&sym));
        prop_assert_eq!(p.coeff(d - 1), -m.trace());
    }

    #[test]
    fn polynomial_ring_axioms(a in prop::collection::vec(-5i64..=5, 0..5), b in prop::collection::vec(-5i64..=5, 0..5), c in prop::collection::vec(-5i64..=5, 0..5)) {
        let (a, b, c) = (IntPolynomial::from_i64(&a), IntPolynomial::from_i64(&b), IntPolynomial::from_i64(&c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn plethysm_associates(f in symfun(8), g in symfun(8), h in symfun(8)) {
        let l = f.plethysm(&g.plethysm(&h).unwrap()).unwrap();
        let r = f.plethysm(&g).unwrap().plethysm(&h).unwrap();
        let n = l.truncation().min(r.truncation());
        prop_assert_eq!(l.truncate(n), r.truncate(n));
    }

    #[test]
    fn power_sums_compose(k in 1u32..=4, l in 1u32..=4) {
        prop_assert_eq!(SymFun::p(k, 16).plethysm(&SymFun::p(l, 16)).unwrap(), SymFun::p(k * l, 16));
    }

    #[test]
    fn sign_twists_are_involutions(f in symfun(6), g in symfun(6)) {
        prop_assert_eq!(f.omega().omega(), f.clone());
        prop_assert_eq!(f.suspend().suspend(), f.clone());
        prop_assert_eq!(f.mul(&g).omega(), f.omega().mul(&g.omega()));
        prop_assert_eq!(SymFun::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn legendre_is_an_involution(c in rational(), rest in symfun(7)) {
        prop_assume!(c != BigRational::from_integer(0.into()));
        // shift `rest` up one degree so B has no terms of degree <= 1
        let b = SymFun::p_lambda(&[1, 1], 7).scale(&c).add(&rest.times_p1().truncate(7));
        prop_assume!(b.coeff(&[1, 1]) != BigRational::from_integer(0.into()));
        let a = legendre_transform(&b).unwrap();
        prop_assert_eq!(legendre_transform(&a).unwrap(), b);
    }

    #[test]
    fn induction_square(half in 1usize..=5, values in prop::collection::vec(rational(), 10)) {
        let chi = ClassFunction::from_fn(2 * half, |i| values[i].clone());
        prop_assert!(involution_square_check(&chi).unwrap());
        let doubled = chi.add(&chi).unwrap();
        prop_assert_eq!(induce_cyclic(&doubled), induce_cyclic(&chi).scale(&BigRational::from_integer(2.into())));
    }
}
