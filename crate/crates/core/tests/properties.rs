use std::sync::Arc;

use proptest::prelude::*;

use realize_core::algebra::{lie_poisson_bracket, poincare_spec};
use realize_core::expr::eval_rational;
use realize_core::geom::{exterior_derivative, interior, lie_bracket, lie_derivative};
use realize_core::sample::{random_expr, rng};
use realize_core::suites::charts::tr3_sampler;
use realize_core::suites::engine::{random_field, random_form};
use realize_core::{Chart, Expr, Q};

fn chart() -> Arc<Chart> {
    Chart::builder("TR3")
        .coords(&["x1", "x2", "x3", "xd1", "xd2", "xd3"])
        .tangent()
        .params(&["c", "u"])
        .extension("w", "1 - xd1^2 - xd2^2 - xd3^2")
        .build()
        .unwrap()
}

fn with_f() -> Arc<Chart> {
    Chart::builder("TR3f")
        .coords(&["x1", "x2", "xd1"])
        .extension("w", "1 - xd1^2")
        .function("f")
        .build()
        .unwrap()
}

fn r4() -> Arc<Chart> {
    Chart::builder("R4").coords(&["a", "b", "c", "e"]).build().unwrap()
}

fn pair(seed: u64, c: &Chart) -> (Expr, Expr) {
    let mut r = rng(seed);
    (random_expr(&mut r, c, 3), random_expr(&mut r, c, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let c = with_f();
        let (e, _) = pair(seed, &c);
        let once = c.parse(&e.to_string()).unwrap();
        let twice = c.parse(&once.to_string()).unwrap();
        prop_assert_eq!(&once, &e);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn normalize_respects_sum_and_product(seed in any::<u64>()) {
        let c = with_f();
        let (a, b) = pair(seed, &c);
        let sum = c.parse(&format!("({a}) + ({b})")).unwrap();
        let prod = c.parse(&format!("({a}) * ({b})")).unwrap();
        prop_assert_eq!(sum, &a + &b);
        prop_assert_eq!(prod, &a * &b);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(seed in any::<u64>()) {
        let c = chart();
        let (a, b) = pair(seed, &c);
        let mut r = rng(seed ^ 0xabc);
        let pt = loop {
            if let Some(p) = tr3_sampler()(&mut r) {
                break p;
            }
        };
        let (Ok(va), Ok(vb)) = (eval_rational(&a, &pt), eval_rational(&b, &pt)) else {
            return Ok(());
        };
        prop_assert_eq!(eval_rational(&(&a * &b), &pt).unwrap(), &va * &vb);
        prop_assert_eq!(eval_rational(&(&a + &b), &pt).unwrap(), va + vb);
    }

    #[test]
    fn product_rule(seed in any::<u64>(), i in 0usize..3) {
        let c = with_f();
        let (a, b) = pair(seed, &c);
        let x = c.coord(i);
        let lhs = (&a * &b).diff(x);
        let rhs = &(&a.diff(x) * &b) + &(&a * &b.diff(x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_degree_at_most_one(seed in any::<u64>()) {
        let c = chart();
        let (a, b) = pair(seed, &c);
        let e = &(&a * &b) * &a;
        let w = &c.extensions()[0];
        prop_assert!(e.numerator().degree_in(w) <= 1);
        prop_assert!(e.denominator().degree_in(w) <= 1);
    }

    #[test]
    fn lie_poisson_is_antisymmetric(u in prop::collection::vec(-5i64..5, 10), v in prop::collection::vec(-5i64..5, 10)) {
        let s = poincare_spec(&[1, -1, -1, -1]).unwrap();
        let q = |x: &Vec<i64>| x.iter().map(|n| Q::from_integer((*n).into())).collect::<Vec<Q>>();
        let uv = lie_poisson_bracket(&q(&u), &q(&v), &s).unwrap();
        let vu = lie_poisson_bracket(&q(&v), &q(&u), &s).unwrap();
        prop_assert!(uv.iter().zip(&vu).all(|(a, b)| *a == -b.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), k in 0usize..3) {
        let c = r4();
        let a = random_form(&c, k, &mut rng(seed));
        prop_assert!(exterior_derivative(&exterior_derivative(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cartan_formula(seed in any::<u64>(), k in 1usize..3) {
        let c = r4();
        let mut r = rng(seed);
        let x = random_field(&c, &mut r);
        let a = random_form(&c, k, &mut r);
        let lhs = lie_derivative(&x, &a).unwrap();
        let rhs = &interior(&x, &exterior_derivative(&a).unwrap()).unwrap()
            + &exterior_derivative(&interior(&x, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_bracket_jacobi(seed in any::<u64>()) {
        let c = r4();
        let mut r = rng(seed);
        let (x, y, z) = (random_field(&c, &mut r), random_field(&c, &mut r), random_field(&c, &mut r));
        let b = |p: &_, q: &_| lie_bracket(p, q).unwrap();
        let j = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
        prop_assert!(j.is_zero());
    }
}
