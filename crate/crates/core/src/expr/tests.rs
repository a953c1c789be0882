use std::sync::Arc;

use super::*;

fn tr3() -> Arc<Chart> {
    Chart::builder("TR3")
        .coords(&["x1", "x2", "x3", "xd1", "xd2", "xd3"])
        .tangent()
        .function("f")
        .build()
        .unwrap()
}

fn shell() -> Arc<Chart> {
    Chart::builder("shell")
        .coords(&["x0", "x1", "x2", "x3", "p1", "p2", "p3"])
        .params(&["m"])
        .extension("E", "m^2 + p1^2 + p2^2 + p3^2")
        .build()
        .unwrap()
}

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

#[test]
fn parse_sum_of_squares() {
    let c = tr3();
    let e = c.parse("xd1^2 + xd2^2").unwrap();
    assert_eq!(e.to_string(), "xd1^2 + xd2^2");
}

#[test]
fn parse_opaque_application() {
    let c = tr3();
    let e = c.parse("f(xd1^2+xd2^2+xd3^2)").unwrap();
    assert_eq!(e.atoms().len(), 1);
    assert!(e.atoms().iter().next().unwrap().is_apply());
}

#[test]
fn division_by_vanishing_expression_is_rejected() {
    let c = tr3();
    assert_eq!(c.parse("1/(x1 - x1)"), Err(Error::DivisionByZero));
}

#[test]
fn unknown_identifier() {
    assert_eq!(
        tr3().parse("y + 1"),
        Err(Error::UnknownIdentifier("y".into()))
    );
    assert!(matches!(tr3().parse("g(x1)"), Err(Error::UnknownIdentifier(_))));
}

#[test]
fn ring_identity_normalizes_to_zero() {
    let c = tr3();
    assert!(c.parse("(x1+1)^2 - x1^2 - 2*x1 - 1").unwrap().is_zero());
}

#[test]
fn radical_relation_reduces() {
    let c = Chart::builder("v")
        .coords(&["a", "b"])
        .extension("v", "a^2 - b^2")
        .build()
        .unwrap();
    assert_eq!(c.parse("v^2").unwrap(), c.parse("a^2 - b^2").unwrap());
    assert!(c.parse("v^2 - (a^2 - b^2)").unwrap().is_zero());
    // rationalized denominator
    let e = c.parse("1/v").unwrap();
    assert_eq!(e, c.parse("v/(a^2-b^2)").unwrap());
    assert!(e.denominator().atoms().iter().all(|a| !a.is_radical()));
}

#[test]
fn cube_of_energy_oracle() {
    // Polynomial remainder of E^3 by E^2 - (m^2 + |p|^2) is (m^2 + |p|^2) E.
    let c = shell();
    let lhs = c.parse("E^3").unwrap();
    let rhs = c.parse("(m^2 + p1^2 + p2^2 + p3^2)*E").unwrap();
    assert_eq!(lhs, rhs);
    let e = c.symbol("E").unwrap();
    assert_eq!(lhs.numerator().degree_in(e), 1);
}

#[test]
fn opaque_atoms_commute_and_are_independent() {
    let c = tr3();
    assert!(c.parse("f(x1)*x2 - x2*f(x1)").unwrap().is_zero());
    assert!(!c.parse("f(x1) - f__1(x1)").unwrap().is_zero());
}

#[test]
fn implicit_derivative_of_radical() {
    let c = Chart::builder("TR4")
        .coords(&["x0", "x1", "x2", "x3", "xd0", "xd1", "xd2", "xd3"])
        .tangent()
        .extension("v", "xd0^2 - xd1^2 - xd2^2 - xd3^2")
        .build()
        .unwrap();
    let v = c.var("v");
    let d = v.diff(c.symbol("xd1").unwrap());
    assert_eq!(d, c.parse("-xd1/v").unwrap());
    // oracle: differentiate v^2 = q implicitly: 2 v v' = dq/dxd1 = -2 xd1
    let lhs = &(&Expr::int(2) * &v) * &d;
    assert_eq!(lhs, c.parse("-2*xd1").unwrap());
}

#[test]
fn chain_rule_through_opaque() {
    let c = tr3();
    let e = c.parse("xd1*f(xd1^2+xd2^2+xd3^2)").unwrap();
    let d = e.diff(c.symbol("xd1").unwrap());
    let expect = c
        .parse("f(xd1^2+xd2^2+xd3^2) + 2*xd1^2*f__1(xd1^2+xd2^2+xd3^2)")
        .unwrap();
    assert_eq!(d, expect);
    assert!(c.x(0).diff(c.coord(1)).is_zero());
}

#[test]
fn chain_rule_matches_finite_difference_with_polynomial_f() {
    // f(u) = u^2 + 3u: the derivative of xd1 f(|xd|^2) along xd1 at a
    // rational point, versus the central difference of an exact cubic-free
    // expansion. Central differences of a polynomial of degree <= 5 in xd1
    // are exact up to O(h^2) terms which we cancel with Richardson.
    let c = Chart::builder("TR3u")
        .coords(&["x1", "x2", "x3", "xd1", "xd2", "xd3"])
        .params(&["u"])
        .function("f")
        .build()
        .unwrap();
    let e = c.parse("xd1*f(xd1^2+xd2^2+xd3^2)").unwrap();
    let d = e.diff(c.symbol("xd1").unwrap());
    let u = c.symbol("u").unwrap().clone();
    let s = Substitution::new().bind_function(
        "f",
        FunctionBinding::Template {
            var: u,
            body: c.parse("u^2 + 3*u").unwrap(),
        },
    );
    let d = d.substitute(&s).unwrap();
    let e = e.substitute(&s).unwrap();
    let mut pt = Point::new();
    for (k, v) in [("x1", q(1, 1)), ("x2", q(0, 1)), ("x3", q(0, 1)), ("xd1", q(1, 3)), ("xd2", q(1, 2)), ("xd3", q(1, 5))] {
        pt.insert(k.into(), v);
    }
    let at = |h: &Q| {
        let mut p = pt.clone();
        *p.get_mut("xd1").unwrap() += h;
        eval_rational(&e, &p).unwrap()
    };
    let central = |h: Q| (at(&h) - at(&-h.clone())) / (Q::from_integer(2.into()) * h);
    // Richardson extrapolation to eliminate h^2 and h^4 error terms exactly
    // for a degree-5 polynomial in xd1.
    let h = q(1, 100);
    let d1 = central(h.clone());
    let d2 = central(h.clone() / Q::from_integer(2.into()));
    let d4 = central(h / Q::from_integer(4.into()));
    let r1 = (Q::from_integer(4.into()) * &d2 - &d1) / Q::from_integer(3.into());
    let r2 = (Q::from_integer(4.into()) * &d4 - &d2) / Q::from_integer(3.into());
    let fd = (Q::from_integer(16.into()) * r2 - r1) / Q::from_integer(15.into());
    assert_eq!(eval_rational(&d, &pt).unwrap(), fd);
}

#[test]
fn substitute_function_to_zero() {
    let c = Chart::builder("TR3u")
        .coords(&["x1", "xd1"])
        .params(&["u"])
        .function("f")
        .build()
        .unwrap();
    let e = c.parse("xd1*f(xd1^2)").unwrap();
    let s = Substitution::new().bind_function(
        "f",
        FunctionBinding::Template {
            var: c.symbol("u").unwrap().clone(),
            body: Expr::zero(),
        },
    );
    assert!(e.substitute(&s).unwrap().is_zero());
    // identity binding
    let id = Substitution::new().bind("x1", c.x(0));
    assert_eq!(e.substitute(&id).unwrap(), e);
}

#[test]
fn substitution_cannot_make_denominator_vanish() {
    let c = tr3();
    let e = c.parse("1/(x1 - x2)").unwrap();
    let s = Substitution::new().bind("x1", c.x(1));
    assert!(matches!(e.substitute(&s), Err(Error::Substitution(_))));
}

#[test]
fn evaluation_contract() {
    let c = Chart::builder("T*R4")
        .coords(&["p0", "p1", "p2", "p3"])
        .build()
        .unwrap();
    let pp = c.parse("p0^2 - p1^2 - p2^2 - p3^2").unwrap();
    let mut pt = Point::new();
    for (k, v) in [("p0", 5), ("p1", 3), ("p2", 0), ("p3", 4)] {
        pt.insert(k.into(), q(v, 1));
    }
    assert_eq!(eval_rational(&pp, &pt).unwrap(), q(0, 1));

    let s = shell();
    let mut pt = Point::new();
    for (k, v) in [("p1", 3), ("p2", 0), ("p3", 4), ("m", 1)] {
        pt.insert(k.into(), q(v, 1));
    }
    // E = sqrt(26) is irrational and unsupplied
    assert!(matches!(eval_rational(&s.var("E"), &pt), Err(Error::Eval(_))));
    pt.insert("m".into(), q(12, 1));
    assert_eq!(eval_rational(&s.var("E"), &pt).unwrap(), q(13, 1));
    // a wrong supplied branch is rejected
    pt.insert("E".into(), q(-13, 1));
    assert!(eval_rational(&s.var("E"), &pt).is_err());

    let t = tr3();
    let e = t.parse("1/(x1 - 1)").unwrap();
    let mut pt = Point::new();
    pt.insert("x1".into(), q(1, 1));
    assert_eq!(eval_rational(&e, &pt), Err(Error::DivisionByZero));
}

#[test]
fn canonical_denominator_is_monic_and_coprime() {
    let c = tr3();
    let e = c.parse("(2*x1^2 - 2*x2^2)/(4*x1 + 4*x2)").unwrap();
    assert_eq!(e, c.parse("x1/2 - x2/2").unwrap());
    let f = c.parse("(x1 + x2)/(3*x1^2 - 3*x2^2)").unwrap();
    assert_eq!(f.to_string(), "(1/3)/(x1 - x2)");
}

#[test]
fn print_parse_roundtrip_with_radicals_and_opaque() {
    let c = Chart::builder("w")
        .coords(&["a", "b"])
        .extension("w", "1 - a^2 - b^2")
        .function("f")
        .build()
        .unwrap();
    for t in ["w/(a - b) + f__2(a*w)/(1 + a)", "3/4*a^2*w - b", "f(1/(1-a))"] {
        let e = c.parse(t).unwrap();
        let back = c.parse(&e.to_string()).unwrap();
        assert_eq!(e, back, "{t} -> {e}");
    }
}

#[test]
fn sqrt_resolves_or_adjoins_extensions() {
    let c = Chart::builder("w")
        .coords(&["a", "b"])
        .extension("w", "1 - a^2 - b^2")
        .build()
        .unwrap();
    assert_eq!(c.parse("sqrt(1 - b^2 - a^2)").unwrap(), c.var("w"));
    assert!(matches!(c.parse("sqrt(a)"), Err(Error::UnknownRadical(_))));
    let (c2, e) = c.parse_adjoining("sqrt(a)^3").unwrap();
    assert_eq!(c2.extensions().len(), 2);
    assert_eq!(e, c2.parse("a*sqrt1").unwrap());
}

#[test]
fn gcd_of_products() {
    let c = tr3();
    let a = c.parse("(x1 + x2)^2*(x3 - xd1)*(xd2 + 1)").unwrap();
    let b = c.parse("(x1 + x2)*(x3 - xd1)^3*(xd3 - 2)").unwrap();
    let g = gcd(a.numerator(), b.numerator());
    let expect = c.parse("(x1 + x2)*(x3 - xd1)").unwrap();
    assert_eq!(Expr::from_poly(g), expect);
}
