use std::sync::Arc;

use super::*;
use crate::expr::{Chart, Expr, Point, Q};
use crate::sample::{random_poly, rng};

fn r4() -> Arc<Chart> {
    Chart::builder("R4").coords(&["a", "b", "c", "e"]).build().unwrap()
}

fn tr3() -> Arc<Chart> {
    Chart::builder("TR3")
        .coords(&["x1", "x2", "x3", "xd1", "xd2", "xd3"])
        .tangent()
        .build()
        .unwrap()
}

fn rand_field(c: &Arc<Chart>, r: &mut crate::sample::SampleRng) -> VectorField {
    let comps = (0..c.dim()).map(|_| random_poly(r, c.coords(), 2, 3)).collect();
    VectorField::new(c, comps).unwrap()
}

fn rand_form(c: &Arc<Chart>, k: usize, r: &mut crate::sample::SampleRng) -> DifferentialForm {
    let n = c.dim();
    let mut terms = Vec::new();
    for _ in 0..3 {
        let mut idx: Vec<usize> = Vec::new();
        while idx.len() < k {
            let i = rand::Rng::gen_range(r, 0..n);
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        terms.push((idx, random_poly(r, c.coords(), 2, 3)));
    }
    DifferentialForm::from_terms(c, k, terms).unwrap()
}

#[test]
fn bracket_of_translation_and_dilation() {
    let c = r4();
    let d1 = VectorField::coordinate(&c, 0);
    let x1d1 = d1.scale(&c.x(0));
    assert_eq!(lie_bracket(&d1, &x1d1).unwrap(), d1);
}

#[test]
fn chart_mismatch_is_an_error() {
    let a = VectorField::coordinate(&r4(), 0);
    let b = VectorField::coordinate(&tr3(), 0);
    assert!(matches!(lie_bracket(&a, &b), Err(crate::Error::ChartMismatch(..))));
}

#[test]
fn dx_wedge_dx_vanishes() {
    let c = r4();
    let dx = DifferentialForm::basis(&c, &[1]).unwrap();
    assert!(wedge(&dx, &dx).unwrap().is_zero());
    let top = DifferentialForm::basis(&c, &[0, 1, 2, 3]).unwrap();
    assert!(exterior_derivative(&top).is_err());
    assert!(wedge(&top, &dx).is_err());
}

#[test]
fn interior_of_exact_form_is_directional_derivative() {
    let c = r4();
    let mut r = rng(3);
    for _ in 0..10 {
        let x = rand_field(&c, &mut r);
        let f = random_poly(&mut r, c.coords(), 3, 4);
        let lhs = DifferentialForm::exact(&c, &f).pair(&x).unwrap();
        assert_eq!(lhs, lie_derivative(&x, &f).unwrap());
    }
}

#[test]
fn lie_derivative_is_a_derivation() {
    let c = r4();
    let mut r = rng(4);
    for _ in 0..10 {
        let x = rand_field(&c, &mut r);
        let f = random_poly(&mut r, c.coords(), 2, 3);
        let g = random_poly(&mut r, c.coords(), 2, 3);
        let lhs = x.apply(&(&f * &g));
        let rhs = &(&x.apply(&f) * &g) + &(&f * &x.apply(&g));
        assert!((&lhs - &rhs).is_zero());
    }
}

#[test]
fn bivector_on_differentials() {
    let c = r4();
    // Λ = ∂_a ∧ ∂_b : Λ(da, db) = 1, Λ(db, da) = -1
    let l = MultivectorField::basis(&c, &[0, 1]).unwrap();
    let da = DifferentialForm::exact(&c, &c.x(0));
    let db = DifferentialForm::exact(&c, &c.x(1));
    assert_eq!(l.eval2(&da, &db).unwrap(), Expr::one());
    assert_eq!(l.eval2(&db, &da).unwrap(), Expr::int(-1));
}

#[test]
fn d_squared_is_zero() {
    let c = r4();
    let mut r = rng(10);
    for k in 0..3 {
        for _ in 0..9 {
            let a = rand_form(&c, k, &mut r);
            let dd = exterior_derivative(&exterior_derivative(&a).unwrap()).unwrap();
            assert!(dd.is_zero());
        }
    }
}

#[test]
fn cartan_formula() {
    let c = r4();
    let mut r = rng(11);
    for k in 1..=2 {
        for _ in 0..13 {
            let x = rand_field(&c, &mut r);
            let a = rand_form(&c, k, &mut r);
            let lhs = lie_derivative(&x, &a).unwrap();
            let rhs = &interior(&x, &exterior_derivative(&a).unwrap()).unwrap()
                + &exterior_derivative(&interior(&x, &a).unwrap()).unwrap();
            assert!((&lhs - &rhs).is_zero(), "{lhs} vs {rhs}");
        }
    }
}

#[test]
fn lie_bracket_jacobi_and_antisymmetry() {
    let c = r4();
    let mut r = rng(12);
    for _ in 0..25 {
        let (x, y, z) = (rand_field(&c, &mut r), rand_field(&c, &mut r), rand_field(&c, &mut r));
        let br = |a: &VectorField, b: &VectorField| lie_bracket(a, b).unwrap();
        let j = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        assert!(j.is_zero());
        assert!((&br(&x, &y) + &br(&y, &x)).is_zero());
    }
}

#[test]
fn wedge_graded_commutative_and_associative() {
    let c = r4();
    let mut r = rng(13);
    for _ in 0..10 {
        let a = rand_form(&c, 1, &mut r);
        let b = rand_form(&c, 2, &mut r);
        let e = rand_form(&c, 1, &mut r);
        assert_eq!(wedge(&a, &b).unwrap(), wedge(&b, &a).unwrap());
        assert_eq!(wedge(&a, &e).unwrap(), -&wedge(&e, &a).unwrap());
        let l = wedge(&wedge(&a, &e).unwrap(), &b).unwrap_or_else(|_| DifferentialForm::zero(&c, 4).unwrap());
        let rr = wedge(&a, &wedge(&e, &b).unwrap()).unwrap();
        assert_eq!(l, rr);
    }
}

fn mv(x: &VectorField) -> MultivectorField {
    MultivectorField::from_field(x)
}

#[test]
fn schouten_reduces_to_lie_bracket() {
    let c = r4();
    let mut r = rng(14);
    for _ in 0..10 {
        let x = rand_field(&c, &mut r);
        let y = rand_field(&c, &mut r);
        let s = schouten_bracket(&mv(&x), &mv(&y)).unwrap();
        assert_eq!(s, mv(&lie_bracket(&x, &y).unwrap()));
        let z = rand_field(&c, &mut r);
        let yz = wedge(&mv(&y), &mv(&z)).unwrap();
        assert_eq!(
            schouten_bracket(&mv(&x), &yz).unwrap(),
            lie_derivative(&x, &yz).unwrap()
        );
    }
}

#[test]
fn schouten_matches_decomposable_oracle() {
    let c = r4();
    let mut r = rng(15);
    for _ in 0..25 {
        let xs: Vec<VectorField> = (0..2).map(|_| rand_field(&c, &mut r)).collect();
        let ys: Vec<VectorField> = (0..2).map(|_| rand_field(&c, &mut r)).collect();
        let a = wedge(&mv(&xs[0]), &mv(&xs[1])).unwrap();
        let b = wedge(&mv(&ys[0]), &mv(&ys[1])).unwrap();
        let got = schouten_bracket(&a, &b).unwrap();
        // Σ (-1)^{i+j} [X_i, Y_j] ∧ X_î ∧ Y_ĵ
        let mut want = MultivectorField::zero(&c, 3).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let t = wedge(
                    &wedge(&mv(&lie_bracket(&xs[i], &ys[j]).unwrap()), &mv(&xs[1 - i])).unwrap(),
                    &mv(&ys[1 - j]),
                )
                .unwrap();
                want = if (i + j) % 2 == 0 { &want + &t } else { &want - &t };
            }
        }
        assert_eq!(got, want);
        // graded antisymmetry for two bivectors: [A,B] = -(-1)^{1}[B,A] = [B,A]
        assert_eq!(got, schouten_bracket(&b, &a).unwrap());
    }
    let t = MultivectorField::basis(&c, &[0, 1, 2]).unwrap();
    assert!(matches!(
        schouten_bracket(&t, &t),
        Err(crate::Error::UnsupportedDegree(3))
    ));
}

#[test]
fn tangent_structure_basics() {
    let c = tr3();
    let ts = tangent_structure(&c).unwrap();
    let n = 3;
    let a: Vec<Expr> = (0..3).map(|i| c.x(n + i).scale(&Q::new(1.into(), 2.into()))).collect();
    let gamma = VectorField::new(
        &c,
        (0..3).map(|i| c.x(n + i)).chain(a).collect(),
    )
    .unwrap();
    assert_eq!(ts.s.apply(&gamma).unwrap(), ts.delta);
    assert!(ts.s.compose(&ts.s).unwrap().is_zero());
    let minus_dx1 = VectorField::coordinate(&c, 0).scale(&Expr::int(-1));
    assert_eq!(
        ts.vertical_lift(&minus_dx1).unwrap(),
        VectorField::coordinate(&c, 3).scale(&Expr::int(-1))
    );
    assert!(ts.vertical_lift(&VectorField::coordinate(&c, 4)).is_err());
    assert!(tangent_structure(&r4()).is_err());
}

#[test]
fn delta_gamma_bracket() {
    let c = Chart::builder("TR4")
        .coords(&["x0", "x1", "x2", "x3", "xd0", "xd1", "xd2", "xd3"])
        .tangent()
        .build()
        .unwrap();
    let ts = tangent_structure(&c).unwrap();
    let gamma = VectorField::from_pairs(&c, (0..4).map(|i| (i, c.x(4 + i))));
    assert_eq!(lie_bracket(&ts.delta, &gamma).unwrap(), gamma);
}

fn cotangent() -> Arc<Chart> {
    Chart::builder("TstarR4")
        .coords(&["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"])
        .params(&["m"])
        .signature(&[1, -1, -1, -1])
        .build()
        .unwrap()
}

fn shell() -> Arc<Chart> {
    Chart::builder("shell")
        .coords(&["x0", "x1", "x2", "x3", "p1", "p2", "p3"])
        .params(&["m"])
        .extension("E", "m^2 + p1^2 + p2^2 + p3^2")
        .signature(&[1, -1, -1, -1])
        .build()
        .unwrap()
}

fn shell_level() -> LevelSet {
    let a = cotangent();
    let s = shell();
    let cons = a.parse("p0^2 - p1^2 - p2^2 - p3^2 - m^2").unwrap();
    LevelSet::new(&a, cons, "p0", &s, "E").unwrap()
}

#[test]
fn symplectic_rank() {
    let c = cotangent();
    let w = DifferentialForm::from_terms(
        &c,
        2,
        (0..4).map(|i| (vec![4 + i, i], Expr::one())),
    )
    .unwrap();
    let mut pt = Point::new();
    for (i, a) in c.coords().iter().enumerate() {
        pt.insert(a.name().into(), Q::from_integer((i as i64 - 3).into()));
    }
    assert_eq!(two_form_rank(&w, &pt).unwrap(), 8);
}

#[test]
fn pullback_of_liouville_form() {
    let ls = shell_level();
    let a = ls.ambient().clone();
    let theta0 = DifferentialForm::one_form(
        &a,
        &[
            a.var("p0"),
            -a.var("p1"),
            -a.var("p2"),
            -a.var("p3"),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
            Expr::zero(),
        ],
    )
    .unwrap();
    let s = ls.sub().clone();
    let want = DifferentialForm::one_form(
        &s,
        &[s.var("E"), -s.var("p1"), -s.var("p2"), -s.var("p3"), Expr::zero(), Expr::zero(), Expr::zero()],
    )
    .unwrap();
    assert_eq!(ls.pullback(&theta0).unwrap(), want);
    // pullback commutes with d
    let lhs = ls.pullback(&exterior_derivative(&theta0).unwrap()).unwrap();
    let rhs = exterior_derivative(&ls.pullback(&theta0).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn pullback_commutes_with_d_on_random_forms() {
    let ls = shell_level();
    let a = ls.ambient().clone();
    let mut r = rng(16);
    for k in 0..3 {
        for _ in 0..3 {
            let f = rand_form(&a, k, &mut r);
            let lhs = ls.pullback(&exterior_derivative(&f).unwrap()).unwrap();
            let rhs = exterior_derivative(&ls.pullback(&f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn transversal_field_is_rejected() {
    let ls = shell_level();
    let dp0 = VectorField::coordinate(ls.ambient(), 4);
    assert!(matches!(ls.restrict_field(&dp0), Err(crate::Error::NotTangent(_))));
    // ∂/∂x^0 is tangent
    let dx0 = VectorField::coordinate(ls.ambient(), 0);
    assert_eq!(
        ls.restrict_field(&dx0).unwrap(),
        VectorField::coordinate(ls.sub(), 0)
    );
}

#[test]
fn level_set_requires_solvable_constraint() {
    let a = cotangent();
    let s = shell();
    let lin = a.parse("p0 - m").unwrap();
    assert!(matches!(
        LevelSet::new(&a, lin, "p0", &s, "E"),
        Err(crate::Error::Unsolvable(_))
    ));
}

#[test]
fn projector_rank() {
    let c = r4();
    let t = Tensor11::identity(&c);
    let dx = DifferentialForm::basis(&c, &[0]).unwrap();
    let p = t
        .checked_sub(&Tensor11::outer(&dx, &VectorField::coordinate(&c, 0)).unwrap())
        .unwrap();
    assert_eq!(p.compose(&p).unwrap(), p);
    assert_eq!(p.rank_at(&Point::new()).unwrap(), 3);
}

#[test]
fn solve_span_finds_coefficients() {
    let c = r4();
    let a = c.x(0);
    let cols = vec![vec![Expr::one(), a.clone()], vec![Expr::zero(), Expr::one()]];
    let rhs = vec![a.clone(), &(&a * &a) + &Expr::int(2)];
    let sol = solve_span(&cols, &rhs).unwrap();
    assert_eq!(sol, vec![a.clone(), Expr::int(2)]);
    let cols = vec![vec![Expr::one(), a.clone()]];
    assert!(solve_span(&cols, &[Expr::one(), Expr::one()]).is_err());
}
