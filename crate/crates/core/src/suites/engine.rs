//! Seeded property checks of the expression and tensor engine.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::expr::{parse_ast, Chart, Expr};
use crate::geom::{
    exterior_derivative, interior, lie_bracket, lie_derivative, schouten_bracket, wedge,
    DifferentialForm, MultivectorField, VectorField,
};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::{random_expr, random_poly, rng, SampleRng};

use super::charts::tr3;

/// Random inputs per geometric property.
pub const GEOMETRIC_SAMPLES: usize = 25;
/// Random expressions per algebraic property.
pub const EXPR_SAMPLES: usize = 100;

fn r4() -> Arc<Chart> {
    Chart::builder("R4").coords(&["a", "b", "c", "e"]).build().expect("valid chart")
}

pub fn random_field(c: &Arc<Chart>, r: &mut SampleRng) -> VectorField {
    let comps = (0..c.dim()).map(|_| random_poly(r, c.coords(), 2, 3)).collect();
    VectorField::new(c, comps).expect("one component per coordinate")
}

pub fn random_form(c: &Arc<Chart>, k: usize, r: &mut SampleRng) -> DifferentialForm {
    let idx: Vec<usize> = (0..c.dim()).collect();
    let terms = (0..3)
        .map(|_| {
            let i: Vec<usize> = idx.choose_multiple(r, k).copied().collect();
            (i, random_poly(r, c.coords(), 2, 3))
        })
        .collect::<Vec<_>>();
    DifferentialForm::from_terms(c, k, terms).expect("valid indices")
}

fn mv(x: &VectorField) -> MultivectorField {
    MultivectorField::from_field(x)
}

/// `Σ (-1)^{i+j} [X_i, Y_j] ∧ X_î ∧ Y_ĵ` for `X_0∧X_1` and `Y_0∧Y_1`.
pub fn decomposable_schouten(xs: &[VectorField; 2], ys: &[VectorField; 2]) -> Result<MultivectorField> {
    let mut out = MultivectorField::zero(xs[0].chart(), 3)?;
    for i in 0..2 {
        for j in 0..2 {
            let t = wedge(&wedge(&mv(&lie_bracket(&xs[i], &ys[j])?), &mv(&xs[1 - i]))?, &mv(&ys[1 - j]))?;
            out = if (i + j) % 2 == 0 { &out + &t } else { &out - &t };
        }
    }
    Ok(out)
}

fn count_outcome(bad: Vec<String>, n: usize) -> Outcome {
    if bad.is_empty() {
        Outcome::pass()
    } else {
        Outcome::fail(format!("{} of {n} samples: {}", bad.len(), bad.join("; ")))
    }
}

pub fn run(seed: u64, timings: bool) -> Result<Report> {
    let mut rec = Recorder::new("engine", seed, timings);
    let c = r4();
    let n = GEOMETRIC_SAMPLES;
    let gr = "engine/geometry";
    rec.run("d^2=0", gr, "d(d alpha) = 0 for random forms of degree 0..2", || {
        let mut r = rng(seed ^ 1);
        let mut bad = Vec::new();
        for s in 0..n {
            let a = random_form(&c, s % 3, &mut r);
            let dd = exterior_derivative(&exterior_derivative(&a)?)?;
            if !dd.is_zero() {
                bad.push(format!("#{s}: {dd}"));
            }
        }
        Ok(count_outcome(bad, n))
    });
    rec.run("cartan", gr, "L_X alpha = i_X d alpha + d i_X alpha for random 1- and 2-forms", || {
        let mut r = rng(seed ^ 2);
        let mut bad = Vec::new();
        for s in 0..n {
            let x = random_field(&c, &mut r);
            let a = random_form(&c, 1 + s % 2, &mut r);
            let d = &lie_derivative(&x, &a)?
                - &(&interior(&x, &exterior_derivative(&a)?)? + &exterior_derivative(&interior(&x, &a)?)?);
            if !d.is_zero() {
                bad.push(format!("#{s}: {d}"));
            }
        }
        Ok(count_outcome(bad, n))
    });
    rec.run("jacobi", gr, "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0 for random polynomial fields", || {
        let mut r = rng(seed ^ 3);
        let mut bad = Vec::new();
        for s in 0..n {
            let (x, y, z) = (random_field(&c, &mut r), random_field(&c, &mut r), random_field(&c, &mut r));
            let j = &(&lie_bracket(&x, &lie_bracket(&y, &z)?)? + &lie_bracket(&y, &lie_bracket(&z, &x)?)?)
                + &lie_bracket(&z, &lie_bracket(&x, &y)?)?;
            if !j.is_zero() {
                bad.push(format!("#{s}: {j}"));
            }
        }
        Ok(count_outcome(bad, n))
    });
    rec.run("schouten-oracle", gr, "Schouten bracket of decomposable bivectors matches the expansion in Lie brackets", || {
        let mut r = rng(seed ^ 4);
        let mut bad = Vec::new();
        for s in 0..n {
            let xs = [random_field(&c, &mut r), random_field(&c, &mut r)];
            let ys = [random_field(&c, &mut r), random_field(&c, &mut r)];
            let a = wedge(&mv(&xs[0]), &mv(&xs[1]))?;
            let b = wedge(&mv(&ys[0]), &mv(&ys[1]))?;
            let d = &schouten_bracket(&a, &b)? - &decomposable_schouten(&xs, &ys)?;
            if !d.is_zero() {
                bad.push(format!("#{s}: {d}"));
            }
        }
        Ok(count_outcome(bad, n))
    });

    let t = tr3();
    let m = EXPR_SAMPLES;
    let exprs: Vec<Expr> = {
        let mut r = rng(seed ^ 5);
        (0..2 * m).map(|_| random_expr(&mut r, &t, 3)).collect()
    };
    let er = "engine/expressions";
    rec.run("normalize-idempotent", er, "re-normalizing a canonical form leaves it unchanged", || {
        let mut bad = Vec::new();
        for (s, e) in exprs[..m].iter().enumerate() {
            let again = Expr::from_parts(e.numerator().clone(), e.denominator().clone())?;
            let twice = t.normalize(&parse_ast(&again.to_string())?)?;
            if &again != e || twice != again {
                bad.push(format!("#{s}: {e}"));
            }
        }
        Ok(count_outcome(bad, m))
    });
    rec.run("product-rule", er, "d(fg)/dx = f' g + f g' for random expressions and coordinates", || {
        let mut r = rng(seed ^ 6);
        let mut bad = Vec::new();
        for s in 0..m {
            let (f, g) = (&exprs[s], &exprs[m + s]);
            let x = &t.coords()[r.gen_range(0..t.dim())];
            let d = &(f * g).diff(x) - &(&(&f.diff(x) * g) + &(f * &g.diff(x)));
            if !d.is_zero() {
                bad.push(format!("#{s}: {d}"));
            }
        }
        Ok(count_outcome(bad, m))
    });
    rec.run("parse-print", er, "parse(print(e)) = e for random canonical expressions", || {
        let mut bad = Vec::new();
        for (s, e) in exprs[..m].iter().enumerate() {
            let back = t.parse(&e.to_string())?;
            if &back != e {
                bad.push(format!("#{s}: {e} -> {back}"));
            }
        }
        Ok(count_outcome(bad, m))
    });
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposable_oracle_is_antisymmetric_for_bivectors() {
        let c = r4();
        let mut r = rng(9);
        let xs = [random_field(&c, &mut r), random_field(&c, &mut r)];
        let ys = [random_field(&c, &mut r), random_field(&c, &mut r)];
        assert_eq!(decomposable_schouten(&xs, &ys).unwrap(), decomposable_schouten(&ys, &xs).unwrap());
    }

    #[test]
    fn seeded_runs_are_identical() {
        assert_eq!(run(5, false).unwrap().to_json(), run(5, false).unwrap().to_json());
    }
}
