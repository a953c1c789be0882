//! Structure-constant tables: the Poincaré algebra in both signatures, the
//! instant-form relabeling, the Lie–Poisson bracket and Dirac's elementary
//! solution.

use num_traits::Zero;

use crate::algebra::{
    check_elementary_solution, instant_form_spec, lie_poisson_bracket, poincare_spec, Convention,
    LieAlgebraSpec,
};
use crate::error::Result;
use crate::expr::Q;
use crate::report::{Outcome, Recorder, Report};
use crate::sample::{rng, small_q};

pub const SIGNATURES: [[i32; 4]; 2] = [[1, -1, -1, -1], [-1, 1, 1, 1]];

fn sig_label(s: &[i32; 4]) -> String {
    s.iter().map(|x| if *x > 0 { '+' } else { '-' }).collect()
}

/// Brute-force antisymmetry over all basis triples.
pub fn antisymmetry_defects(spec: &LieAlgebraSpec) -> Vec<(usize, usize, usize)> {
    let n = spec.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !(spec.constant(i, j, k) + spec.constant(j, i, k)).is_zero() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Brute-force Jacobi identity over all basis triples, via the bracket of
/// coefficient vectors.
pub fn jacobi_defects(spec: &LieAlgebraSpec) -> Result<Vec<(usize, usize, usize)>> {
    let n = spec.dim();
    let e = |i: usize| {
        let mut v = vec![Q::zero(); n];
        v[i] = Q::from_integer(1.into());
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let a = lie_poisson_bracket(&e(i), &lie_poisson_bracket(&e(j), &e(k), spec)?, spec)?;
                let b = lie_poisson_bracket(&e(j), &lie_poisson_bracket(&e(k), &e(i), spec)?, spec)?;
                let c = lie_poisson_bracket(&e(k), &lie_poisson_bracket(&e(i), &e(j), spec)?, spec)?;
                if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                    out.push((i, j, k));
                }
            }
        }
    }
    Ok(out)
}

fn defects_outcome(spec: &LieAlgebraSpec, d: &[(usize, usize, usize)]) -> Outcome {
    let names = spec.names();
    let text: Vec<String> = d
        .iter()
        .take(5)
        .map(|&(i, j, k)| format!("({}, {}, {})", names[i], names[j], names[k]))
        .collect();
    Outcome::check(d.is_empty(), text.join(", "))
}

pub fn run(opts: &super::Options) -> Result<Report> {
    let mut rec = Recorder::new("algebra", opts.seed, opts.timings);
    let gr = "algebra/poincare";
    for sig in SIGNATURES {
        let label = sig_label(&sig);
        let spec = poincare_spec(&sig);
        rec.run(&format!("antisymmetry[{label}]"), gr, "c^k_ij + c^k_ji = 0 over all 10^3 basis triples", || {
            let s = spec.clone()?;
            Ok(defects_outcome(&s, &antisymmetry_defects(&s)))
        });
        rec.run(&format!("jacobi[{label}]"), gr, "Jacobi identity over all 10^3 basis triples", || {
            let s = spec.clone()?;
            Ok(defects_outcome(&s, &jacobi_defects(&s)?))
        });
        let mut elem = check_elementary_solution(&sig)?;
        elem.suite = format!("elementary[{label}]");
        rec.absorb(elem);
    }
    let ir = "algebra/instant-form";
    for (conv, want) in [(Convention::Paper, 1), (Convention::Conventional, -1)] {
        rec.run(&format!("[K1,K2][{conv:?}]"), ir, "[K1, K2] = +J3 (Paper) or -J3 (Conventional)", || {
            let s = instant_form_spec(conv)?;
            let (k1, k2, j3) = (s.index("K1").expect("K1"), s.index("K2").expect("K2"), s.index("J3").expect("J3"));
            let v = s.bracket_of_basis(k1, k2);
            let ok = v.iter().enumerate().all(|(k, c)| {
                if k == j3 {
                    *c == Q::from_integer(want.into())
                } else {
                    c.is_zero()
                }
            });
            let shown: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{c} {}", s.names()[k]))
                .collect();
            Ok(Outcome::check(ok, shown.join(" + ")).with_description(format!("[K1, K2] = {}", shown.join(" + "))))
        });
    }
    let lr = "algebra/lie-poisson";
    rec.run("bilinearity", lr, "{a u + b u', v} = a {u, v} + b {u', v} on 20 seeded vectors", || {
        let s = poincare_spec(&SIGNATURES[0])?;
        let mut r = rng(opts.seed);
        let vec10 = |r: &mut _| (0..10).map(|_| small_q(r)).collect::<Vec<Q>>();
        let mut bad = 0;
        for _ in 0..20 {
            let (u, u2, v) = (vec10(&mut r), vec10(&mut r), vec10(&mut r));
            let (a, b) = (small_q(&mut r), small_q(&mut r));
            let mix: Vec<Q> = u.iter().zip(&u2).map(|(x, y)| &a * x + &b * y).collect();
            let lhs = lie_poisson_bracket(&mix, &v, &s)?;
            let (p, q) = (lie_poisson_bracket(&u, &v, &s)?, lie_poisson_bracket(&u2, &v, &s)?);
            if lhs.iter().zip(p.iter().zip(&q)).any(|(l, (x, y))| *l != &a * x + &b * y) {
                bad += 1;
            }
        }
        Ok(Outcome::check(bad == 0, format!("{bad} of 20 samples not bilinear")))
    });
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agrees_with_load_time_validation() {
        for sig in SIGNATURES {
            let s = poincare_spec(&sig).unwrap();
            assert!(antisymmetry_defects(&s).is_empty());
            assert!(jacobi_defects(&s).unwrap().is_empty());
            assert!(s.jacobi_defect().is_none());
        }
    }

    #[test]
    fn suite_passes() {
        let r = run(&super::super::Options::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), 97);
    }
}
