//! Frozen phase space: `θ = θ_0/sqrt(p·p)` on `T*R^4` minus the null cone,
//! the kernel `{Δ, Γ}` of `dθ` and descent of the Poincaré fields.

use std::sync::Arc;

use crate::algebra::{poincare_names, poincare_spec};
use crate::error::{Error, Result};
use crate::expr::{Chart, Expr, Point, Q};
use crate::geom::{
    exterior_derivative, interior, lie_bracket, lie_derivative, solve_span, two_form_rank, wedge,
    DifferentialForm, VectorField,
};
use crate::report::{Outcome, Recorder, Report};
use crate::sample::rng;

use super::charts::{frozen, frozen_sampler};

pub const SIGNATURE: [i32; 4] = [1, -1, -1, -1];
const M_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `θ`, `dθ`, `Δ`, `Γ` and the ten Poincaré fields on the off-shell chart.
#[derive(Clone, Debug)]
pub struct FrozenGeometry {
    pub chart: Arc<Chart>,
    pub theta0: DifferentialForm,
    pub theta: DifferentialForm,
    pub dtheta: DifferentialForm,
    pub delta: VectorField,
    pub gamma: VectorField,
    /// `Y_μ = ∂/∂x^μ` then `X_{μν}`, in [`poincare_names`] order.
    pub poincare: Vec<VectorField>,
}

fn g(i: usize) -> Q {
    Q::from_integer(SIGNATURE[i].into())
}

pub fn build_frozen() -> Result<FrozenGeometry> {
    let c = frozen();
    let r = c.var("r");
    let pp = &r * &r;
    let lower = |i: usize| c.x(i).scale(&g(i % 4));
    let theta0 = DifferentialForm::one_form(&c, &(0..8).map(|i| if i < 4 { lower(4 + i) } else { Expr::zero() }).collect::<Vec<_>>())?;
    let theta = theta0.scale(&r.recip()?);
    let dtheta = exterior_derivative(&theta)?;
    let delta = VectorField::from_pairs(&c, (0..4).map(|mu| (4 + mu, c.x(4 + mu))));
    let gamma = VectorField::from_pairs(&c, (0..4).map(|mu| (mu, c.x(4 + mu).try_div(&pp).expect("r != 0"))));
    let mut poincare: Vec<VectorField> = (0..4).map(|mu| VectorField::coordinate(&c, mu)).collect();
    for (mu, nu) in M_PAIRS {
        poincare.push(VectorField::from_pairs(
            &c,
            [
                (nu, lower(mu)),
                (mu, -&lower(nu)),
                (4 + nu, lower(4 + mu)),
                (4 + mu, -&lower(4 + nu)),
            ],
        ));
    }
    Ok(FrozenGeometry {
        chart: c,
        theta0,
        theta,
        dtheta,
        delta,
        gamma,
        poincare,
    })
}

impl FrozenGeometry {
    /// `P_μ/r` and `M_{μν}/r`, invariant under `Δ` and `Γ`.
    pub fn generating_functions(&self) -> Result<Vec<Expr>> {
        let c = &self.chart;
        let r = c.var("r");
        let x = |mu: usize| c.x(mu).scale(&g(mu));
        let p = |mu: usize| c.x(4 + mu).scale(&g(mu));
        let mut out: Vec<Expr> = (0..4).map(|mu| p(mu).try_div(&r)).collect::<Result<_>>()?;
        for (mu, nu) in M_PAIRS {
            out.push((&(&x(mu) * &p(nu)) - &(&x(nu) * &p(mu))).try_div(&r)?);
        }
        Ok(out)
    }

    /// Some `X` with `i_X dθ = −dF`; unique modulo the kernel.
    pub fn induced_field(&self, f: &Expr) -> Result<VectorField> {
        let c = &self.chart;
        let n = c.dim();
        let cols: Vec<Vec<Expr>> = (0..n)
            .map(|i| (0..n).map(|j| self.dtheta.coeff(&[i, j])).collect())
            .collect();
        let rhs: Vec<Expr> = (0..n).map(|j| -&f.diff(c.coord(j))).collect();
        let x = solve_span(&cols, &rhs).map_err(|res| {
            Error::Unsolvable(format!(
                "dF not in the image of dtheta: {}",
                res.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ))
        })?;
        VectorField::new(c, x)
    }

    /// `dθ0/r − (p_μ dp^μ/r^k) ∧ θ0`; `k = 1` is the commonly quoted expansion.
    pub fn expanded_dtheta(&self, k: i32) -> Result<DifferentialForm> {
        let c = &self.chart;
        let r = c.var("r");
        let rinv = r.recip()?;
        let pdp = DifferentialForm::one_form(c, &(0..8).map(|i| if i >= 4 { c.x(i).scale(&g(i - 4)) } else { Expr::zero() }).collect::<Vec<_>>())?;
        let a = exterior_derivative(&self.theta0)?.scale(&rinv);
        let b = wedge(&pdp.scale(&r.pow(-k)?), &self.theta0)?;
        Ok(&a - &b)
    }
}

/// Non-null sample points with rational `r`, plus the fixed point
/// `x = 0, p = (5,3,0,0), r = 4`.
pub fn rank_points(seed: u64, n: usize) -> Vec<Point> {
    let s = frozen_sampler();
    let mut wrng = rng(seed);
    let mut out = Vec::new();
    let mut fixed = Point::new();
    for (k, v) in [("x0", 0), ("x1", 0), ("x2", 0), ("x3", 0), ("p0", 5), ("p1", 3), ("p2", 0), ("p3", 0), ("r", 4)] {
        fixed.insert(k.into(), Q::from_integer(v.into()));
    }
    out.push(fixed);
    while out.len() < n + 1 {
        if let Some(p) = s(&mut wrng) {
            out.push(p);
        }
    }
    out
}

pub fn run(opts: &super::Options) -> Result<Report> {
    let mut rec = Recorder::new("frozen", opts.seed, opts.timings);
    let fg = build_frozen()?;
    let kr = "frozen/kernel";
    let show = |w: &DifferentialForm| Outcome::check(w.is_zero(), w.to_string());
    rec.run("i_Delta dtheta", kr, "i_Delta dtheta = 0", || Ok(show(&interior(&fg.delta, &fg.dtheta)?)));
    rec.run("i_Gamma dtheta", kr, "i_Gamma dtheta = 0", || Ok(show(&interior(&fg.gamma, &fg.dtheta)?)));
    rec.run("L_Delta theta", kr, "L_Delta theta = 0 (degree zero in the momenta)", || {
        Ok(show(&lie_derivative(&fg.delta, &fg.theta)?))
    });
    let mut wrng = rng(opts.seed);
    rec.run("theta(Gamma)", kr, "theta(Gamma) = 1", || {
        let a = &fg.theta.pair(&fg.gamma)? - &Expr::one();
        Ok(super::residuals_outcome(&[("theta(Gamma) - 1".into(), a)], Some(&frozen_sampler()), &mut wrng))
    });
    rec.run("theta(Delta)", kr, "theta(Delta) = 0", || Ok(Outcome::zero(&fg.theta.pair(&fg.delta)?)));
    rec.run("theta(r Gamma)", kr, "", || {
        let v = fg.theta.pair(&fg.gamma)?;
        let w = fg.theta.pair(&fg.gamma.scale(&fg.chart.var("r")))?;
        Ok(Outcome::info(format!("theta(Gamma) = {v}; theta(r Gamma) = {w}")))
    });
    rec.run("dtheta^4", kr, "dtheta ^ dtheta ^ dtheta ^ dtheta = 0", || {
        let d2 = wedge(&fg.dtheta, &fg.dtheta)?;
        Ok(show(&wedge(&d2, &d2)?))
    });
    rec.run("rank", kr, "rank(dtheta) = 6 at x = 0, p = (5,3,0,0) and 10 seeded non-null points", || {
        let mut bad = Vec::new();
        for (i, p) in rank_points(opts.seed, 10).iter().enumerate() {
            let k = two_form_rank(&fg.dtheta, p)?;
            if k != 6 {
                bad.push(format!("point {i}: rank {k}"));
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    rec.run("dtheta-expansion", kr, "", || {
        let shown = (&fg.dtheta - &fg.expanded_dtheta(1)?).is_zero();
        let cubed = (&fg.dtheta - &fg.expanded_dtheta(3)?).is_zero();
        Ok(Outcome::info(format!(
            "dtheta = dtheta0/r - (p.dp/r) ^ theta0: {shown}; dtheta = dtheta0/r - (p.dp/r^3) ^ theta0: {cubed}"
        )))
    });

    let dr = "frozen/descent";
    let names = poincare_names();
    for (x, n) in fg.poincare.iter().zip(&names) {
        rec.run(&format!("[{n},Delta],[{n},Gamma]"), dr, "Poincare field commutes with Delta and Gamma", || {
            let a = lie_bracket(x, &fg.delta)?;
            let b = lie_bracket(x, &fg.gamma)?;
            Ok(Outcome::check(a.is_zero() && b.is_zero(), format!("[X,Delta] = {a}; [X,Gamma] = {b}")))
        });
    }
    let gens = fg.generating_functions()?;
    rec.run("basic-functions", dr, "P_mu/r and M_munu/r are Delta- and Gamma-invariant and equal theta(X)", || {
        let mut bad = Vec::new();
        for ((f, x), n) in gens.iter().zip(&fg.poincare).zip(&names) {
            for (what, e) in [
                ("Delta", fg.delta.apply(f)),
                ("Gamma", fg.gamma.apply(f)),
                ("theta(X) - F", &fg.theta.pair(x)? - f),
            ] {
                if !e.is_zero() {
                    bad.push(format!("{n} {what}: {e}"));
                }
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    let spec = poincare_spec(&SIGNATURE)?;
    let induced: Vec<Result<VectorField>> = gens.iter().map(|f| fg.induced_field(f)).collect();
    rec.run("induced-brackets", dr, "{F_i, F_j} = X_{F_i}(F_j) with i_X dtheta = -dF reproduces the Poincare table", || {
        let mut bad = Vec::new();
        for i in 0..10 {
            let xi = induced[i].as_ref().map_err(Clone::clone)?;
            for j in i + 1..10 {
                let b = xi.apply(&gens[j]);
                let want: Expr = (0..10).map(|k| gens[k].scale(spec.constant(i, j, k))).sum();
                let d = &b - &want;
                if !d.is_zero() {
                    bad.push(format!("{{{},{}}}: {d}", names[i], names[j]));
                }
            }
        }
        Ok(Outcome::check(bad.is_empty(), bad.join("; ")))
    });
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_rational;

    #[test]
    fn theta_of_gamma_is_one_over_r() {
        let fg = build_frozen().unwrap();
        let v = fg.theta.pair(&fg.gamma).unwrap();
        assert_eq!(v, fg.chart.var("r").recip().unwrap());
        let pt = &rank_points(0, 0)[0];
        assert_eq!(eval_rational(&v, pt).unwrap(), Q::new(1.into(), 4.into()));
    }

    #[test]
    fn rank_six_at_fixed_point() {
        let fg = build_frozen().unwrap();
        assert_eq!(two_form_rank(&fg.dtheta, &rank_points(0, 0)[0]).unwrap(), 6);
    }

    #[test]
    fn induced_field_of_momentum_is_translation_modulo_kernel() {
        let fg = build_frozen().unwrap();
        let f = &fg.generating_functions().unwrap()[1];
        let x = fg.induced_field(f).unwrap();
        // X_F(F') for F' = P_1/r vanishes: translations commute
        assert!(x.apply(f).is_zero());
        assert!(interior(&x, &fg.dtheta).unwrap().checked_add(&DifferentialForm::exact(&fg.chart, f)).unwrap().is_zero());
    }
}
